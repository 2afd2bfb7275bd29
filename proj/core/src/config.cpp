#include "netmaint/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netmaint/errors.hpp"

namespace netmaint {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

double real(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + " must be a number");
  return v.get<double>();
}

Vector vector_of(const json& v, const std::string& name) {
  if (!v.is_array()) throw ParseError(name + " must be an array");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = real(v[i], name + "[" + std::to_string(i) + "]");
  }
  return out;
}

Matrix matrix_of(const json& v, const std::string& name) {
  if (!v.is_array() || v.empty()) throw ParseError(name + " must be a non-empty array of arrays");
  const auto rows = v.size();
  if (!v[0].is_array()) throw ParseError(name + " must be an array of arrays");
  const auto cols = v[0].size();
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = vector_of(v[r], name + "[" + std::to_string(r) + "]");
    if (static_cast<std::size_t>(row.size()) != cols) {
      throw ParseError(name + " rows must all have the same length");
    }
    out.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return out;
}

template <typename Int>
Int integer(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer()) throw ParseError(std::string(key) + " must be an integer");
  if constexpr (std::is_unsigned_v<Int>) {
    if (v.is_number_unsigned()) return v.get<Int>();
    if (v.get<std::int64_t>() < 0) throw ParseError(std::string(key) + " must be nonnegative");
  }
  return v.get<Int>();
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vector(m.row(r).transpose())));
  return out;
}

}  // namespace

ProblemConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be an object");

  Horizon horizon;
  horizon.t_count = integer<int>(doc, "t_count");
  horizon.alpha = real(field(doc, "alpha"), "alpha");
  horizon.k_scenarios = integer<int>(doc, "k_scenarios");
  horizon.rng_seed = integer<std::uint64_t>(doc, "rng_seed");
  horizon.validate();

  const int n = integer<int>(doc, "n");
  if (n < 1) throw ValidationError("n must be at least 1");
  Vector a = vector_of(field(doc, "a"), "a");
  if (a.size() != n) throw ValidationError("a must have n entries");
  Matrix w = matrix_of(field(doc, "w"), "w");

  const bool has_b = doc.contains("b");
  const bool has_constant = doc.contains("b_constant");
  if (has_b == has_constant) throw ParseError("exactly one of 'b' and 'b_constant' is required");
  Matrix b;
  if (has_constant) {
    const Vector base = vector_of(doc["b_constant"], "b_constant");
    if (base.size() != n) throw ValidationError("b_constant must have n entries");
    b = base.replicate(1, horizon.t_count);
  } else {
    b = matrix_of(doc["b"], "b");
    if (b.rows() != n || b.cols() != horizon.t_count) {
      throw ValidationError("b must be n x t_count");
    }
  }

  Vector mu = vector_of(field(doc, "mu"), "mu");
  Vector sigma = vector_of(field(doc, "sigma"), "sigma");
  Vector cost = vector_of(field(doc, "cost"), "cost");
  Vector q_max = vector_of(field(doc, "q_max"), "q_max");
  if (doc.contains("j_count")) {
    const int j = integer<int>(doc, "j_count");
    if (j != mu.size()) throw ValidationError("j_count does not match the unit arrays");
  }

  return ProblemConfig{CustomerNetwork(std::move(a), std::move(b), std::move(w)),
                       UnitFleet(std::move(mu), std::move(sigma), std::move(cost), std::move(q_max)),
                       horizon};
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string write_config(const ProblemConfig& config) {
  const auto& net = config.network;
  json doc = json::object();
  doc["n"] = net.size();
  doc["a"] = to_json(net.a());
  const Matrix& b = net.b();
  bool columns_equal = true;
  for (Eigen::Index t = 1; t < b.cols() && columns_equal; ++t) {
    columns_equal = (b.col(t).array() == b.col(0).array()).all();
  }
  if (columns_equal && b.cols() == config.horizon.t_count) {
    doc["b_constant"] = to_json(Vector(b.col(0)));
  } else {
    doc["b"] = to_json(b);
  }
  doc["w"] = to_json(net.w());
  doc["j_count"] = config.fleet.size();
  doc["mu"] = to_json(config.fleet.mu());
  doc["sigma"] = to_json(config.fleet.sigma());
  doc["cost"] = to_json(config.fleet.cost());
  doc["q_max"] = to_json(config.fleet.q_max());
  doc["t_count"] = config.horizon.t_count;
  doc["alpha"] = config.horizon.alpha;
  doc["k_scenarios"] = config.horizon.k_scenarios;
  doc["rng_seed"] = config.horizon.rng_seed;
  return doc.dump(2) + "\n";
}

void save_config(const ProblemConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config '" + path.string() + "'");
  out << write_config(config);
}

}  // namespace netmaint
