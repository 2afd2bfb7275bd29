#include "netmaint/miqp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "netmaint/equilibrium.hpp"
#include "netmaint/errors.hpp"
#include "netmaint/format.hpp"

namespace netmaint {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kTermsPerLine = 6;

std::string var_name(const char* prefix, int a, int b) {
  return std::string(prefix) + "_" + std::to_string(a + 1) + "_" + std::to_string(b + 1);
}

std::string bound_text(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return format_real(v);
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
  }
  return "=";
}

void write_terms(std::ostream& os, const std::vector<LinearTerm>& terms) {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k > 0 && k % kTermsPerLine == 0) os << "\n   ";
    const double c = terms[k].coef;
    if (k == 0) {
      os << (c < 0 ? "- " : "");
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (std::abs(c) != 1.0) os << format_real(std::abs(c)) << ' ';
    os << terms[k].var;
  }
}

// ---------------------------------------------------------------------------
// Tokenizer for the LP subset.

enum class Tok { Ident, Number, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == '\\') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '.')) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), 0.0});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto res = std::from_chars(text.data() + i, text.data() + n, v);
      if (res.ec != std::errc()) throw ParseError("bad number near offset " + std::to_string(i));
      const auto len = static_cast<std::size_t>(res.ptr - (text.data() + i));
      out.push_back({Tok::Number, std::string(text.substr(i, len)), v});
      i += len;
      continue;
    }
    if ((c == '<' || c == '>' || c == '=') && i + 1 < n && (text[i + 1] == '=' || text[i + 1] == '<' || text[i + 1] == '>')) {
      std::string op(text.substr(i, 2));
      if (op == "=<") op = "<=";
      if (op == "=>") op = ">=";
      out.push_back({Tok::Op, op, 0.0});
      i += 2;
      continue;
    }
    if (std::string_view("<>=+-*^/[]:").find(c) != std::string_view::npos) {
      std::string op(1, c);
      if (op == "<") op = "<=";
      if (op == ">") op = ">=";
      out.push_back({Tok::Op, op, 0.0});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'");
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

enum class Section { None, Objective, Constraints, Bounds, Binaries, End };

std::optional<Section> keyword(const std::vector<Token>& toks, std::size_t pos, std::size_t& width) {
  if (pos >= toks.size() || toks[pos].kind != Tok::Ident) return std::nullopt;
  // A name followed by ':' is a row label, never a keyword.
  if (pos + 1 < toks.size() && toks[pos + 1].text == ":") return std::nullopt;
  const std::string w = lower(toks[pos].text);
  width = 1;
  if (w == "maximize" || w == "maximise" || w == "maximum" || w == "max" || w == "minimize" ||
      w == "minimise" || w == "minimum" || w == "min") {
    return Section::Objective;
  }
  if (w == "subject" && pos + 1 < toks.size() && lower(toks[pos + 1].text) == "to") {
    width = 2;
    return Section::Constraints;
  }
  if (w == "st" || w == "s.t.") return Section::Constraints;
  if (w == "bounds" || w == "bound") return Section::Bounds;
  if (w == "binaries" || w == "binary" || w == "bin") return Section::Binaries;
  if (w == "end") return Section::End;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  MiqpModel run(MiqpModel model) {
    Section section = Section::None;
    while (pos_ < toks_.size()) {
      std::size_t width = 0;
      if (auto kw = keyword(toks_, pos_, width)) {
        if (*kw == Section::Objective) model.maximize = lower(toks_[pos_].text).rfind("max", 0) == 0;
        section = *kw;
        pos_ += width;
        if (section == Section::End) break;
        continue;
      }
      switch (section) {
        case Section::Objective: parse_objective(model); break;
        case Section::Constraints: model.constraints.push_back(parse_row()); break;
        case Section::Bounds: parse_bound(model); break;
        case Section::Binaries: parse_binary(model); break;
        default: throw ParseError("content outside any section: '" + toks_[pos_].text + "'");
      }
    }
    if (section != Section::End) throw ParseError("missing End");
    return model;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    static const Token end{};
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : end;
  }
  const Token& take() {
    if (pos_ >= toks_.size()) throw ParseError("unexpected end of input");
    return toks_[pos_++];
  }
  void expect(const char* op) {
    const Token& t = take();
    if (t.kind != Tok::Op || t.text != op) throw ParseError(std::string("expected '") + op + "', got '" + t.text + "'");
  }
  bool at_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }
  bool at_sense() const { return at_op("<=") || at_op(">=") || at_op("="); }
  bool at_boundary() const {
    std::size_t width = 0;
    if (pos_ >= toks_.size() || keyword(toks_, pos_, width)) return true;
    return peek().kind == Tok::Ident && peek(1).kind == Tok::Op && peek(1).text == ":";
  }

  std::string label() {
    if (peek().kind == Tok::Ident && peek(1).text == ":") {
      std::string name = take().text;
      take();
      return name;
    }
    return {};
  }

  double signed_number() {
    double sign = 1.0;
    if (at_op("+")) {
      take();
    } else if (at_op("-")) {
      take();
      sign = -1.0;
    }
    const Token& t = take();
    if (t.kind == Tok::Number) return sign * t.number;
    if (t.kind == Tok::Ident && (lower(t.text) == "inf" || lower(t.text) == "infinity")) return sign * kInf;
    throw ParseError("expected a number, got '" + t.text + "'");
  }

  // [sign] [number]; returns the coefficient, `had_sign` tells whether a sign was read.
  double coefficient(bool& had_sign) {
    double sign = 1.0;
    had_sign = false;
    if (at_op("+") || at_op("-")) {
      sign = take().text == "-" ? -1.0 : 1.0;
      had_sign = true;
    }
    if (peek().kind == Tok::Number) return sign * take().number;
    return sign;
  }

  std::string identifier() {
    const Token& t = take();
    if (t.kind != Tok::Ident) throw ParseError("expected a variable name, got '" + t.text + "'");
    return t.text;
  }

  std::vector<LinearTerm> linear_terms(MiqpModel* quad_target) {
    std::vector<LinearTerm> terms;
    while (!at_boundary() && !at_sense()) {
      if (quad_target && (at_op("[") || ((at_op("+") || at_op("-")) && peek(1).text == "["))) {
        if (!at_op("[")) take();
        parse_quadratic(*quad_target);
        continue;
      }
      bool had_sign = false;
      const double c = coefficient(had_sign);
      if (!terms.empty() && !had_sign) throw ParseError("missing operator between terms");
      terms.push_back({identifier(), c});
    }
    return terms;
  }

  void parse_quadratic(MiqpModel& model) {
    expect("[");
    bool first = true;
    while (!at_op("]")) {
      bool had_sign = false;
      const double c = coefficient(had_sign);
      if (!first && !had_sign) throw ParseError("missing operator in quadratic block");
      first = false;
      const std::string v1 = identifier();
      std::string v2;
      if (at_op("^")) {
        take();
        const Token& p = take();
        if (p.kind != Tok::Number || p.number != 2.0) throw ParseError("only squares are supported");
        v2 = v1;
      } else {
        expect("*");
        v2 = identifier();
      }
      model.objective_quadratic.push_back({v1, v2, c / 2.0});
    }
    expect("]");
    expect("/");
    const Token& two = take();
    if (two.kind != Tok::Number || two.number != 2.0) throw ParseError("quadratic block must be divided by 2");
  }

  void parse_objective(MiqpModel& model) {
    label();
    auto terms = linear_terms(&model);
    model.objective.insert(model.objective.end(), terms.begin(), terms.end());
  }

  Constraint parse_row() {
    Constraint row;
    row.name = label();
    row.terms = linear_terms(nullptr);
    const Token& s = take();
    if (s.text == "<=") row.sense = Sense::LessEqual;
    else if (s.text == ">=") row.sense = Sense::GreaterEqual;
    else if (s.text == "=") row.sense = Sense::Equal;
    else throw ParseError("expected a sense in row '" + row.name + "'");
    row.rhs = signed_number();
    return row;
  }

  Variable& variable(MiqpModel& model, const std::string& name) {
    auto it = std::find_if(model.variables.begin(), model.variables.end(),
                           [&](const Variable& v) { return v.name == name; });
    if (it != model.variables.end()) return *it;
    model.variables.push_back({name, VarType::Continuous, 0.0, kInf});
    return model.variables.back();
  }

  void parse_bound(MiqpModel& model) {
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::Ident && lower(peek(1).text) == "free") {
      Variable& v = variable(model, take().text);
      take();
      v.lower = -kInf;
      v.upper = kInf;
      return;
    }
    if (peek().kind == Tok::Ident && lower(peek().text) != "inf" && lower(peek().text) != "infinity") {
      Variable& v = variable(model, take().text);
      const std::string op = take().text;
      const double value = signed_number();
      if (op == "<=") v.upper = value;
      else if (op == ">=") v.lower = value;
      else if (op == "=") v.lower = v.upper = value;
      else throw ParseError("bad bound operator '" + op + "'");
      return;
    }
    const double lo = signed_number();
    expect("<=");
    Variable& v = variable(model, identifier());
    v.lower = lo;
    if (at_op("<=")) {
      take();
      v.upper = signed_number();
    }
  }

  void parse_binary(MiqpModel& model) {
    Variable& v = variable(model, identifier());
    v.type = VarType::Binary;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string MiqpModel::to_lp() const {
  std::ostringstream os;
  os << "\\Problem name: " << name << '\n';
  os << "\\ big_m = " << format_real(big_m) << '\n';
  os << (maximize ? "Maximize\n" : "Minimize\n");
  os << " obj: ";
  write_terms(os, objective);
  if (!objective_quadratic.empty()) {
    os << (objective.empty() ? "[ " : "\n   + [ ");
    for (std::size_t k = 0; k < objective_quadratic.size(); ++k) {
      if (k > 0 && k % kTermsPerLine == 0) os << "\n   ";
      const auto& q = objective_quadratic[k];
      const double c = 2.0 * q.coef;
      if (k == 0) {
        os << (c < 0 ? "- " : "") << format_real(std::abs(c));
      } else {
        os << (c < 0 ? " - " : " + ") << format_real(std::abs(c));
      }
      if (q.var1 == q.var2) {
        os << ' ' << q.var1 << " ^ 2";
      } else {
        os << ' ' << q.var1 << " * " << q.var2;
      }
    }
    os << " ] / 2";
  }
  os << "\nSubject To\n";
  for (const auto& row : constraints) {
    os << ' ' << row.name << ": ";
    write_terms(os, row.terms);
    os << ' ' << sense_text(row.sense) << ' ' << format_real(row.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : variables) {
    os << ' ' << bound_text(v.lower) << " <= " << v.name << " <= " << bound_text(v.upper) << '\n';
  }
  bool any_binary = false;
  for (const auto& v : variables) {
    if (v.type != VarType::Binary) continue;
    if (!any_binary) os << "Binaries\n";
    any_binary = true;
    os << ' ' << v.name << '\n';
  }
  os << "End\n";
  return os.str();
}

MiqpModel MiqpModel::parse_lp(std::string_view text) {
  MiqpModel model;
  model.name.clear();
  // Header comments carry the model name and big-M.
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("\\Problem name: ", 0) == 0) model.name = line.substr(15);
    if (line.rfind("\\ big_m = ", 0) == 0) {
      const std::string v = line.substr(10);
      if (std::from_chars(v.data(), v.data() + v.size(), model.big_m).ec != std::errc()) {
        throw ParseError("bad big_m header");
      }
    }
  }
  return Parser(tokenize(text)).run(std::move(model));
}

double MiqpModel::objective_value(const Assignment& values) const {
  auto get = [&](const std::string& v) {
    auto it = values.find(v);
    return it == values.end() ? 0.0 : it->second;
  };
  double total = 0.0;
  for (const auto& t : objective) total += t.coef * get(t.var);
  for (const auto& q : objective_quadratic) total += q.coef * get(q.var1) * get(q.var2);
  return total;
}

std::vector<std::string> MiqpModel::violations(const Assignment& values, double tol) const {
  auto get = [&](const std::string& v) {
    auto it = values.find(v);
    return it == values.end() ? 0.0 : it->second;
  };
  std::vector<std::string> out;
  for (const auto& row : constraints) {
    double lhs = 0.0;
    for (const auto& t : row.terms) lhs += t.coef * get(t.var);
    const double slack_tol = tol * (1.0 + std::abs(row.rhs));
    const bool ok = row.sense == Sense::LessEqual      ? lhs <= row.rhs + slack_tol
                    : row.sense == Sense::GreaterEqual ? lhs >= row.rhs - slack_tol
                                                       : std::abs(lhs - row.rhs) <= slack_tol;
    if (!ok) out.push_back(row.name);
  }
  for (const auto& v : variables) {
    const double x = get(v.name);
    if (x < v.lower - tol || x > v.upper + tol) out.push_back("bound:" + v.name);
    if (v.type == VarType::Binary && std::abs(x - std::round(x)) > tol) out.push_back("binary:" + v.name);
  }
  return out;
}

int miqp_row_count(int units, int periods, int scenarios, int customers) {
  return units * periods * (4 + scenarios) + periods * (1 + customers);
}

double miqp_big_m(const Matrix& thresholds, int periods) {
  double largest = 0.0;
  for (Eigen::Index j = 0; j < thresholds.rows(); ++j) {
    largest = std::max(largest, std::floor(thresholds.row(j).minCoeff()));
  }
  return largest + periods + 1;
}

MiqpModel export_miqp(const CustomerNetwork& net, const UnitFleet& fleet, const Matrix& thresholds,
                      bool network_known) {
  if (thresholds.rows() != fleet.size() || thresholds.cols() < 1) {
    throw DimensionError("thresholds must be J x K with K >= 1");
  }
  const int n = net.size();
  const int periods = net.periods();
  const int units = fleet.size();
  const int scenarios = static_cast<int>(thresholds.cols());
  Matrix r;
  if (network_known) {
    r = response_operator(net).inverse;
  } else {
    if (!(net.a().array() > 0.0).all()) throw SingularMatrixError("A is singular: some customer has a = 0");
    r = net.a().cwiseInverse().asDiagonal();
  }
  const Vector column_sums = r.colwise().sum().transpose();
  const double total_capacity = fleet.q_max().sum();

  MiqpModel model;
  model.name = network_known ? "netmaint_known_network" : "netmaint_unknown_network";
  model.maximize = true;
  model.big_m = miqp_big_m(thresholds, periods);
  const double big_m = model.big_m;

  for (int t = 0; t < periods; ++t) {
    for (int i = 0; i < n; ++i) model.variables.push_back({var_name("phi", i, t), VarType::Continuous, 0.0, kInf});
  }
  for (const char* prefix : {"x", "s", "y"}) {
    for (int j = 0; j < units; ++j) {
      for (int t = 0; t < periods; ++t) {
        const bool binary = prefix[0] == 'x';
        model.variables.push_back(
            {var_name(prefix, j, t), binary ? VarType::Binary : VarType::Continuous, 0.0, binary ? 1.0 : kInf});
      }
    }
  }

  for (int t = 0; t < periods; ++t) {
    const Vector rb = r * net.b().col(t);
    for (int i = 0; i < n; ++i) {
      if (rb(i) != 0.0) model.objective.push_back({var_name("phi", i, t), rb(i)});
    }
  }
  for (int j = 0; j < units; ++j) {
    if (fleet.cost()(j) == 0.0) continue;
    for (int t = 0; t < periods; ++t) model.objective.push_back({var_name("x", j, t), -fleet.cost()(j)});
  }
  for (int t = 0; t < periods; ++t) {
    for (int i = 0; i < n; ++i) {
      if (r(i, i) != 0.0) model.objective_quadratic.push_back({var_name("phi", i, t), var_name("phi", i, t), -r(i, i)});
      for (int l = i + 1; l < n; ++l) {
        const double c = -(r(i, l) + r(l, i));
        if (c != 0.0) model.objective_quadratic.push_back({var_name("phi", i, t), var_name("phi", l, t), c});
      }
    }
  }

  auto& rows = model.constraints;
  for (int j = 0; j < units; ++j) rows.push_back({"init_" + std::to_string(j + 1), {{var_name("s", j, 0), 1.0}}, Sense::Equal, 1.0});
  for (int j = 0; j < units; ++j) {
    for (int t = 0; t + 1 < periods; ++t) {
      rows.push_back({var_name("dyn", j, t),
                      {{var_name("s", j, t + 1), 1.0}, {var_name("s", j, t), -1.0}, {var_name("y", j, t), 1.0}},
                      Sense::Equal,
                      1.0});
    }
  }
  for (int j = 0; j < units; ++j) {
    for (int t = 0; t < periods; ++t) {
      const auto y = var_name("y", j, t);
      const auto s = var_name("s", j, t);
      const auto x = var_name("x", j, t);
      rows.push_back({var_name("bigm_lo", j, t), {{y, 1.0}, {s, -1.0}, {x, -big_m}}, Sense::GreaterEqual, -big_m});
      rows.push_back({var_name("bigm_hi", j, t), {{y, 1.0}, {s, -1.0}, {x, big_m}}, Sense::LessEqual, big_m});
      rows.push_back({var_name("bigm_on", j, t), {{y, 1.0}, {x, -big_m}}, Sense::LessEqual, 0.0});
    }
  }
  for (int j = 0; j < units; ++j) {
    for (int t = 0; t < periods; ++t) {
      for (int k = 0; k < scenarios; ++k) {
        rows.push_back({var_name("scen", j, t) + "_" + std::to_string(k + 1),
                        {{var_name("s", j, t), 1.0}},
                        Sense::LessEqual,
                        thresholds(j, k)});
      }
    }
  }
  for (int t = 0; t < periods; ++t) {
    Constraint cap{"cap_" + std::to_string(t + 1), {}, Sense::LessEqual, 0.0};
    for (int l = 0; l < n; ++l) {
      if (column_sums(l) != 0.0) cap.terms.push_back({var_name("phi", l, t), -column_sums(l)});
    }
    for (int j = 0; j < units; ++j) cap.terms.push_back({var_name("x", j, t), fleet.q_max()(j)});
    cap.rhs = total_capacity - column_sums.dot(net.b().col(t));
    rows.push_back(std::move(cap));
  }
  for (int t = 0; t < periods; ++t) {
    const Vector rb = r * net.b().col(t);
    for (int i = 0; i < n; ++i) {
      Constraint row{var_name("demand", i, t), {}, Sense::GreaterEqual, -rb(i)};
      for (int l = 0; l < n; ++l) {
        if (r(i, l) != 0.0) row.terms.push_back({var_name("phi", l, t), -r(i, l)});
      }
      rows.push_back(std::move(row));
    }
  }
  return model;
}

Assignment miqp_assignment(const MaintenanceSchedule& schedule, const Matrix& phi) {
  Assignment values;
  for (Eigen::Index t = 0; t < phi.cols(); ++t) {
    for (Eigen::Index i = 0; i < phi.rows(); ++i) {
      values[var_name("phi", static_cast<int>(i), static_cast<int>(t))] = phi(i, t);
    }
  }
  for (int j = 0; j < schedule.units(); ++j) {
    for (int t = 0; t < schedule.periods(); ++t) {
      values[var_name("x", j, t)] = schedule.x(j, t);
      values[var_name("s", j, t)] = schedule.s(j, t);
      values[var_name("y", j, t)] = schedule.x(j, t) * schedule.s(j, t);
    }
  }
  return values;
}

}  // namespace netmaint
