#include "hcube/io.hpp"

#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace hcube {

namespace {

using ojson = nlohmann::ordered_json;

ojson number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

ojson parse(std::string_view text) {
  try {
    return ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<double> read_array(const ojson& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw std::invalid_argument(std::string("missing array '") + key + "'");
  std::vector<double> out;
  out.reserve(j[key].size());
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw std::invalid_argument(std::string("non-numeric entry in '") + key + "'");
    out.push_back(x.get<double>());
  }
  return out;
}

int read_n(const ojson& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw std::invalid_argument("missing integer 'n'");
  }
  return j["n"].get<int>();
}

ojson report_object(const RatioReport& r) {
  ojson o;
  o["inequality_id"] = std::string(to_string(r.id));
  o["n"] = r.n;
  o["p"] = number(r.p);
  o["q"] = number(r.q);
  o["a_or_gamma"] = number(r.a_or_gamma);
  o["t"] = number(r.t);
  o["lhs"] = number(r.lhs);
  o["rhs"] = number(r.rhs);
  o["ratio"] = number(r.ratio);
  o["mode"] = r.mode;
  o["seed"] = r.seed;
  return o;
}

ojson row_object(const Row& row) {
  ojson o = ojson::object();
  for (const auto& [k, v] : row) {
    if (const auto* d = std::get_if<double>(&v)) {
      o[k] = number(*d);
    } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
      o[k] = *i;
    } else if (const auto* u = std::get_if<std::uint64_t>(&v)) {
      o[k] = *u;
    } else {
      o[k] = std::get<std::string>(v);
    }
  }
  return o;
}

}  // namespace

std::string version_string() { return std::string("hcube ") + HCUBE_VERSION_STRING; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_json(const CubeFunction& f) {
  ojson j;
  j["n"] = f.dim();
  j["basis"] = "walsh-bitmask-le";
  j["coeffs"] = std::vector<double>(f.coeffs().begin(), f.coeffs().end());
  return j.dump();
}

CubeFunction cube_function_from_json(std::string_view text) {
  const ojson j = parse(text);
  const int n = read_n(j);
  if (!j.contains("basis") || j["basis"] != "walsh-bitmask-le") {
    throw std::invalid_argument("basis must be \"walsh-bitmask-le\"");
  }
  return CubeFunction::from_coeffs(n, read_array(j, "coeffs"));
}

std::string to_json(const RadialProfile& v) {
  ojson j;
  j["n"] = v.dim();
  j["v"] = std::vector<double>(v.values().begin(), v.values().end());
  return j.dump();
}

RadialProfile radial_profile_from_json(std::string_view text) {
  const ojson j = parse(text);
  const int n = read_n(j);
  return RadialProfile(n, read_array(j, "v"));
}

std::string reports_to_csv(std::span<const RatioReport> rows) {
  std::ostringstream os;
  os << "inequality_id,n,p,q,a_or_gamma,t,lhs,rhs,ratio,mode,seed\n";
  for (const RatioReport& r : rows) {
    os << to_string(r.id) << ',' << r.n << ',' << format_double(r.p) << ',' << format_double(r.q) << ','
       << format_double(r.a_or_gamma) << ',' << format_double(r.t) << ',' << format_double(r.lhs) << ','
       << format_double(r.rhs) << ',' << format_double(r.ratio) << ',' << r.mode << ',' << r.seed << '\n';
  }
  return os.str();
}

std::string reports_to_json(std::span<const RatioReport> rows) {
  ojson a = ojson::array();
  for (const RatioReport& r : rows) a.push_back(report_object(r));
  return a.dump(2) + "\n";
}

std::string growth_curve_csv(const GrowthCurve& g) {
  std::ostringstream os;
  os << "n,value\n";
  for (std::size_t i = 0; i < g.abscissa.size(); ++i) {
    os << format_double(g.abscissa[i]) << ',' << format_double(g.ordinate[i]) << '\n';
  }
  return os.str();
}

std::string growth_fit_json(const GrowthCurve& g) {
  ojson j;
  j["slope"] = number(g.slope);
  j["intercept"] = number(g.intercept);
  j["residual"] = number(g.residual);
  return j.dump();
}

std::string counterexamples_to_csv(std::span<const CounterexampleReport> rows) {
  std::ostringstream os;
  os << "name,n,p,s,lhs,rhs,ratio\n";
  for (const CounterexampleReport& r : rows) {
    os << r.name << ',' << r.n << ',' << format_double(r.p) << ',' << format_double(r.s) << ','
       << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.ratio) << '\n';
  }
  return os.str();
}

std::string counterexamples_to_json(std::span<const CounterexampleReport> rows) {
  ojson a = ojson::array();
  for (const CounterexampleReport& r : rows) {
    ojson o;
    o["name"] = r.name;
    o["n"] = r.n;
    o["p"] = number(r.p);
    o["s"] = number(r.s);
    o["lhs"] = number(r.lhs);
    o["rhs"] = number(r.rhs);
    o["ratio"] = number(r.ratio);
    a.push_back(std::move(o));
  }
  return a.dump(2) + "\n";
}

std::string format_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::to_string(std::get<std::uint64_t>(c));
}

Row report_row(const RatioReport& r) {
  return {{"inequality_id", std::string(to_string(r.id))},
          {"n", std::int64_t{r.n}},
          {"p", r.p},
          {"q", r.q},
          {"a_or_gamma", r.a_or_gamma},
          {"t", r.t},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"ratio", r.ratio},
          {"mode", r.mode},
          {"seed", r.seed}};
}

std::string ExperimentRecord::to_csv() const {
  std::ostringstream os;
  if (rows.empty()) return "";
  for (std::size_t i = 0; i < rows.front().size(); ++i) os << (i ? "," : "") << rows.front()[i].first;
  os << '\n';
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i].second);
    os << '\n';
  }
  return os.str();
}

std::string ExperimentRecord::to_json() const {
  ojson j;
  j["experiment"] = name;
  ojson params = ojson::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  j["parameters"] = std::move(params);
  j["seed"] = seed;
  j["version"] = version;
  ojson rs = ojson::array();
  for (const auto& row : rows) {
    rs.push_back(row_object(row));
  }
  j["rows"] = std::move(rs);
  if (!summary.empty()) j["summary"] = row_object(summary);
  if (wall_time_seconds) j["wall_time_seconds"] = *wall_time_seconds;
  return j.dump(2) + "\n";
}

}  // namespace hcube
