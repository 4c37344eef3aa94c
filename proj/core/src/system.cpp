#include "vieta/system.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "vieta/errors.hpp"
#include "vieta/parser.hpp"

namespace vieta {

PolySystem load_system(const MultiPoly& f1, const MultiPoly& f2) {
  for (const auto* p : {&f1, &f2}) {
    if (p->degree(Var::M) > 0)
      throw ConfigError("constraint polynomials must not use M (reserved for "
                        "momentum eliminants): " + p->str());
  }
  PolySystem sys;
  sys.f1 = f1;
  sys.f2 = f2;
  sys.n = static_cast<int>(f1.degree_xy());
  sys.m = static_cast<int>(f2.degree_xy());
  if (sys.n < 1)
    throw ConfigError("F1 must involve x or y: " + f1.str());
  if (sys.m < 1)
    throw ConfigError("F2 must involve x or y: " + f2.str());
  sys.structure_ok =
      f1.total_degree() <= sys.n && f2.total_degree() <= sys.m;
  return sys;
}

PolySystem load_system(const std::string& f1_text, const std::string& f2_text) {
  return load_system(parse_poly(f1_text), parse_poly(f2_text));
}

namespace {

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && issp(s.front())) s.erase(s.begin());
  while (!s.empty() && issp(s.back())) s.pop_back();
  return s;
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long r = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

Rational parse_rat(const std::string& key, const std::string& v) {
  try {
    return Rational::parse(v);
  } catch (const ParseError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

} // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": empty key or value");
    if (!seen.insert(key).second)
      throw ConfigError("duplicate key '" + key + "'");

    if (key == "F1") cfg.f1_text = val;
    else if (key == "F2") cfg.f2_text = val;
    else if (key == "t_start") cfg.t_start = parse_rat(key, val);
    else if (key == "t_end") cfg.t_end = parse_rat(key, val);
    else if (key == "steps") cfg.steps = parse_long(key, val);
    else if (key == "tolerances.tol_root") cfg.tol.tol_root = parse_double(key, val);
    else if (key == "tolerances.eps_real") cfg.tol.eps_real = parse_double(key, val);
    else if (key == "tolerances.eps_conj") cfg.tol.eps_conj = parse_double(key, val);
    else if (key == "tolerances.eps_cluster") cfg.tol.eps_cluster = parse_double(key, val);
    else if (key == "tolerances.tol_pair") cfg.tol.tol_pair = parse_double(key, val);
    else if (key == "tolerances.eps_deriv") cfg.tol.eps_deriv = parse_double(key, val);
    else if (key == "tolerances.delta_event") cfg.tol.delta_event = parse_double(key, val);
    else if (key == "tolerances.tol_conservation")
      cfg.tol.tol_conservation = parse_double(key, val);
    else if (key == "tolerances.tol_momentum")
      cfg.tol.tol_momentum = parse_double(key, val);
    else if (key == "tolerances.eps_imag") cfg.tol.eps_imag = parse_double(key, val);
    else if (key == "exact_angular") {
      if (val == "true" || val == "1") cfg.exact_angular = true;
      else if (val == "false" || val == "0") cfg.exact_angular = false;
      else throw ConfigError(key + ": expected true/false, got '" + val + "'");
    }
    else if (key == "higher_sums_max")
      cfg.higher_sums_max = int(parse_long(key, val));
    else if (key == "outputs.trajectory") cfg.out_trajectory = val;
    else if (key == "outputs.report") cfg.out_report = val;
    else if (key == "outputs.events") cfg.out_events = val;
    else
      throw ConfigError("unknown key '" + key + "'");
  }
  if (cfg.f1_text.empty() || cfg.f2_text.empty())
    throw ConfigError("config must define both F1 and F2");
  if (cfg.steps < 2) throw ConfigError("steps must be at least 2");
  if (!(cfg.t_start < cfg.t_end))
    throw ConfigError("t_start must be less than t_end");
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

} // namespace vieta
