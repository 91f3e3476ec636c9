#include "polaron/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "polaron/csv.hpp"
#include "polaron/error.hpp"

namespace polaron {

std::string_view to_string(SweepParam p) {
  return p == SweepParam::Lambda ? "lambda" : "omega_over_t";
}
std::string_view to_string(Normalization n) { return n == Normalization::Raw ? "raw" : "unit_peak"; }
std::string_view to_string(Comparison c) {
  return c == Comparison::EqualEp ? "equal_ep" : "equal_t_tilde";
}
std::string_view to_string(KappaSelection k) {
  switch (k) {
    case KappaSelection::PaperExact:
      return "paper_exact";
    case KappaSelection::CurvatureDerived:
      return "curvature_derived";
    case KappaSelection::Both:
      return "both";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(const std::string& key, std::string_view v) {
  v = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw InvalidArgument(key + ": not a finite number: '" + std::string(v) + "'");
  return out;
}

int to_int(const std::string& key, std::string_view v) {
  v = trim(v);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw InvalidArgument(key + ": not an integer: '" + std::string(v) + "'");
  return out;
}

std::vector<double> to_list(const std::string& key, std::string_view v) {
  std::vector<double> out;
  while (true) {
    const auto comma = v.find(',');
    out.push_back(to_double(key, v.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

template <class Enum>
Enum pick(const std::string& key, std::string_view v,
          std::initializer_list<std::pair<std::string_view, Enum>> choices) {
  const auto l = lower(trim(v));
  for (const auto& [name, value] : choices)
    if (l == name) return value;
  std::string allowed;
  for (const auto& c : choices) allowed += (allowed.empty() ? "" : "|") + std::string(c.first);
  throw InvalidArgument(key + ": expected " + allowed + ", got '" + std::string(v) + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"model", [](RunConfig& c, const std::string&, std::string_view v) { c.model = parse_model(trim(v)); }},
      {"t", [](RunConfig& c, const std::string& k, std::string_view v) { c.t = to_double(k, v); }},
      {"omega", [](RunConfig& c, const std::string& k, std::string_view v) { c.omega = to_double(k, v); }},
      {"Ep", [](RunConfig& c, const std::string& k, std::string_view v) { c.Ep = to_double(k, v); }},
      {"lambda", [](RunConfig& c, const std::string& k, std::string_view v) { c.lambda = to_double(k, v); }},
      {"sweep.param",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         c.sweep.param = pick<SweepParam>(k, v, {{"lambda", SweepParam::Lambda},
                                                 {"omega_over_t", SweepParam::OmegaOverT}});
       }},
      {"sweep.from", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.from = to_double(k, v); }},
      {"sweep.to", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.to = to_double(k, v); }},
      {"sweep.steps", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.steps = to_int(k, v); }},
      {"series", [](RunConfig& c, const std::string& k, std::string_view v) { c.series = to_list(k, v); }},
      {"optical.sigma0",
       [](RunConfig& c, const std::string& k, std::string_view v) { c.optical.sigma0 = to_double(k, v); }},
      {"optical.nu_min",
       [](RunConfig& c, const std::string& k, std::string_view v) { c.optical.nu_min = to_double(k, v); }},
      {"optical.nu_max",
       [](RunConfig& c, const std::string& k, std::string_view v) { c.optical.nu_max = to_double(k, v); }},
      {"optical.nu_steps",
       [](RunConfig& c, const std::string& k, std::string_view v) { c.optical.nu_steps = to_int(k, v); }},
      {"optical.normalization",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         c.optical.normalization =
             pick<Normalization>(k, v, {{"raw", Normalization::Raw}, {"unit_peak", Normalization::UnitPeak}});
       }},
      {"optical.t_tilde_source",
       [](RunConfig& c, const std::string&, std::string_view v) {
         c.optical.t_tilde_source = parse_t_tilde_source(trim(v));
       }},
      {"optical.compare",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         c.optical.compare = pick<Comparison>(
             k, v, {{"equal_ep", Comparison::EqualEp}, {"equal_t_tilde", Comparison::EqualTTilde}});
       }},
      {"numeric.fd_points",
       [](RunConfig& c, const std::string& k, std::string_view v) { c.numeric.fd_points = to_int(k, v); }},
      {"numeric.fd_halfwidth_multiplier",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         c.numeric.fd_halfwidth_multiplier = to_double(k, v);
       }},
      {"numeric.ed_nmax_cap",
       [](RunConfig& c, const std::string& k, std::string_view v) { c.numeric.ed_nmax_cap = to_int(k, v); }},
      {"kappa_convention",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         const auto l = lower(trim(v));
         c.kappa = l == "both" ? KappaSelection::Both
                               : (parse_kappa_convention(l) == KappaConvention::PaperExact
                                      ? KappaSelection::PaperExact
                                      : KappaSelection::CurvatureDerived);
         (void)k;
       }},
      {"geometry.height_ratio",
       [](RunConfig& c, const std::string& k, std::string_view v) { c.height_ratio = to_double(k, v); }},
  };
  return table;
}

void apply(RunConfig& config, const Assignments& source, const char* origin) {
  std::set<std::string> seen;
  for (const auto& [key, value] : source) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw InvalidArgument(std::string(origin) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second)
      throw InvalidArgument(std::string(origin) + ": key '" + key + "' given twice");
    it->second(config, key, value);
  }
  if (seen.count("Ep") && seen.count("lambda"))
    throw InvalidArgument(std::string(origin) + ": give exactly one of Ep or lambda");
  if (seen.count("Ep") && !seen.count("lambda")) config.lambda.reset();
  if (seen.count("lambda") && !seen.count("Ep")) config.Ep.reset();
}

void check(const RunConfig& c) {
  if (!(c.t > 0.0)) throw InvalidArgument("t must be positive");
  if (!(c.omega > 0.0)) throw InvalidArgument("omega must be positive");
  if (c.Ep && *c.Ep < 0.0) throw InvalidArgument("Ep must be non-negative");
  if (c.lambda && *c.lambda < 0.0) throw InvalidArgument("lambda must be non-negative");
  if (c.sweep.steps && *c.sweep.steps < 2) throw InvalidArgument("sweep.steps must be at least 2");
  if (c.sweep.from && c.sweep.to && !(*c.sweep.from < *c.sweep.to))
    throw InvalidArgument("sweep range is empty (need sweep.from < sweep.to)");
  for (double s : c.series)
    if (!(s > 0.0)) throw InvalidArgument("series values must be positive");
  if (!(c.optical.sigma0 > 0.0)) throw InvalidArgument("optical.sigma0 must be positive");
  if (c.optical.nu_steps < 2) throw InvalidArgument("optical.nu_steps must be at least 2");
  if (c.optical.nu_min && *c.optical.nu_min < 0.0) throw InvalidArgument("optical.nu_min must be non-negative");
  if (c.optical.nu_min && c.optical.nu_max && !(*c.optical.nu_min < *c.optical.nu_max))
    throw InvalidArgument("optical.nu_min must be below optical.nu_max");
  if (c.numeric.fd_points < 201 || c.numeric.fd_points % 2 == 0)
    throw InvalidArgument("numeric.fd_points must be odd and at least 201");
  if (!(c.numeric.fd_halfwidth_multiplier > 1.0))
    throw InvalidArgument("numeric.fd_halfwidth_multiplier must exceed 1");
  if (c.numeric.ed_nmax_cap < 1) throw InvalidArgument("numeric.ed_nmax_cap must be positive");
  if (c.height_ratio && !(*c.height_ratio > 0.0)) throw InvalidArgument("geometry.height_ratio must be positive");
}

}  // namespace

double RunConfig::coupling_Ep() const {
  if (Ep.has_value() == lambda.has_value()) throw InvalidArgument("give exactly one of Ep or lambda");
  return Ep ? *Ep : 2.0 * *lambda * t;
}

std::vector<KappaConvention> RunConfig::conventions() const {
  switch (kappa) {
    case KappaSelection::PaperExact:
      return {KappaConvention::PaperExact};
    case KappaSelection::CurvatureDerived:
      return {KappaConvention::CurvatureDerived};
    case KappaSelection::Both:
      break;
  }
  return {KappaConvention::PaperExact, KappaConvention::CurvatureDerived};
}

FdGrid RunConfig::fd_grid() const {
  FdGrid g;
  g.points = numeric.fd_points;
  g.max_points = std::max(g.max_points, numeric.fd_points);
  g.half_width_multiplier = numeric.fd_halfwidth_multiplier;
  return g;
}

ed::EdOptions RunConfig::ed_options() const {
  ed::EdOptions o;
  o.n_max_cap = numeric.ed_nmax_cap;
  return o;
}

Assignment parse_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw InvalidArgument("expected key=value, got '" + std::string(text) + "'");
  const auto key = trim(text.substr(0, eq));
  if (key.empty()) throw InvalidArgument("empty key in '" + std::string(text) + "'");
  return {std::string(key), std::string(trim(text.substr(eq + 1)))};
}

Assignments parse_config_text(std::string_view text) {
  Assignments out;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      out.push_back(parse_assignment(line));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

Assignments read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config_text(ss.str());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

RunConfig make_config(const Assignments& file, const Assignments& flags) {
  RunConfig config;
  apply(config, file, "config file");
  apply(config, flags, "--set");
  check(config);
  return config;
}

Assignments describe(const RunConfig& c) {
  using csv::number;
  Assignments out = {{"model", std::string(to_string(c.model))},
                     {"t", number(c.t)},
                     {"omega", number(c.omega)}};
  if (c.Ep) out.emplace_back("Ep", number(*c.Ep));
  if (c.lambda) out.emplace_back("lambda", number(*c.lambda));
  out.emplace_back("kappa_convention", std::string(to_string(c.kappa)));
  if (c.height_ratio) out.emplace_back("geometry.height_ratio", number(*c.height_ratio));
  out.emplace_back("numeric.fd_points", std::to_string(c.numeric.fd_points));
  out.emplace_back("numeric.fd_halfwidth_multiplier", number(c.numeric.fd_halfwidth_multiplier));
  out.emplace_back("numeric.ed_nmax_cap", std::to_string(c.numeric.ed_nmax_cap));
  return out;
}

}  // namespace polaron
