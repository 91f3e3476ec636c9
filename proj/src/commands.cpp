#include "polaron/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polaron/double_well.hpp"
#include "polaron/error.hpp"
#include "polaron/lattice_forces.hpp"
#include "polaron/nonadiabatic.hpp"
#include "polaron/optical.hpp"
#include "polaron/validation.hpp"

#ifndef POLARON_VERSION
#define POLARON_VERSION "unknown"
#endif

namespace polaron::commands {

namespace {

using csv::number;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

csv::Table with_metadata(std::string_view command, const RunConfig& config, std::vector<std::string> columns) {
  csv::Table table(std::move(columns));
  table.add_metadata("command", std::string(command));
  table.add_metadata("version", POLARON_VERSION);
  for (const auto& [k, v] : describe(config)) table.add_metadata(k, v);
  return table;
}

struct Point {
  double lambda;
  double omega_over_t;
};

std::vector<double> linspace(double from, double to, int steps) {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out[i] = i + 1 == steps ? to : from + (to - from) * i / (steps - 1);
  return out;
}

struct SweepDefaults {
  double from, to;
  int steps;
  std::vector<double> series;
};

// Outer loop over the series, inner loop over the swept axis.
std::vector<Point> sweep_points(const RunConfig& c, const SweepDefaults& lambda_axis,
                                const SweepDefaults& omega_axis) {
  const auto& d = c.sweep.param == SweepParam::Lambda ? lambda_axis : omega_axis;
  const double from = c.sweep.from.value_or(d.from);
  const double to = c.sweep.to.value_or(d.to);
  if (!(from < to)) throw InvalidArgument("sweep range is empty (need sweep.from < sweep.to)");
  if (c.sweep.param == SweepParam::Lambda && from < 0.0) throw InvalidArgument("lambda sweep must start at >= 0");
  if (c.sweep.param == SweepParam::OmegaOverT && !(from > 0.0))
    throw InvalidArgument("omega/t sweep must start above 0");
  const auto axis = linspace(from, to, c.sweep.steps.value_or(d.steps));
  const auto series = c.series.empty() ? d.series : c.series;
  std::vector<Point> out;
  for (double s : series)
    for (double v : axis) out.push_back(c.sweep.param == SweepParam::Lambda ? Point{v, s} : Point{s, v});
  return out;
}

CouplingSummary summary_for(const RunConfig& c, ModelKind model, double Ep, double omega) {
  return coupling_summary(make_force_table(model, Ep, 1.0, omega, c.height_ratio));
}

csv::Table adiabatic_masses(std::string_view command, const RunConfig& c) {
  auto table = with_metadata(command, c,
                             {"lambda", "omega_over_t", "kappa_convention", "m_1d", "m_3d", "m_shp", "rel_change",
                              "sfp_shp_ratio", "status"});
  table.add_metadata("masses", "band units, 2t / (closed-form tunnelling splitting)");
  const auto points = sweep_points(c, {1.2, 3.0, 19, {c.omega / c.t}}, {0.1, 0.5, 9, {2.0}});
  for (auto conv : c.conventions()) {
    for (const auto& p : points) {
      const double omega = p.omega_over_t * c.t;
      const double Ep = 2.0 * p.lambda * c.t;
      const auto mass = [&](ModelKind model) {
        if (Ep == 0.0) return nan;
        try {
          const double gamma = summary_for(c, model, Ep, omega).gamma;
          return adiabatic_mass(analytic_splitting(Ep, c.t, omega, gamma, conv).splitting, c.t);
        } catch (const RegimeError&) {
          return nan;
        }
      };
      const double m1 = mass(ModelKind::Frohlich1D);
      const double m3 = mass(ModelKind::Frohlich3D);
      const double mh = mass(ModelKind::Holstein);
      const bool ok = std::isfinite(m1) && std::isfinite(m3) && std::isfinite(mh);
      table.add_row({number(p.lambda), number(p.omega_over_t), std::string(to_string(conv)), number(m1), number(m3),
                     number(mh), number((m3 - m1) / m1), number(m3 / mh), ok ? "ok" : "out-of-regime"});
    }
  }
  return table;
}

}  // namespace

csv::Table coupling(const RunConfig& c) {
  const double Ep = c.coupling_Ep();
  auto table = with_metadata("coupling", c, {"model", "Ep", "gamma", "g2", "t_tilde"});
  if (Ep == 0.0) {
    table.add_row({std::string(to_string(c.model)), "0", "nan", "0", number(c.t)});
    return table;
  }
  const auto s = summary_for(c, c.model, Ep, c.omega);
  const auto na = renormalized_hopping(c.t, s);
  table.add_row({std::string(to_string(c.model)), number(s.Ep), number(s.gamma), number(s.g2), number(na.t_tilde)});
  return table;
}

csv::Table fig2(const RunConfig& c) {
  auto table = with_metadata("fig2", c, {"omega_over_t", "lambda", "Ep", "ratio"});
  table.add_metadata("ratio", "nonadiabatic m_SFP(3D) / m_SHP at equal Ep");
  for (const auto& p : sweep_points(c, {0.0, 3.0, 31, {0.5, 1.0, 2.0, 4.0}}, {0.5, 4.0, 36, {1.0, 1.5, 2.0}})) {
    table.add_row({number(p.omega_over_t), number(p.lambda), number(2.0 * p.lambda * c.t),
                   number(frohlich_holstein_mass_ratio(p.lambda, p.omega_over_t))});
  }
  return table;
}

csv::Table fig3(const RunConfig& c) { return adiabatic_masses("fig3", c); }
csv::Table fig4(const RunConfig& c) { return adiabatic_masses("fig4", c); }

csv::Table optical(const RunConfig& c) {
  const double Ep = c.coupling_Ep();
  if (!(Ep > 0.0)) throw InvalidArgument("optical spectra need Ep > 0");
  const ModelKind sfp_model = c.model == ModelKind::Holstein ? ModelKind::Frohlich3D : c.model;
  const auto sfp = summary_for(c, sfp_model, Ep, c.omega);
  const auto shp = summary_for(c, ModelKind::Holstein, Ep, c.omega);
  const double Ea_max = std::max(activation_energy(sfp), activation_energy(shp));
  const double nu_min = c.optical.nu_min.value_or(0.05 * Ea_max);
  const double nu_max = c.optical.nu_max.value_or(8.0 * Ea_max);
  if (!(nu_min < nu_max)) throw InvalidArgument("optical.nu_min must be below optical.nu_max");
  const auto grid = nu_grid(nu_min, nu_max, c.optical.nu_steps);

  const auto conv = c.conventions().back();
  const auto params = [&](const CouplingSummary& s) {
    OpticalParams p;
    p.sigma0 = c.optical.sigma0;
    p.t_tilde = optical_t_tilde(c.optical.compare == Comparison::EqualTTilde ? shp : s, c.t,
                                c.optical.t_tilde_source, conv);
    p.Ea = activation_energy(s);
    p.omega = s.omega;
    return p;
  };
  const auto a = tabulate(sfp.model, params(sfp), grid);
  const auto b = tabulate(shp.model, params(shp), grid);

  auto table = with_metadata("optical", c, {"nu", "sigma_sfp", "sigma_shp"});
  table.add_metadata("sfp_model", std::string(to_string(sfp.model)));
  table.add_metadata("normalization", std::string(to_string(c.optical.normalization)));
  table.add_metadata("t_tilde_source", std::string(to_string(c.optical.t_tilde_source)));
  table.add_metadata("compare", std::string(to_string(c.optical.compare)));
  table.add_metadata("sigma0", c.optical.sigma0);
  for (const auto* s : {&a, &b}) {
    const std::string tag = s == &a ? "sfp" : "shp";
    table.add_metadata("Ea_" + tag, s->Ea);
    table.add_metadata("t_tilde_" + tag, s->t_tilde);
    table.add_metadata("peak_nu_" + tag, s->peak_nu);
    table.add_metadata("stationary_peak_" + tag, s->Ea > c.omega ? stationary_peak(s->Ea, c.omega) : nan);
  }
  table.add_metadata("peak_ratio", a.peak_nu / b.peak_nu);

  const auto scale = [&](const Spectrum& s) {
    if (c.optical.normalization == Normalization::Raw) return 1.0;
    double m = 0.0;
    for (const auto& p : s.points) m = std::max(m, p.sigma);
    return 1.0 / m;
  };
  const double sa = scale(a), sb = scale(b);
  for (std::size_t i = 0; i < grid.size(); ++i)
    table.add_row({number(grid[i]), number(a.points[i].sigma * sa), number(b.points[i].sigma * sb)});
  return table;
}

int validate(const RunConfig& config, std::ostream& out) { return validation::write_report(out, config); }

std::string gnuplot_script(std::string_view command, const RunConfig& c, const std::string& csv_path) {
  std::ostringstream s;
  s << "# gnuplot script for '" << command << "' output\n";
  s << "set datafile separator ','\n";
  s << "set datafile missing 'nan'\n";
  s << "set datafile columnheaders\n";
  s << "file = '" << csv_path << "'\n";
  if (command == "fig2") {
    const bool over_lambda = c.sweep.param == SweepParam::Lambda;
    s << "set xlabel '" << (over_lambda ? "lambda" : "omega/t") << "'\nset ylabel 'm_SFP / m_SHP'\n";
    const int x = over_lambda ? 2 : 1, sel = over_lambda ? 1 : 2;
    s << "series = \"";
    const auto series = c.series.empty()
                            ? (over_lambda ? std::vector<double>{0.5, 1, 2, 4} : std::vector<double>{1, 1.5, 2})
                            : c.series;
    for (std::size_t i = 0; i < series.size(); ++i) s << (i ? " " : "") << number(series[i]);
    s << "\"\n";
    s << "plot for [v in series] file using " << x << ":(abs($" << sel
      << "-v) < 1e-9 ? $4 : NaN) with lines title '" << (over_lambda ? "omega/t=" : "lambda=") << "'.v\n";
  } else if (command == "fig3") {
    s << "set xlabel 'lambda'\nset ylabel 'm / m_band'\nset logscale y\nset y2tics\n";
    s << "plot file using 1:4 with lines title 'm_1D', '' using 1:5 with lines title 'm_3D', "
         "'' using 1:7 axes x1y2 with lines title '(m_3D-m_1D)/m_1D'\n";
  } else if (command == "fig4") {
    s << "set xlabel 'lambda'\nset ylabel 'm_SFP / m_SHP'\nset logscale y\n";
    s << "plot file using 1:8 with lines title 'SFP/SHP'\n";
  } else if (command == "optical") {
    s << "set xlabel 'nu'\nset ylabel 'sigma'\n";
    s << "plot file using 1:2 with lines title 'SFP', '' using 1:3 with lines title 'SHP'\n";
  } else {
    throw InvalidArgument("no plot for command '" + std::string(command) + "'");
  }
  s << "pause -1\n";
  return s.str();
}

}  // namespace polaron::commands
