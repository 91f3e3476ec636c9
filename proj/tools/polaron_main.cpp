#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polaron/commands.hpp"
#include "polaron/config.hpp"
#include "polaron/error.hpp"

namespace {

enum ExitCode { ok = 0, validation_failed = 1, usage = 2, numerical = 3 };

struct Options {
  std::string config_path;
  std::string out_path;
  std::string gnuplot_path;
  std::vector<std::string> sets;
};

polaron::RunConfig load(const Options& o) {
  polaron::Assignments file;
  if (!o.config_path.empty()) file = polaron::read_config_file(o.config_path);
  polaron::Assignments flags;
  for (const auto& s : o.sets) flags.push_back(polaron::parse_assignment(s));
  return polaron::make_config(file, flags);
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) throw polaron::InvalidArgument("cannot write '" + o.out_path + "'");
  out << text;
}

int run(const std::string& command, const Options& o) {
  using namespace polaron;
  if (!o.gnuplot_path.empty() && (command == "coupling" || command == "validate"))
    throw InvalidArgument("--gnuplot is not available for '" + command + "'");
  if (!o.gnuplot_path.empty() && o.out_path.empty())
    throw InvalidArgument("--gnuplot needs --out so the script can reference the CSV");
  const auto config = load(o);

  std::ostringstream text;
  int status = ok;
  if (command == "validate") {
    status = commands::validate(config, text) == 0 ? ok : validation_failed;
  } else {
    static const std::map<std::string, std::function<csv::Table(const RunConfig&)>> tables = {
        {"coupling", commands::coupling}, {"fig2", commands::fig2},       {"fig3", commands::fig3},
        {"fig4", commands::fig4},         {"optical", commands::optical},
    };
    tables.at(command)(config).write(text);
  }
  emit(o, text.str());

  if (!o.gnuplot_path.empty()) {
    std::ofstream gp(o.gnuplot_path, std::ios::binary);
    if (!gp) throw InvalidArgument("cannot write '" + o.gnuplot_path + "'");
    gp << commands::gnuplot_script(command, config, o.out_path);
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small-polaron masses, spectra and validation in a two-site lattice model"};
  app.require_subcommand(1);

  Options options;
  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"coupling", "Ep, gamma, g^2 and the renormalized hopping of one model"},
      {"fig2", "Nonadiabatic Frohlich/Holstein mass ratio sweep"},
      {"fig3", "Adiabatic 1D/3D Frohlich masses and their relative change"},
      {"fig4", "Adiabatic Frohlich/Holstein mass ratio"},
      {"optical", "Zero-temperature optical conductivity of both polarons"},
      {"validate", "Acceptance checks, kappa discrepancy table and ED comparison"},
  };
  for (const auto& [name, help] : subcommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", options.config_path, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("--out", options.out_path, "output path (default stdout)");
    sub->add_option("--set", options.sets, "override a config key, key=value (repeatable)")
        ->allow_extra_args(false);
    if (name != "coupling" && name != "validate")
      sub->add_option("--gnuplot", options.gnuplot_path, "also write a gnuplot script to this path");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, options);
  } catch (const polaron::InvalidArgument& e) {
    std::cerr << "polaron " << command << ": " << e.what() << "\n";
    return usage;
  } catch (const polaron::RegimeError& e) {
    std::cerr << "polaron " << command << ": out of regime: " << e.what() << "\n";
    return numerical;
  } catch (const polaron::ConvergenceError& e) {
    std::cerr << "polaron " << command << ": " << e.what() << "\n";
    return numerical;
  }
}
