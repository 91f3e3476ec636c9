#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "polaron/config.hpp"
#include "polaron/csv.hpp"

namespace polaron::commands {

csv::Table coupling(const RunConfig& config);
csv::Table fig2(const RunConfig& config);
// fig3 and fig4 share one table: m_1D, m_3D, m_SHP, relative change and
// the SFP/SHP ratio. Rows outside the closed form's validity carry NaN and
// status "out-of-regime".
csv::Table fig3(const RunConfig& config);
csv::Table fig4(const RunConfig& config);
csv::Table optical(const RunConfig& config);

/// Writes the validation report; returns the number of failures.
int validate(const RunConfig& config, std::ostream& out);

/// Plain gnuplot script plotting `csv_path` as written by `command`.
std::string gnuplot_script(std::string_view command, const RunConfig& config, const std::string& csv_path);

}  // namespace polaron::commands
