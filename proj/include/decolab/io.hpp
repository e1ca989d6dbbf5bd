#ifndef DECOLAB_IO_HPP
#define DECOLAB_IO_HPP

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "decolab/ensemble.hpp"

namespace decolab {

inline constexpr std::string_view kSeriesHeader =
    "t,re_f01,im_f01,abs_f01,stderr_abs_f01,rho00,rho11,stderr_rho00";

/// Header line, then `#` comments echoing the resolved scenario and any notes, then one row
/// per sample time. f01 columns are left blank when f01 is undefined.
void write_series_csv(std::ostream& os, const EnsembleResult& e, const Scenario& s,
                      std::span<const std::string> notes = {});

/// "t_half=... lambda=... residual=..." for the console.
std::string summary_line(const EnsembleResult& e);

void write_scan_csv(std::ostream& os, const ScanResult& scan);
void write_strategy_csv(std::ostream& os, std::span<const StrategyRow> rows);
void write_integer_csv(std::ostream& os, std::span<const IntegerCheckRow> rows);

/// Whitespace- or comma-separated numbers; `lo:hi:step` expands to an inclusive range.
std::vector<double> parse_number_list(std::string_view text);

enum class ScanKind { GammaScan, IntegerCheck, StrategyCompare };
ScanKind parse_scan_kind(std::string_view name);

/// Runs a scan described by a scenario document with the extra keys `gammas`, `p_values`,
/// `dd_freqs` and `bootstrap`, writing the summary table to `os`. Returns the number of
/// failing rows for integer-check and 0 otherwise.
int run_scan(ScanKind kind, std::string_view config_text, std::ostream& os, const EnsembleOptions& opts = {});

}  // namespace decolab

#endif  // DECOLAB_IO_HPP
