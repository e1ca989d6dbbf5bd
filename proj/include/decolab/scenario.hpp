#ifndef DECOLAB_SCENARIO_HPP
#define DECOLAB_SCENARIO_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "decolab/ensemble.hpp"

namespace decolab {

/// Value of a key that the scenario parser passed through untouched.
struct ExtraEntry {
  std::string value;
  int line = 0;
};

struct ScenarioDocument {
  Scenario scenario;
  std::map<std::string, ExtraEntry> extras;
};

/// Parses a flat `key = value` document with `#` comments into a validated Scenario.
/// Keys listed in `extra_keys` are returned verbatim instead of being rejected.
ScenarioDocument parse_scenario_document(std::string_view text, const std::set<std::string>& extra_keys = {});

Scenario parse_scenario(std::string_view text);

/// Resolved `key = value` lines that parse back into the same Scenario.
std::string format_scenario(const Scenario& s);

/// Recovers the scenario echoed in the `#` comment lines of a CSV written by write_series_csv.
Scenario scenario_from_echo(std::string_view csv_text);

bool operator==(const Scenario& a, const Scenario& b);

/// Locale-independent decimal parse of the whole token.
double parse_real(std::string_view token);

/// Parses "0.5", "0.5+0.25i", "-1e-3-2i", "i" and the like.
Complex parse_complex(std::string_view token);
std::string format_complex(Complex c);

}  // namespace decolab

#endif  // DECOLAB_SCENARIO_HPP
