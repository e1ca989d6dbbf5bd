#include "decolab/io.hpp"

#include <cmath>
#include <sstream>

#include "decolab/format.hpp"
#include "decolab/scenario.hpp"

namespace decolab {

namespace {

std::string optional_number(const std::optional<double>& v) { return v ? precise(*v) : std::string(); }

void write_metrics(std::ostream& os, const DecoherenceMetrics& m) {
  os << optional_number(m.t_half) << ',' << (m.reached() ? "yes" : "no") << ',' << optional_number(m.decay_rate) << ','
     << precise(m.residual) << ',' << precise(m.t_half_stderr);
}

constexpr std::string_view kMetricColumns = "t_half,reached,decay_rate,residual_abs_f01,t_half_stderr";

}  // namespace

void write_series_csv(std::ostream& os, const EnsembleResult& e, const Scenario& s, std::span<const std::string> notes) {
  os << kSeriesHeader << '\n';
  std::istringstream echo(format_scenario(s));
  for (std::string line; std::getline(echo, line);) os << "# " << line << '\n';
  for (const auto& n : notes) os << "# note: " << n << '\n';
  for (std::size_t g = 0; g < e.times.size(); ++g) {
    os << precise(e.times[g]) << ',';
    if (e.has_f01()) {
      const Complex f = e.f01()[g];
      os << precise(f.real()) << ',' << precise(f.imag()) << ',' << precise(e.abs_f01()[g]) << ','
         << precise(e.stderr_abs_f01()[g]) << ',';
    } else {
      os << ",,,,";
    }
    os << precise(e.rho00[g]) << ',' << precise(e.rho11[g]) << ',' << precise(e.stderr_rho00[g]) << '\n';
  }
}

std::string summary_line(const EnsembleResult& e) {
  std::ostringstream os;
  if (e.has_f01()) {
    const auto m = decoherence_metrics(e);
    os << "t_half=" << (m.t_half ? precise(*m.t_half) : std::string("not-reached"))
       << " lambda=" << (m.decay_rate ? precise(*m.decay_rate) : std::string("n/a")) << " residual=" << precise(m.residual);
  } else {
    os << "t_half=n/a lambda=n/a residual=n/a";
  }
  os << " rho00(T)=" << precise(e.rho00.back()) << " realizations=" << e.realizations;
  return os.str();
}

void write_scan_csv(std::ostream& os, const ScanResult& scan) {
  os << scan.parameter << ',' << kMetricColumns << '\n';
  for (const auto& row : scan.rows) {
    os << precise(row.value) << ',';
    write_metrics(os, row.metrics);
    os << '\n';
  }
}

void write_strategy_csv(std::ostream& os, std::span<const StrategyRow> rows) {
  os << "strategy,dd_freq," << kMetricColumns << ",rho00_T\n";
  for (const auto& row : rows) {
    os << row.label << ',' << precise(row.dd_freq) << ',';
    write_metrics(os, row.metrics);
    os << ',' << precise(row.result.rho00.back()) << '\n';
  }
}

void write_integer_csv(std::ostream& os, std::span<const IntegerCheckRow> rows) {
  os << "p,gamma,residual_abs_f01,worst_realization,pass\n";
  for (const auto& row : rows) {
    os << row.p << ',' << precise(row.gamma) << ',' << precise(row.residual) << ',' << precise(row.worst_realization)
       << ',' << (row.pass ? "pass" : "fail") << '\n';
  }
}

std::vector<double> parse_number_list(std::string_view text) {
  std::string norm(text);
  for (auto& c : norm)
    if (c == ',') c = ' ';
  std::istringstream is(norm);
  std::vector<double> out;
  for (std::string tok; is >> tok;) {
    const auto c1 = tok.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_real(tok));
      continue;
    }
    const auto c2 = tok.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InvalidArgument("range '" + tok + "' must be lo:hi:step");
    const double lo = parse_real(tok.substr(0, c1));
    const double hi = parse_real(tok.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_real(tok.substr(c2 + 1));
    if (!(step > 0.0) || hi < lo) throw InvalidArgument("range '" + tok + "' needs lo <= hi and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  }
  return out;
}

ScanKind parse_scan_kind(std::string_view name) {
  if (name == "gamma-scan") return ScanKind::GammaScan;
  if (name == "integer-check") return ScanKind::IntegerCheck;
  if (name == "strategy-compare") return ScanKind::StrategyCompare;
  throw InvalidArgument("unknown scan kind '" + std::string(name) + "' (gamma-scan, integer-check, strategy-compare)");
}

int run_scan(ScanKind kind, std::string_view config_text, std::ostream& os, const EnsembleOptions& opts) {
  const auto doc = parse_scenario_document(config_text, {"gammas", "p_values", "dd_freqs", "bootstrap"});
  auto list = [&](const std::string& key, std::string_view fallback) {
    const auto it = doc.extras.find(key);
    try {
      return parse_number_list(it == doc.extras.end() ? fallback : std::string_view(it->second.value));
    } catch (const InvalidArgument& e) {
      throw ScenarioError(key, it == doc.extras.end() ? 0 : it->second.line, e.what());
    }
  };
  std::size_t bootstrap = 200;
  if (const auto it = doc.extras.find("bootstrap"); it != doc.extras.end()) {
    bootstrap = static_cast<std::size_t>(list("bootstrap", "").at(0));
  }

  switch (kind) {
    case ScanKind::GammaScan: {
      const auto gammas = list("gammas", "");
      if (gammas.empty()) throw ScenarioError("gammas", 0, "gamma-scan needs a non-empty 'gammas' list");
      write_scan_csv(os, kick_rate_scan(doc.scenario, gammas, opts, bootstrap));
      return 0;
    }
    case ScanKind::IntegerCheck: {
      std::vector<int> ps;
      for (double p : list("p_values", "1 2 3")) {
        if (p != std::floor(p) || p < 1) throw ScenarioError("p_values", 0, "p values must be positive integers");
        ps.push_back(static_cast<int>(p));
      }
      const auto rows = integer_ratio_check(doc.scenario, ps, opts);
      write_integer_csv(os, rows);
      int failed = 0;
      for (const auto& r : rows) failed += r.pass ? 0 : 1;
      return failed;
    }
    case ScanKind::StrategyCompare: {
      const auto rows = compare_strategies(doc.scenario, list("dd_freqs", ""), opts, bootstrap);
      write_strategy_csv(os, rows);
      return 0;
    }
  }
  return 0;
}

}  // namespace decolab
