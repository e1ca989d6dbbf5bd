#ifndef DECOLAB_ENSEMBLE_HPP
#define DECOLAB_ENSEMBLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decolab/model.hpp"

namespace decolab {

/// Basis in which a scenario's system state is written. XX scenarios are specified in the
/// {|+>,|->} frame and simulated in the computational basis.
enum class Frame { Computational, PlusMinus };

namespace states {
inline DensityMatrix2 zero() { return DensityMatrix2((Mat2() << 1, 0, 0, 0).finished()); }
inline DensityMatrix2 one() { return DensityMatrix2((Mat2() << 0, 0, 0, 1).finished()); }
/// (I + sigma_x) / 2
inline DensityMatrix2 plus() { return DensityMatrix2((Mat2() << 0.5, 0.5, 0.5, 0.5).finished()); }
/// (I + sigma_z) / 2, the NMR thermal-equilibrium convention for E.
inline DensityMatrix2 thermal_z() { return zero(); }
}  // namespace states

std::vector<double> uniform_grid(double horizon, std::size_t points);

struct Scenario {
  ModelParams model;
  std::optional<KickParams> kicks;
  std::optional<KondoParams> kondo;
  std::optional<DDParams> dd;
  DensityMatrix2 rho_s0 = states::plus();
  DensityMatrix2 rho_e0 = states::thermal_z();
  Frame system_frame = Frame::Computational;
  double horizon = 1.0;
  std::vector<double> grid = uniform_grid(1.0, 200);
  std::size_t realizations = 500;
  std::uint64_t seed = 1;

  void validate() const;
  /// rho_s0 expressed in the computational basis.
  DensityMatrix2 initial_system_state() const;
};

/// Builds every timeline of realization `index`. Kick and Kondo draws come from separate
/// streams derived from (seed, index), so scenarios that differ only in DD share kicks.
std::vector<Timeline> realization_timelines(const Scenario& s, std::uint64_t index);

struct EnsembleOptions {
  unsigned workers = 1;  ///< 0 selects std::thread::hardware_concurrency()
};

class EnsembleResult {
 public:
  std::vector<double> times;
  std::vector<Mat2> mean_rho;
  std::vector<double> rho00;
  std::vector<double> rho11;
  std::vector<double> stderr_rho00;
  std::size_t realizations = 0;
  double horizon = 0.0;

  bool has_f01() const { return has_f01_; }
  const std::vector<Complex>& f01() const;
  const std::vector<double>& abs_f01() const;
  const std::vector<double>& stderr_abs_f01() const;

  /// Per-realization f01 samples, realizations x times.
  const Eigen::MatrixXcd& f01_samples() const;
  /// Per-realization rho00 samples, realizations x times.
  const Eigen::MatrixXd& rho00_samples() const { return rho00_samples_; }

 private:
  friend EnsembleResult average(const Scenario&, const EnsembleOptions&);

  bool has_f01_ = false;
  std::vector<Complex> f01_;
  std::vector<double> abs_f01_;
  std::vector<double> stderr_abs_f01_;
  Eigen::MatrixXcd f01_samples_;
  Eigen::MatrixXd rho00_samples_;
};

/// Monte Carlo average of the reduced system state over the scenario's realizations.
/// Summation runs in realization order, so the result does not depend on the worker count.
EnsembleResult average(const Scenario& s, const EnsembleOptions& opts = {});

/// Decay summary of one |f01(t)| curve.
struct DecoherenceMetrics {
  std::optional<double> t_half;       ///< empty when |f01| never drops below the threshold
  std::optional<double> decay_rate;   ///< least-squares slope of -log|f01|; empty if < 3 usable points
  double residual = 0.0;              ///< |f01(T)|
  double t_half_stderr = 0.0;         ///< bootstrap standard error (0 unless requested)

  bool reached() const { return t_half.has_value(); }
};

DecoherenceMetrics decoherence_metrics(std::span<const double> times, std::span<const double> abs_f01,
                                       double threshold = 0.5);
DecoherenceMetrics decoherence_metrics(const EnsembleResult& e, double threshold = 0.5);

/// t_half with "not reached" censored at the horizon.
double censored_t_half(std::span<const double> times, std::span<const double> abs_f01, double threshold = 0.5);

/// Bootstrap standard error of the censored t_half, resampling realizations.
double t_half_stderr(const EnsembleResult& e, double threshold = 0.5, std::size_t resamples = 200,
                     std::uint64_t seed = 0x5eed);

struct ScanRow {
  std::string label;
  double value = 0.0;
  DecoherenceMetrics metrics;
};

struct ScanResult {
  std::string parameter;
  std::vector<ScanRow> rows;
};

/// Seed used for entry `index` of a parameter scan.
std::uint64_t scan_seed(std::uint64_t base_seed, std::size_t index);

ScanResult kick_rate_scan(const Scenario& base, std::span<const double> gammas, const EnsembleOptions& opts = {},
                          std::size_t bootstrap = 0);

enum class Strategy { KicksOnly, KicksDD, KicksKondo };

struct StrategyRow {
  Strategy strategy = Strategy::KicksOnly;
  std::string label;
  double dd_freq = 0.0;
  DecoherenceMetrics metrics;
  EnsembleResult result;
};

/// Kicks only, kicks + DD at each frequency, kicks + randomized pulse pairs, all sharing
/// the base seed so every strategy sees the same kick draws.
std::vector<StrategyRow> compare_strategies(const Scenario& base, std::span<const double> dd_freqs,
                                            const EnsembleOptions& opts = {}, std::size_t bootstrap = 0);

struct IntegerCheckRow {
  int p = 0;
  double gamma = 0.0;
  double residual = 0.0;
  double worst_realization = 0.0;  ///< min over realizations of |f01(T)|
  bool pass = false;
};

/// Kicks-only runs at gamma = (Omega/2) / p; passes when the residual |f01(T)| >= 0.999.
std::vector<IntegerCheckRow> integer_ratio_check(const Scenario& base, std::span<const int> ps,
                                                 const EnsembleOptions& opts = {});

struct PopulationPoint {
  double t = 0.0;
  double rho00 = 0.0;
  double rho11 = 0.0;
};

std::vector<PopulationPoint> population_observables(const EnsembleResult& e);

}  // namespace decolab

#endif  // DECOLAB_ENSEMBLE_HPP
