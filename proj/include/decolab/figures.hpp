#ifndef DECOLAB_FIGURES_HPP
#define DECOLAB_FIGURES_HPP

#include <optional>
#include <string>
#include <vector>

#include "decolab/ensemble.hpp"

namespace decolab {

/// Horizons used when no --horizon override is given.
inline constexpr double kZZFigureHorizon = 1.0;
inline constexpr double kXXFigureHorizon = 2.0;

struct FigureOptions {
  std::uint64_t seed = 1;
  std::size_t realizations = 500;
  std::optional<double> horizon;
  std::size_t grid_points = 200;
};

struct FigureCurve {
  std::string name;  ///< file stem, e.g. "fig4a_kondo"
  Scenario scenario;
  std::vector<std::string> notes;
};

const std::vector<std::string>& figure_ids();

/// Built-in curves of one figure: Omega/2 = 150 Hz, alpha = 0.11 pi/2, E in (I + sigma_z)/2.
std::vector<FigureCurve> figure_curves(const std::string& id, const FigureOptions& opts = {});

struct FigureOutput {
  std::string path;
  FigureCurve curve;
  EnsembleResult result;
};

/// Runs every curve of figure `id` and writes one CSV per curve into `dir`.
std::vector<FigureOutput> reproduce_figure(const std::string& id, const std::string& dir, const FigureOptions& opts = {},
                                           const EnsembleOptions& ens = {});

}  // namespace decolab

#endif  // DECOLAB_FIGURES_HPP
