#include "decolab/figures.hpp"

#include <filesystem>
#include <fstream>

#include "decolab/format.hpp"
#include "decolab/io.hpp"

namespace decolab {

namespace {

constexpr double kOmegaHalf = 150.0;

Scenario base(Coupling c, const FigureOptions& o) {
  Scenario s;
  s.model.coupling = c;
  s.model.omega_half = kOmegaHalf;
  s.system_frame = c == Coupling::XX ? Frame::PlusMinus : Frame::Computational;
  s.rho_s0 = states::plus();
  s.rho_e0 = states::thermal_z();
  s.horizon = o.horizon.value_or(c == Coupling::ZZ ? kZZFigureHorizon : kXXFigureHorizon);
  s.grid = uniform_grid(s.horizon, o.grid_points);
  s.realizations = o.realizations;
  s.seed = o.seed;
  return s;
}

Scenario with_kicks(Scenario s, double gamma) {
  s.kicks = KickParams{0.11 * std::numbers::pi / 2.0, gamma};
  return s;
}

Scenario with_dd(Scenario s, double freq) {
  s.dd = DDParams{freq, Qubit::S, default_dd_axis(s.model.coupling)};
  return s;
}

Scenario with_kondo(Scenario s) {
  s.kondo = KondoParams::for_model(s.model);
  return s;
}

std::string hz(double f) { return shortest(f) + "Hz"; }

/// Kicks only, kicks + DD and kicks + randomized pulses at one kick rate.
std::vector<FigureCurve> three_way(const std::string& id, Coupling c, double gamma, double dd, const FigureOptions& o) {
  const Scenario k = with_kicks(base(c, o), gamma);
  return {{id + "_dd" + hz(dd), with_dd(k, dd), {}},
          {id + "_kicks", k, {}},
          {id + "_kondo", with_kondo(k), {}}};
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig2a", "fig2b", "fig3a", "fig3b", "fig4a",
                                               "fig4b", "fig5a", "fig5b", "fig6a", "fig6b"};
  return ids;
}

std::vector<FigureCurve> figure_curves(const std::string& id, const FigureOptions& o) {
  if (id == "fig2a") {
    std::vector<FigureCurve> out;
    for (double g : {52.0, 102.0, 152.0, 202.0, 252.0}) {
      out.push_back({"fig2a_gamma" + shortest(g), with_kicks(base(Coupling::ZZ, o), g),
                     {"kick-rate set is a reconstruction: the caption does not enumerate it"}});
    }
    return out;
  }
  if (id == "fig2b") {
    std::vector<FigureCurve> out;
    const Scenario k = with_kicks(base(Coupling::ZZ, o), 152.0);
    for (double f : {7.6, 12.67, 42.0, 76.0}) {
      out.push_back({"fig2b_dd" + hz(f), with_dd(k, f),
                     {"decoupling-frequency set is a reconstruction from frequencies named in other captions"}});
    }
    return out;
  }
  if (id == "fig3a") return three_way(id, Coupling::ZZ, 52.0, 13.0, o);
  if (id == "fig3b") return three_way(id, Coupling::ZZ, 252.0, 42.0, o);
  if (id == "fig4a") return three_way(id, Coupling::ZZ, 152.0, 12.67, o);
  if (id == "fig4b") {
    const Scenario k = with_kicks(base(Coupling::ZZ, o), 152.0);
    return {{"fig4b_dd76Hz", with_dd(k, 76.0), {}},
            {"fig4b_dd7.6Hz", with_dd(k, 7.6), {}},
            {"fig4b_kondo", with_kondo(k), {}}};
  }
  if (id == "fig5a") {
    std::vector<FigureCurve> out;
    for (double g : {52.0, 152.0, 202.0}) out.push_back({"fig5a_gamma" + shortest(g), with_kicks(base(Coupling::XX, o), g), {}});
    return out;
  }
  if (id == "fig5b") {
    std::vector<FigureCurve> out;
    const Scenario k = with_kicks(base(Coupling::XX, o), 102.0);
    for (double f : {25.5, 10.2, 5.10}) out.push_back({"fig5b_dd" + hz(f), with_dd(k, f), {}});
    return out;
  }
  if (id == "fig6a") return three_way(id, Coupling::XX, 102.0, 10.2, o);
  if (id == "fig6b") return three_way(id, Coupling::XX, 152.0, 15.2, o);
  throw InvalidArgument("unknown figure id '" + id + "'");
}

std::vector<FigureOutput> reproduce_figure(const std::string& id, const std::string& dir, const FigureOptions& opts,
                                           const EnsembleOptions& ens) {
  auto curves = figure_curves(id, opts);
  std::filesystem::create_directories(dir);
  std::vector<FigureOutput> out;
  for (auto& c : curves) {
    auto result = average(c.scenario, ens);
    const auto path = (std::filesystem::path(dir) / (c.name + ".csv")).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    write_series_csv(f, result, c.scenario, c.notes);
    if (!f) throw Error("failed writing '" + path + "'");
    out.push_back({path, std::move(c), std::move(result)});
  }
  return out;
}

}  // namespace decolab
