#include "respond/response.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "respond/error.hpp"
#include "respond/parallel.hpp"
#include "respond/propagation.hpp"

namespace respond {

namespace {

void validate(const VibronicModel& model, const PathwaySpec& pathway, std::span<const double> times) {
  if (pathway.lambdas.empty()) throw Error(ErrorCode::DimensionMismatch, "pathway must have at least one interval");
  if (times.size() != pathway.lambdas.size()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(pathway.lambdas.size()) + " times, got " +
                                                  std::to_string(times.size()));
  }
  for (int lambda : pathway.lambdas) model.check_index(lambda);
}

bool all_left(std::span<const Side> sides) {
  return std::all_of(sides.begin(), sides.end(), [](Side s) { return s == Side::Left; });
}

}  // namespace

std::vector<Side> parse_sides(const std::string& text) {
  std::vector<Side> sides;
  for (char c : text) {
    if (c == 'L' || c == 'l') {
      sides.push_back(Side::Left);
    } else if (c == 'R' || c == 'r') {
      sides.push_back(Side::Right);
    } else {
      throw Error(ErrorCode::UnsupportedSides, "side labels must be L or R, got '" + text + "'");
    }
  }
  return sides;
}

std::string to_string(std::span<const Side> sides) {
  std::string s;
  for (Side side : sides) s += side == Side::Left ? 'L' : 'R';
  return s;
}

RemappedTimes remap_times(std::span<const Side> sides, std::span<const double> times) {
  if (!sides.empty() && sides.size() != times.size()) {
    throw Error(ErrorCode::DimensionMismatch, "side labels and times differ in length");
  }
  const std::vector<double> t(times.begin(), times.end());
  if (all_left(sides)) return {t, t};
  if (to_string(sides) == "LRL") {
    const std::vector<double> r{t[1] + t[2], -t[2], -(t[0] + t[1])};
    return {r, r};
  }
  throw Error(ErrorCode::UnsupportedSides,
              "side combination " + to_string(sides) + " has no time remapping; supply raw signed times instead");
}

RemappedTimes remap_times(const PathwaySpec& pathway, std::span<const double> times) {
  if (pathway.raw_times) {
    const std::vector<double> t(times.begin(), times.end());
    return {t, t};
  }
  return remap_times(pathway.sides, times);
}

Complex dipole_prefactor(const VibronicModel& model, std::span<const int> lambdas) {
  const RMatrix& mu = model.dipoles();
  Complex c{1.0, 0.0};
  int previous = 0;
  for (int lambda : lambdas) {
    model.check_index(lambda);
    c *= kI * mu(lambda, previous);
    previous = lambda;
  }
  return c * mu(0, previous);
}

Complex bare_electronic_response(const VibronicModel& model, const PathwaySpec& pathway,
                                 std::span<const double> times) {
  validate(model, pathway, times);
  const RemappedTimes tau = remap_times(pathway, times);
  const double eps0 = model.state(0).energy;
  double phase = 0.0;
  for (std::size_t k = 0; k < pathway.lambdas.size(); ++k) {
    phase -= (model.state(pathway.lambdas[k]).energy - eps0) * tau.electronic[k];
  }
  return dipole_prefactor(model, pathway.lambdas) * std::exp(kI * phase);
}

Complex electronic_response(const VibronicModel& model, const PathwaySpec& pathway, std::span<const double> times) {
  const Complex bare = bare_electronic_response(model, pathway, times);
  const double rate = model.gamma_deph() + 0.5 * model.gamma_relax();
  if (rate == 0.0) return bare;

  const std::vector<int>& l = pathway.lambdas;
  const bool left = !pathway.raw_times && all_left(pathway.sides);
  if (left && l.size() == 1 && l[0] != 0) return bare * std::exp(-rate * times[0]);
  if (left && l.size() == 3 && l[0] != 0 && l[1] == 0 && l[2] == l[0]) {
    return bare * std::exp(-rate * (times[0] + times[2]));
  }
  throw Error(ErrorCode::UnsupportedPathway,
              "dephasing is only modelled for the linear pathway and the all-left (l,0,l) pathway");
}

VibrationalEvaluation evaluate_vibrational(const VibronicModel& model, const PathwaySpec& pathway,
                                           std::span<const double> times) {
  validate(model, pathway, times);
  const RemappedTimes tau = remap_times(pathway, times);
  MultiModeState s = propagate_pathway(model, pathway.lambdas, tau.vibrational, MultiModeState::vacuum(model.modes()));
  const double total = std::accumulate(tau.vibrational.begin(), tau.vibrational.end(), 0.0);
  s = s.with_phase(s.phase() + 0.5 * model.ground_frequency_sum() * total);
  return {vacuum_overlap(s), std::move(s)};
}

Complex vibrational_response(const VibronicModel& model, const PathwaySpec& pathway, std::span<const double> times) {
  return evaluate_vibrational(model, pathway, times).value;
}

Complex vibrational_response(const VibronicModel& model, const PathwaySpec& pathway, std::span<const double> times,
                             const CVector& initial_amplitudes, const CMatrix& initial_tangent) {
  validate(model, pathway, times);
  const RemappedTimes tau = remap_times(pathway, times);
  const MultiModeState ket =
      effective_ket_general_initial(model, pathway.lambdas, tau.vibrational, initial_amplitudes, initial_tangent);
  const double total = std::accumulate(tau.vibrational.begin(), tau.vibrational.end(), 0.0);
  return std::exp(0.5 * kI * model.ground_frequency_sum() * total) * vacuum_overlap(ket);
}

Complex operator_string_overlap(const VibronicModel& model, std::span<const int> lambdas,
                                std::span<const double> times) {
  return vacuum_overlap(propagate_pathway(model, lambdas, times, MultiModeState::vacuum(model.modes())));
}

Complex total_response(const VibronicModel& model, const PathwaySpec& pathway, std::span<const double> times) {
  return electronic_response(model, pathway, times) * vibrational_response(model, pathway, times);
}

std::vector<double> ResponseGrid::times_at(std::size_t index) const {
  std::vector<double> t = fixed_times;
  for (std::size_t a = axes.size(); a-- > 0;) {
    const std::size_t n = axes[a].values.size();
    t[static_cast<std::size_t>(axes[a].time_index)] = axes[a].values[index % n];
    index /= n;
  }
  return t;
}

ResponseGrid scan_grid(const VibronicModel& model, const PathwaySpec& pathway, std::vector<GridAxis> axes,
                       std::vector<double> fixed, const GridOptions& options) {
  validate(model, pathway, fixed);
  if (axes.empty() || axes.size() > 3) throw Error(ErrorCode::DimensionMismatch, "a grid needs one to three axes");
  std::size_t total = 1;
  std::vector<bool> used(fixed.size(), false);
  for (const GridAxis& axis : axes) {
    if (axis.time_index < 0 || static_cast<std::size_t>(axis.time_index) >= fixed.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "axis scans t" + std::to_string(axis.time_index + 1) +
                                                  " but the pathway has " + std::to_string(fixed.size()) + " times");
    }
    if (used[static_cast<std::size_t>(axis.time_index)]) {
      throw Error(ErrorCode::DimensionMismatch, "two axes scan the same time");
    }
    used[static_cast<std::size_t>(axis.time_index)] = true;
    if (axis.values.empty()) throw Error(ErrorCode::DimensionMismatch, "grid axes must not be empty");
    total *= axis.values.size();
  }

  ResponseGrid grid{std::move(axes), std::move(fixed), {}, {}, {}};
  grid.values.resize(total);
  grid.vibrational.resize(total);
  if (options.diagnostics) grid.diagnostics.resize(total);
  parallel_for(
      total,
      [&](std::size_t i) {
        const std::vector<double> t = grid.times_at(i);
        VibrationalEvaluation v = evaluate_vibrational(model, pathway, t);
        grid.vibrational[i] = v.value;
        grid.values[i] = options.electronic ? electronic_response(model, pathway, t) * v.value : v.value;
        if (options.diagnostics) {
          grid.diagnostics[i] = {v.state.amplitudes(), v.state.squeeze(), v.state.amplitude_norm_sq()};
        }
      },
      options.threads);
  return grid;
}

}  // namespace respond
