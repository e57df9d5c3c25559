#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "respond/model.hpp"
#include "respond/squeezed_state.hpp"

namespace respond {

enum class Side { Left, Right };

/// Parses "LLL", "LRL", ... Throws UnsupportedSides on other characters.
std::vector<Side> parse_sides(const std::string& text);
std::string to_string(std::span<const Side> sides);

/// Electronic pathway Lambda = (lambda_1..lambda_M) with the side of each of
/// the first M field interactions (empty = all on the ket side). With
/// raw_times set, the supplied times are used as signed interval lengths and
/// `sides` is ignored.
struct PathwaySpec {
  std::vector<int> lambdas;
  std::vector<Side> sides;
  bool raw_times = false;
  std::string label;

  int order() const { return static_cast<int>(lambdas.size()); }
};

/// Signed interval lengths for the vibrational propagation and the times
/// multiplying the electronic energies, exp(-i sum_k eps_{lambda_k} tau_k).
struct RemappedTimes {
  std::vector<double> vibrational;
  std::vector<double> electronic;
};

/// All-left sides map to the identity; (L,R,L) maps (t1,t2,t3) to
/// (t2+t3, -t3, -(t1+t2)). Throws UnsupportedSides otherwise.
RemappedTimes remap_times(std::span<const Side> sides, std::span<const double> times);
RemappedTimes remap_times(const PathwaySpec& pathway, std::span<const double> times);

/// i^M mu_{lambda_1,0} mu_{lambda_2,lambda_1} ... mu_{0,lambda_M}
Complex dipole_prefactor(const VibronicModel& model, std::span<const int> lambdas);

/// C_Lambda exp(-i sum_k (eps_{lambda_k} - eps_0) tau_k), no damping.
Complex bare_electronic_response(const VibronicModel& model, const PathwaySpec& pathway,
                                 std::span<const double> times);

/// Electronic factor with coherence damping exp(-(gamma + Gamma/2) t) for the
/// linear pathway (1) and the all-left pathway (1,0,1); other pathways are
/// accepted only without damping. Throws UnsupportedPathway.
Complex electronic_response(const VibronicModel& model, const PathwaySpec& pathway, std::span<const double> times);

struct VibrationalEvaluation {
  Complex value;
  MultiModeState state;  // propagated ket, including the bra phase
};

/// Propagates the vacuum along the (remapped) pathway and returns the vacuum
/// overlap times exp(i (sum omega_0)(sum t) / 2).
VibrationalEvaluation evaluate_vibrational(const VibronicModel& model, const PathwaySpec& pathway,
                                           std::span<const double> times);
Complex vibrational_response(const VibronicModel& model, const PathwaySpec& pathway, std::span<const double> times);

/// Response for the initial vibrational state |A0, Z0> (given by its tangent)
/// instead of the vacuum.
Complex vibrational_response(const VibronicModel& model, const PathwaySpec& pathway, std::span<const double> times,
                             const CVector& initial_amplitudes, const CMatrix& initial_tangent);

/// <0| prod_k e^{-i H_{lambda_k} t_k} |0> with no bra phase; the building
/// block for arbitrary double-sided diagrams written as operator strings.
Complex operator_string_overlap(const VibronicModel& model, std::span<const int> lambdas,
                                std::span<const double> times);

/// electronic_response * vibrational_response
Complex total_response(const VibronicModel& model, const PathwaySpec& pathway, std::span<const double> times);

struct GridAxis {
  int time_index;  // which of t_1..t_M the axis scans (0-based)
  std::vector<double> values;
};

struct GridOptions {
  bool electronic = true;   // multiply by the electronic factor
  bool diagnostics = false; // keep the propagated state at every point
  int threads = 0;          // 0 = RESPOND_THREADS or hardware concurrency
};

struct PointDiagnostics {
  CVector amplitudes;
  CMatrix squeeze;
  double amplitude_norm_sq = 0.0;
};

/// Samples are row-major over the axes (first axis outermost).
struct ResponseGrid {
  std::vector<GridAxis> axes;
  std::vector<double> fixed_times;
  std::vector<Complex> values;       // total (or vibrational if !electronic)
  std::vector<Complex> vibrational;
  std::vector<PointDiagnostics> diagnostics;

  std::size_t size() const { return values.size(); }
  /// Raw times of sample `index`.
  std::vector<double> times_at(std::size_t index) const;
};

/// Evaluates the pathway on the Cartesian product of 1-3 axes; the remaining
/// times come from `fixed` (length M). Output does not depend on the number
/// of threads.
ResponseGrid scan_grid(const VibronicModel& model, const PathwaySpec& pathway, std::vector<GridAxis> axes,
                       std::vector<double> fixed, const GridOptions& options = {});

}  // namespace respond
