#include "respond/propagation.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "respond/error.hpp"

namespace respond {

SingleModeFactorization factorize_interval_single(const VibronicModel& model, int lambda, double t,
                                                  int mode) {
  const ElectronicState& excited = model.state(lambda);
  if (mode < 0 || mode >= model.modes()) {
    throw Error(ErrorCode::IndexOutOfRange, "mode index " + std::to_string(mode));
  }
  const double omega0 = model.state(0).frequencies(mode);
  const double omega = excited.frequencies(mode);
  const double delta = excited.displacements(mode);
  const double squeeze_arg = 0.5 * std::log(omega0 / omega);

  SingleModeFactorization f;
  const auto push = [&f](OperationKind kind, Complex parameter) {
    if (parameter != Complex{}) f.operations.push_back({kind, parameter});
  };
  push(OperationKind::Squeeze, squeeze_arg);
  push(OperationKind::Displace, delta);
  push(OperationKind::Rotate, -omega * t);
  push(OperationKind::Displace, -delta);
  push(OperationKind::Squeeze, -squeeze_arg);
  f.phase = -0.5 * omega * t;
  return f;
}

SingleModeState apply(const SingleModeFactorization& factorization, const SingleModeState& state) {
  SingleModeState s = state;
  for (const SingleModeOperation& op : factorization.operations) {
    switch (op.kind) {
      case OperationKind::Squeeze: s = squeeze(s, op.parameter); break;
      case OperationKind::Displace: s = displace(s, op.parameter); break;
      case OperationKind::Rotate: s = rotate(s, op.parameter.real()); break;
    }
  }
  return s.with_phase(s.phase() + factorization.phase);
}

SingleModeState step_interval(const SingleModeState& state, const VibronicModel& model, int lambda,
                              double t, int mode) {
  return apply(factorize_interval_single(model, lambda, t, mode), state);
}

MultiModeFactorization factorize_interval(const VibronicModel& model, int lambda, double t) {
  const ElectronicState& excited = model.state(lambda);
  const ElectronicState& ground = model.state(0);
  const Eigen::Index n = model.modes();

  const CMatrix x0 = (0.5 * ground.frequencies.array().log()).matrix().cast<Complex>().asDiagonal();
  const CMatrix xl = (0.5 * excited.frequencies.array().log()).matrix().cast<Complex>().asDiagonal();
  const CVector delta = excited.displacements.cast<Complex>();
  const CMatrix& phi = model.rotation_generator(lambda);
  const CMatrix& u = model.rotation_unitary(lambda);

  const RVector angles = -t * excited.frequencies;
  const CMatrix phi_free = angles.cast<Complex>().asDiagonal();
  CVector free_phases(n);
  for (Eigen::Index j = 0; j < n; ++j) free_phases(j) = std::exp(kI * angles(j));
  const CMatrix u_free = free_phases.asDiagonal();

  MultiModeFactorization f;
  const auto squeeze_op = [](const CMatrix& w) { return MultiModeOperation{OperationKind::Squeeze, w, {}, {}}; };
  const auto rotate_op = [](const CMatrix& g, const CMatrix& e) {
    return MultiModeOperation{OperationKind::Rotate, g, e, {}};
  };
  const auto displace_op = [](const CVector& b) { return MultiModeOperation{OperationKind::Displace, {}, {}, b}; };
  f.operations = {squeeze_op(x0),         rotate_op(phi, u),  squeeze_op(-xl),
                  displace_op(delta),     rotate_op(phi_free, u_free), displace_op(-delta),
                  squeeze_op(xl),         rotate_op(-phi, u.adjoint()), squeeze_op(-x0)};
  f.phase = -0.5 * t * excited.frequencies.sum();
  return f;
}

MultiModeState apply(const MultiModeFactorization& factorization, const MultiModeState& state) {
  MultiModeState s = state;
  for (const MultiModeOperation& op : factorization.operations) {
    switch (op.kind) {
      case OperationKind::Squeeze: s = squeeze(s, op.matrix); break;
      case OperationKind::Displace: s = displace(s, op.vector); break;
      case OperationKind::Rotate: s = rotate_by_unitary(s, op.unitary); break;
    }
  }
  return s.with_phase(s.phase() + factorization.phase);
}

MultiModeState step_interval(const MultiModeState& state, const VibronicModel& model, int lambda,
                             double t) {
  if (state.modes() != model.modes()) {
    throw Error(ErrorCode::DimensionMismatch, "state and model have different numbers of modes");
  }
  return apply(factorize_interval(model, lambda, t), state);
}

MultiModeState propagate_pathway(const VibronicModel& model, std::span<const int> lambdas,
                                 std::span<const double> times, const MultiModeState& initial) {
  if (lambdas.size() != times.size()) {
    throw Error(ErrorCode::DimensionMismatch, "pathway and time lists differ in length");
  }
  if (lambdas.empty()) throw Error(ErrorCode::DimensionMismatch, "pathway must have at least one interval");
  MultiModeState s = initial;
  for (std::size_t k = 0; k < lambdas.size(); ++k) s = step_interval(s, model, lambdas[k], times[k]);
  return s;
}

MultiModeState effective_ket_general_initial(const VibronicModel& model, std::span<const int> lambdas,
                                             std::span<const double> times, const CVector& initial_amplitudes,
                                             const CMatrix& initial_tangent) {
  const MultiModeState initial(initial_amplitudes, initial_tangent, 0.0);
  MultiModeState s = propagate_pathway(model, lambdas, times, initial);
  const double total = std::accumulate(times.begin(), times.end(), 0.0);
  const RVector angles = total * model.state(0).frequencies;
  CVector phases(angles.size());
  for (Eigen::Index j = 0; j < angles.size(); ++j) phases(j) = std::exp(kI * angles(j));
  s = rotate_by_unitary(s, phases.asDiagonal().toDenseMatrix());
  s = displace(s, -initial_amplitudes);
  return squeeze(s, -initial.squeeze());
}

}  // namespace respond
