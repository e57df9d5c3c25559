#pragma once

#include <span>
#include <vector>

#include "respond/model.hpp"
#include "respond/squeezed_state.hpp"

namespace respond {

enum class OperationKind { Squeeze, Displace, Rotate };

struct SingleModeOperation {
  OperationKind kind;
  Complex parameter;  // w, beta, or phi (real part)
};

/// e^{-i H_{v,lambda} t} for one mode as elementary operations in application
/// order, times the scalar phase e^{i phase}.
struct SingleModeFactorization {
  std::vector<SingleModeOperation> operations;
  double phase = 0.0;
};

/// Operations with a zero parameter are omitted. Throws IndexOutOfRange.
SingleModeFactorization factorize_interval_single(const VibronicModel& model, int lambda, double t,
                                                  int mode = 0);

SingleModeState apply(const SingleModeFactorization& factorization, const SingleModeState& state);

/// Free evolution of one mode of `model` under electronic state lambda, ignoring
/// Duschinsky mixing. Exact for single-mode models.
SingleModeState step_interval(const SingleModeState& state, const VibronicModel& model, int lambda,
                              double t, int mode = 0);

struct MultiModeOperation {
  OperationKind kind;
  CMatrix matrix;  // squeeze W, or rotation generator Phi
  CMatrix unitary; // e^{i Phi} for rotations
  CVector vector;  // displacement B
};

struct MultiModeFactorization {
  std::vector<MultiModeOperation> operations;
  double phase = 0.0;
};

/// Nine-operation decomposition S(X_0) R(Phi) S(-X_l) D(Delta) R(Phi') D(-Delta)
/// S(X_l) R(-Phi) S(-X_0), listed in application order.
MultiModeFactorization factorize_interval(const VibronicModel& model, int lambda, double t);

MultiModeState apply(const MultiModeFactorization& factorization, const MultiModeState& state);

MultiModeState step_interval(const MultiModeState& state, const VibronicModel& model, int lambda,
                             double t);

/// Applies e^{-i H_{lambda_M} t_M} ... e^{-i H_{lambda_1} t_1} to `initial`.
/// Times are signed; negative values evolve backwards.
MultiModeState propagate_pathway(const VibronicModel& model, std::span<const int> lambdas,
                                 std::span<const double> times, const MultiModeState& initial);

/// S(-Z_0) D(-A_0) R(Phi_0) [pathway] |A_0, Z_0>, with Phi_0 = (sum t) diag(omega_0).
/// Its vacuum overlap times e^{i phi_0 / 2} is the response for the initial
/// state |A_0, Z_0>.
MultiModeState effective_ket_general_initial(const VibronicModel& model, std::span<const int> lambdas,
                                             std::span<const double> times, const CVector& initial_amplitudes,
                                             const CMatrix& initial_tangent);

}  // namespace respond
