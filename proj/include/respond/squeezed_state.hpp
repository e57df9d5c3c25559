#pragma once

#include "respond/linalg.hpp"

namespace respond {

/// e^{i zeta} D(alpha) S(z) |0> for a single bosonic mode, stored through the
/// squeeze tangent t_z = e^{i theta_z} tanh|z|.
class SingleModeState {
 public:
  SingleModeState() = default;
  /// Throws InvalidState unless |tangent| < 1.
  SingleModeState(Complex alpha, Complex tangent, double phase = 0.0);

  static SingleModeState from_squeeze(Complex alpha, Complex z, double phase = 0.0);

  Complex alpha() const { return alpha_; }
  Complex tangent() const { return tangent_; }
  double phase() const { return phase_; }
  /// z = atanh|t_z| t_z / |t_z|, or 0 for t_z = 0.
  Complex squeeze() const;

  SingleModeState with_phase(double phase) const { return {alpha_, tangent_, phase}; }

 private:
  Complex alpha_{0.0, 0.0};
  Complex tangent_{0.0, 0.0};
  double phase_ = 0.0;
};

/// R(phi) = exp(i phi a^dagger a)
SingleModeState rotate(const SingleModeState& state, double phi);
/// D(beta) = exp(beta a^dagger - beta^* a)
SingleModeState displace(const SingleModeState& state, Complex beta);
/// S(w) = exp((w^* a^2 - w a^dagger^2) / 2). Throws SqueezeOverflow.
SingleModeState squeeze(const SingleModeState& state, Complex w);
/// <0| e^{i zeta} |alpha, z>
Complex vacuum_overlap(const SingleModeState& state);

/// e^{i zeta} D_N(A) S_N(Z) |0> for N modes, stored through the complex
/// symmetric tangent T_Z = tanh|Z| e^{i Theta_Z}.
class MultiModeState {
 public:
  /// Throws DimensionMismatch, NonSymmetric, or InvalidState (norm of T >= 1).
  MultiModeState(CVector amplitudes, CMatrix tangent, double phase = 0.0);

  static MultiModeState vacuum(Eigen::Index modes);
  static MultiModeState from_squeeze(CVector amplitudes, const CMatrix& z, double phase = 0.0);
  static MultiModeState from_single(const SingleModeState& state);

  Eigen::Index modes() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }
  const CMatrix& tangent() const { return tangent_; }
  double phase() const { return phase_; }
  /// Z = V atanh(s) V^T from the Takagi factorization of the tangent.
  CMatrix squeeze() const;
  /// |A|^2
  double amplitude_norm_sq() const { return amplitudes_.squaredNorm(); }

  MultiModeState with_phase(double phase) const;

 private:
  CVector amplitudes_;
  CMatrix tangent_;
  double phase_ = 0.0;
};

/// R_N(Phi) = exp(i a^dagger Phi a), Phi Hermitian. Throws NonHermitian.
MultiModeState rotate(const MultiModeState& state, const CMatrix& phi);
/// Rotation with a precomputed unitary e^{i Phi}.
MultiModeState rotate_by_unitary(const MultiModeState& state, const CMatrix& unitary);
/// D_N(B) = exp(B^T a^dagger - B^dagger a). Throws DimensionMismatch.
MultiModeState displace(const MultiModeState& state, const CVector& b);
/// S_N(W) = exp((a^T W^* a - a^dagger^T W a^dagger) / 2), W symmetric.
/// Throws NonSymmetric, SqueezeOverflow, SingularMatrix.
MultiModeState squeeze(const MultiModeState& state, const CMatrix& w);
/// <0| e^{i zeta} |A, Z>
Complex vacuum_overlap(const MultiModeState& state);

}  // namespace respond
