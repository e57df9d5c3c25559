#include "respond/squeezed_state.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "respond/error.hpp"

namespace respond {

namespace {

constexpr double kOverflowMargin = 1e-12;
constexpr double kSymmetryTol = 1e-12;

// t_w = e^{i theta_w} tanh|w|, with t_w = 0 at w = 0.
Complex tangent_of(Complex w) {
  const double r = std::abs(w);
  return r == 0.0 ? Complex{} : (w / r) * std::tanh(r);
}

}  // namespace

SingleModeState::SingleModeState(Complex alpha, Complex tangent, double phase)
    : alpha_(alpha), tangent_(tangent), phase_(phase) {
  if (!(std::abs(tangent) < 1.0)) {
    throw Error(ErrorCode::InvalidState, "squeeze tangent must satisfy |t_z| < 1");
  }
}

SingleModeState SingleModeState::from_squeeze(Complex alpha, Complex z, double phase) {
  return {alpha, tangent_of(z), phase};
}

Complex SingleModeState::squeeze() const {
  const double r = std::abs(tangent_);
  return r == 0.0 ? Complex{} : (tangent_ / r) * std::atanh(r);
}

SingleModeState rotate(const SingleModeState& state, double phi) {
  return {state.alpha() * std::exp(kI * phi), state.tangent() * std::exp(2.0 * kI * phi),
          state.phase()};
}

SingleModeState displace(const SingleModeState& state, Complex beta) {
  // -i (beta alpha^* - beta^* alpha) / 2 = Im(beta alpha^*)
  const double shift = std::imag(beta * std::conj(state.alpha()));
  return {state.alpha() + beta, state.tangent(), state.phase() + shift};
}

SingleModeState squeeze(const SingleModeState& state, Complex w) {
  const double r = std::abs(w);
  if (r == 0.0) return state;
  const Complex unit = w / r;
  const Complex tw = unit * std::tanh(r);
  const Complex tz = state.tangent();
  const Complex alpha = state.alpha() * std::cosh(r) - std::conj(state.alpha()) * unit * std::sinh(r);
  const Complex tangent = (tz + tw) / (1.0 + tz * std::conj(tw));
  if (std::abs(tangent) >= 1.0 - kOverflowMargin) {
    throw Error(ErrorCode::SqueezeOverflow, "composed squeeze tangent reached |t| >= 1 - 1e-12");
  }
  // Re(1 + t_w t_z^*) > 0, so the principal branch of the square root is the
  // continuous one.
  const double shift = 0.5 * std::arg(1.0 + tw * std::conj(tz));
  return {alpha, tangent, state.phase() + shift};
}

Complex vacuum_overlap(const SingleModeState& state) {
  const Complex a = state.alpha();
  const Complex t = state.tangent();
  const double inv_sqrt_cosh = std::pow(1.0 - std::norm(t), 0.25);
  const Complex gaussian = std::exp(-0.5 * (std::norm(a) + t * std::conj(a) * std::conj(a)));
  return std::exp(kI * state.phase()) * inv_sqrt_cosh * gaussian;
}

MultiModeState::MultiModeState(CVector amplitudes, CMatrix tangent, double phase)
    : amplitudes_(std::move(amplitudes)), tangent_(std::move(tangent)), phase_(phase) {
  const Eigen::Index n = amplitudes_.size();
  if (tangent_.rows() != n || tangent_.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "tangent must be " + std::to_string(n) + "x" +
                                                  std::to_string(n));
  }
  if (asymmetry(tangent_) >= kSymmetryTol) {
    throw Error(ErrorCode::NonSymmetric, "squeeze tangent must be symmetric");
  }
  tangent_ = 0.5 * (tangent_ + tangent_.transpose()).eval();
  if (!(spectral_norm(tangent_) < 1.0)) {
    throw Error(ErrorCode::InvalidState, "squeeze tangent must have spectral norm < 1");
  }
}

MultiModeState MultiModeState::vacuum(Eigen::Index modes) {
  return {CVector::Zero(modes), CMatrix::Zero(modes, modes), 0.0};
}

MultiModeState MultiModeState::from_squeeze(CVector amplitudes, const CMatrix& z, double phase) {
  return {std::move(amplitudes), takagi(z).tangent(), phase};
}

MultiModeState MultiModeState::from_single(const SingleModeState& state) {
  CVector a(1);
  a(0) = state.alpha();
  CMatrix t(1, 1);
  t(0, 0) = state.tangent();
  return {a, t, state.phase()};
}

CMatrix MultiModeState::squeeze() const { return squeeze_from_tangent(tangent_); }

MultiModeState MultiModeState::with_phase(double phase) const {
  MultiModeState out = *this;
  out.phase_ = phase;
  return out;
}

MultiModeState rotate(const MultiModeState& state, const CMatrix& phi) {
  if (phi.rows() != state.modes() || phi.cols() != state.modes()) {
    throw Error(ErrorCode::DimensionMismatch, "rotation generator has wrong size");
  }
  return rotate_by_unitary(state, exp_i_hermitian(phi));
}

MultiModeState rotate_by_unitary(const MultiModeState& state, const CMatrix& unitary) {
  const CMatrix t = unitary * state.tangent() * unitary.transpose();
  return {unitary * state.amplitudes(), 0.5 * (t + t.transpose()), state.phase()};
}

MultiModeState displace(const MultiModeState& state, const CVector& b) {
  if (b.size() != state.modes()) {
    throw Error(ErrorCode::DimensionMismatch, "displacement has wrong length");
  }
  // -i (A^dagger B - B^dagger A) / 2 = Im(A^dagger B)
  const double shift = std::imag(state.amplitudes().dot(b));
  return {state.amplitudes() + b, state.tangent(), state.phase() + shift};
}

MultiModeState squeeze(const MultiModeState& state, const CMatrix& w) {
  const Eigen::Index n = state.modes();
  if (w.rows() != n || w.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "squeeze matrix has wrong size");
  }
  const TakagiFactorization f = takagi(w);
  if (f.values.size() == 0 || f.values(0) == 0.0) return state;

  const CMatrix& v = f.unitary;
  const RVector ch = f.values.array().cosh();
  const RVector sh = f.values.array().sinh();
  const RVector th = f.values.array().tanh();
  const RVector sech = ch.cwiseInverse();
  const CMatrix cosh_w = v * ch.cast<Complex>().asDiagonal() * v.adjoint();  // also S_W^{-1}
  const CMatrix sinh_phase_w = v * sh.cast<Complex>().asDiagonal() * v.transpose();
  const CMatrix tangent_w = v * th.cast<Complex>().asDiagonal() * v.transpose();
  const CMatrix sech_w = v * sech.cast<Complex>().asDiagonal() * v.adjoint();
  const CMatrix& tz = state.tangent();
  const CMatrix identity = CMatrix::Identity(n, n);

  const CVector amplitudes = cosh_w * state.amplitudes() - sinh_phase_w * state.amplitudes().conjugate();

  // T' = S_W^{-1} (T_W + T_Z) (I + T_W^dagger T_Z)^{-1} S_W^T, computed by a
  // right solve X M = Y  <=>  M^T X^T = Y^T.
  const CMatrix m = identity + tangent_w.adjoint() * tz;
  Eigen::FullPivLU<CMatrix> lu(m.transpose());
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw Error(ErrorCode::SingularMatrix, "I + T_W^dagger T_Z is singular");
  }
  const CMatrix right = lu.solve((tangent_w + tz).transpose()).transpose();
  CMatrix tangent = cosh_w * right * sech_w.transpose();
  tangent = 0.5 * (tangent + tangent.transpose()).eval();
  if (spectral_norm(tangent) >= 1.0 - kOverflowMargin) {
    throw Error(ErrorCode::SqueezeOverflow, "composed squeeze tangent reached norm >= 1 - 1e-12");
  }

  // The phase factor is det(I + T_Z T_W^dagger)^{-1/2} / |...|. Every eigenvalue
  // mu of T_Z T_W^dagger has |mu| < 1, so summing principal args of 1 + mu
  // follows the continuous branch from W = 0.
  Eigen::ComplexEigenSolver<CMatrix> es(tz * tangent_w.adjoint(), false);
  double arg_sum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) arg_sum += std::arg(1.0 + es.eigenvalues()(k));

  return {amplitudes, tangent, state.phase() - 0.5 * arg_sum};
}

Complex vacuum_overlap(const MultiModeState& state) {
  const CVector& a = state.amplitudes();
  const CMatrix& t = state.tangent();
  double det_root = 1.0;  // det(S_Z)^{1/2} = prod (1 - sigma_k^2)^{1/4}
  if (state.modes() > 0) {
    Eigen::JacobiSVD<CMatrix> svd(t);
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
      det_root *= std::pow(1.0 - svd.singularValues()(k) * svd.singularValues()(k), 0.25);
    }
  }
  const CVector a_conj = a.conjugate();
  const Complex quadratic = a_conj.transpose() * t * a_conj;
  const Complex exponent = -0.5 * (a.squaredNorm() + quadratic);
  return std::exp(kI * state.phase()) * det_root * std::exp(exponent);
}

}  // namespace respond
