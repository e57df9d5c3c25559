#pragma once

#include <complex>

#include <Eigen/Dense>

namespace respond {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

double max_abs(const CMatrix& m);
double asymmetry(const CMatrix& m);       // max |M - M^T|
double hermiticity_defect(const CMatrix& m);  // max |M - M^dagger|
double spectral_norm(const CMatrix& m);

/// Symmetric singular value decomposition Z = V diag(s) V^T of a complex
/// symmetric matrix. Values are sorted in descending order.
struct TakagiFactorization {
  CMatrix unitary;
  RVector values;

  CMatrix reconstruct() const;
  /// |Z| = V diag(s) V^dagger
  CMatrix modulus() const;
  /// e^{i Theta_Z} = V V^T
  CMatrix phase() const;
  /// tanh|Z| e^{i Theta_Z} = V tanh(s) V^T
  CMatrix tangent() const;
};

/// Throws NonSymmetric or ReconstructionFailure.
TakagiFactorization takagi(const CMatrix& z);

/// Principal Hermitian square root of I - T T^dagger, i.e. sech|Z| for the
/// tangent T of a symmetric squeeze matrix Z. Throws SpectralOverflow when
/// the spectral norm of T is not below one.
CMatrix sech_from_tangent(const CMatrix& t);

/// Recovers the squeeze matrix Z = V atanh(s) V^T from its tangent.
CMatrix squeeze_from_tangent(const CMatrix& t);

/// Hermitian Phi with e^{i Phi} = U for a proper rotation U, principal branch
/// (eigen-angles in (-pi, pi]). Throws NotOrthogonal or ReflectionInput.
CMatrix orthogonal_log(const RMatrix& u);

/// e^{i Phi} for Hermitian Phi. Throws NonHermitian.
CMatrix exp_i_hermitian(const CMatrix& phi);

}  // namespace respond
