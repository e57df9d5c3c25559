#include "respond/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "respond/error.hpp"

namespace respond {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kReconstructionTol = 1e-10;
constexpr double kOrthogonalityTol = 1e-10;

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be square");
  }
}

// Modified Gram-Schmidt over the columns of v, in order. Columns flagged in
// `replace` are discarded and refilled from the canonical basis.
void orthonormalize(CMatrix& v, const std::vector<bool>& replace) {
  const Eigen::Index n = v.rows();
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    if (!replace[k]) {
      CVector col = v.col(k);
      for (Eigen::Index j = 0; j < k; ++j) col -= v.col(j).dot(col) * v.col(j);
      v.col(k) = col / col.norm();
      continue;
    }
    // Pick the canonical vector with the largest component outside span(v[:, :k]).
    // Two projection passes keep the completion orthogonal to working precision.
    double best_norm = -1.0;
    CVector best;
    for (Eigen::Index e = 0; e < n; ++e) {
      CVector col = CVector::Unit(n, e);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < k; ++j) col -= v.col(j).dot(col) * v.col(j);
      }
      if (col.norm() > best_norm) {
        best_norm = col.norm();
        best = col;
      }
    }
    v.col(k) = best / best.norm();
  }
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::SqueezeOverflow: return "SqueezeOverflow";
    case ErrorCode::SpectralOverflow: return "SpectralOverflow";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ReconstructionFailure: return "ReconstructionFailure";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::ReflectionInput: return "ReflectionInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::UnsupportedPathway: return "UnsupportedPathway";
    case ErrorCode::UnsupportedSides: return "UnsupportedSides";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionLimit: return "DimensionLimit";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double asymmetry(const CMatrix& m) { return max_abs(m - m.transpose()); }

double hermiticity_defect(const CMatrix& m) { return max_abs(m - m.adjoint()); }

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix TakagiFactorization::reconstruct() const {
  return unitary * values.cast<Complex>().asDiagonal() * unitary.transpose();
}

CMatrix TakagiFactorization::modulus() const {
  return unitary * values.cast<Complex>().asDiagonal() * unitary.adjoint();
}

CMatrix TakagiFactorization::phase() const { return unitary * unitary.transpose(); }

CMatrix TakagiFactorization::tangent() const {
  const RVector th = values.array().tanh();
  return unitary * th.cast<Complex>().asDiagonal() * unitary.transpose();
}

// The real symmetric embedding [[Re Z, Im Z], [Im Z, -Re Z]] has eigenpairs
// (+s_k, [Re v_k; Im v_k]) and (-s_k, [-Im v_k; Re v_k]) for each Takagi pair,
// so its upper half-spectrum yields V directly.
TakagiFactorization takagi(const CMatrix& z) {
  require_square(z, "Takagi input");
  const Eigen::Index n = z.rows();
  const double scale = std::max(1.0, max_abs(z));
  if (asymmetry(z) >= kSymmetryTol * scale) {
    throw Error(ErrorCode::NonSymmetric, "Takagi input is not symmetric");
  }
  TakagiFactorization result{CMatrix::Identity(n, n), RVector::Zero(n)};
  if (n == 0 || max_abs(z) == 0.0) return result;

  const CMatrix zs = 0.5 * (z + z.transpose());
  RMatrix embed(2 * n, 2 * n);
  embed << zs.real(), zs.imag(), zs.imag(), -zs.real();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(embed);

  const double top = std::max(es.eigenvalues()(2 * n - 1), 0.0);
  const double cutoff = 1e-13 * std::max(1.0, top);
  std::vector<bool> replace(static_cast<std::size_t>(n), false);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index idx = 2 * n - 1 - k;
    const double s = std::max(es.eigenvalues()(idx), 0.0);
    result.values(k) = s;
    const auto vec = es.eigenvectors().col(idx);
    result.unitary.col(k) = vec.head(n).cast<Complex>() + kI * vec.tail(n).cast<Complex>();
    replace[static_cast<std::size_t>(k)] = s <= cutoff;
  }
  orthonormalize(result.unitary, replace);

  const double residual = max_abs(result.reconstruct() - zs);
  if (residual >= kReconstructionTol * scale) {
    throw Error(ErrorCode::ReconstructionFailure,
                "Takagi reconstruction residual " + std::to_string(residual));
  }
  return result;
}

CMatrix sech_from_tangent(const CMatrix& t) {
  require_square(t, "squeeze tangent");
  const Eigen::Index n = t.rows();
  const CMatrix gram = CMatrix::Identity(n, n) - t * t.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
  if (n > 0 && es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorCode::SpectralOverflow, "squeeze tangent has spectral norm >= 1");
  }
  const RVector root = es.eigenvalues().array().sqrt();
  return es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix squeeze_from_tangent(const CMatrix& t) {
  TakagiFactorization f = takagi(t);
  for (Eigen::Index k = 0; k < f.values.size(); ++k) {
    if (f.values(k) >= 1.0) {
      throw Error(ErrorCode::SpectralOverflow, "squeeze tangent has spectral norm >= 1");
    }
    f.values(k) = std::atanh(f.values(k));
  }
  return f.reconstruct();
}

CMatrix orthogonal_log(const RMatrix& u) {
  if (u.rows() != u.cols()) throw Error(ErrorCode::DimensionMismatch, "rotation must be square");
  const Eigen::Index n = u.rows();
  if (n == 0) return CMatrix(0, 0);
  const double defect = (u.transpose() * u - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect >= kOrthogonalityTol) {
    throw Error(ErrorCode::NotOrthogonal, "matrix is not orthogonal (defect " + std::to_string(defect) + ")");
  }
  if (u.determinant() < 0.0) throw Error(ErrorCode::ReflectionInput, "orthogonal matrix has det -1");

  // A normal matrix has a block-diagonal real Schur form: 2x2 rotation blocks
  // and +-1 on the diagonal.
  Eigen::RealSchur<RMatrix> schur(u);
  const RMatrix& t = schur.matrixT();
  RMatrix generator = RMatrix::Zero(n, n);
  std::vector<Eigen::Index> reflections;
  const double block_tol = 1e-12;
  Eigen::Index i = 0;
  while (i < n) {
    if (i + 1 < n && std::abs(t(i + 1, i)) > block_tol) {
      const double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double s = 0.5 * (t(i + 1, i) - t(i, i + 1));
      double angle = std::atan2(s, c);
      if (angle <= -std::numbers::pi) angle = std::numbers::pi;
      generator(i, i + 1) = -angle;
      generator(i + 1, i) = angle;
      i += 2;
    } else {
      if (t(i, i) < 0.0) reflections.push_back(i);
      i += 1;
    }
  }
  if (reflections.size() % 2 != 0) {
    throw Error(ErrorCode::ReflectionInput, "odd number of -1 eigenvalues");
  }
  // Paired -1 eigenvalues form a rotation by +pi.
  for (std::size_t k = 0; k < reflections.size(); k += 2) {
    generator(reflections[k], reflections[k + 1]) = -std::numbers::pi;
    generator(reflections[k + 1], reflections[k]) = std::numbers::pi;
  }
  const RMatrix log_u = schur.matrixU() * generator * schur.matrixU().transpose();
  const RMatrix skew = 0.5 * (log_u - log_u.transpose());
  return -kI * skew.cast<Complex>();
}

CMatrix exp_i_hermitian(const CMatrix& phi) {
  require_square(phi, "rotation generator");
  const double scale = std::max(1.0, max_abs(phi));
  if (hermiticity_defect(phi) >= kSymmetryTol * scale) {
    throw Error(ErrorCode::NonHermitian, "rotation generator is not Hermitian");
  }
  const Eigen::Index n = phi.rows();
  if (n == 0) return CMatrix(0, 0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (phi + phi.adjoint()));
  CVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::exp(kI * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace respond
