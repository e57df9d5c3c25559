#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "respond/linalg.hpp"
#include "respond/model.hpp"
#include "respond/squeezed_state.hpp"

// Brute-force reference: every quantity here is computed in a truncated
// tensor-product Fock basis of the ground-state modes, independently of the
// squeezed-state recurrences.
namespace respond::oracle {

inline constexpr Eigen::Index kMaxDimension = 10000;

struct FockConfig {
  int n_max = 40;       // states per mode
  double tol = 1e-8;    // convergence threshold between successive truncations
  int max_n_max = 160;  // growth cap

  void validate() const;
};

/// Occupation-number basis with n_max states per mode; mode 0 is the most
/// significant digit of the flat index.
class FockBasis {
 public:
  /// Throws DimensionLimit when n_max^modes exceeds kMaxDimension.
  FockBasis(int modes, int n_max);

  int modes() const { return modes_; }
  int n_max() const { return n_max_; }
  Eigen::Index dim() const { return dim_; }

  Eigen::Index index(std::span<const int> occupation) const;
  std::vector<int> occupation(Eigen::Index index) const;

 private:
  int modes_;
  int n_max_;
  Eigen::Index dim_;
};

/// Copies amplitudes of `psi` (in `from`) into the larger basis `to`.
CVector embed(const CVector& psi, const FockBasis& from, const FockBasis& to);

struct Ladder {
  int mode;
  bool create;
};

/// coefficient * ops[0] ops[1] ... ops[k-1]; the last operator acts first.
struct LadderTerm {
  Complex coefficient;
  std::vector<Ladder> ops;
};

/// Galerkin projection P (sum of terms) P onto the truncated basis. Intermediate
/// occupations are not truncated, so quadratic operators are exact on the
/// retained subspace.
Eigen::SparseMatrix<Complex> assemble(const std::vector<LadderTerm>& terms, const FockBasis& basis);

/// b_j = sum_k (plus_jk a_k + minus_jk a_k^dagger) + shift_j expresses the
/// ladder operators of electronic state lambda through the ground-state ones.
struct BogoliubovMap {
  RMatrix plus;
  RMatrix minus;
  RVector shift;

  /// max deviation from [b_j, b_k^dagger] = delta_jk and [b_j, b_k] = 0.
  double commutator_defect() const;
};

BogoliubovMap bogoliubov_map(const VibronicModel& model, int lambda);

/// H_{v,lambda} = sum_j omega_{lambda,j} (b_j^dagger b_j + 1/2) in the truncated
/// ground-mode basis. Throws TruncationTooSmall when the lowest eigenvalue
/// misses sum_j omega_{lambda,j} / 2 by more than 1e-6 relative.
CMatrix build_hamiltonian(const VibronicModel& model, int lambda, const FockConfig& fock);

/// Same matrix without the truncation check; real because the map is real.
RMatrix hamiltonian_matrix(const VibronicModel& model, int lambda, const FockBasis& basis);

/// exp(G) psi for anti-Hermitian sparse G by scaled Taylor steps.
CVector apply_exponential(const Eigen::SparseMatrix<Complex>& generator, const CVector& psi);

/// Brute-force actions of R_N(Phi), D_N(B), S_N(W) on a truncated vector.
CVector apply_rotation(const CMatrix& phi, const CVector& psi, const FockBasis& basis);
CVector apply_displacement(const CVector& b, const CVector& psi, const FockBasis& basis);
CVector apply_squeeze(const CMatrix& w, const CVector& psi, const FockBasis& basis);

/// e^{i zeta} D_N(A) S_N(Z) |0> built by exponentiating the truncated generators.
CVector construct_state(const MultiModeState& state, const FockBasis& basis);

/// Hermite-series (generating-function recursion) expansion of e^{i zeta} |A, Z>.
CVector fock_expansion(const MultiModeState& state, const FockBasis& basis);

/// |<a|b>|^2 / (|a|^2 |b|^2)
double fidelity(const CVector& a, const CVector& b);

/// Dense propagators for a fixed truncation. Eigendecompositions are computed
/// on first use per electronic state; safe to share between threads.
class OracleEngine {
 public:
  OracleEngine(const VibronicModel& model, int n_max);

  const FockBasis& basis() const { return basis_; }
  CVector vacuum() const;
  /// e^{-i H_{v,lambda} t} psi
  CVector propagate(const CVector& psi, int lambda, double t) const;
  /// prod_k e^{-i H_{lambda_k} t_k} |0>
  CVector pathway_state(std::span<const int> lambdas, std::span<const double> times) const;
  /// e^{i (sum omega_0)(sum t)/2} <0| prod_k e^{-i H_{lambda_k} t_k} |0>
  Complex response(std::span<const int> lambdas, std::span<const double> times) const;
  /// Lowest eigenvalue of the truncated H_{v,lambda}.
  double ground_energy(int lambda) const;

 private:
  struct Spectrum {
    RVector energies;
    RMatrix vectors;
  };
  const Spectrum& spectrum(int lambda) const;

  VibronicModel model_;
  FockBasis basis_;
  mutable std::vector<Spectrum> spectra_;
  std::unique_ptr<std::once_flag[]> once_;
};

struct OracleValue {
  Complex value;
  int n_max;
};

struct OracleState {
  CVector vector;
  int n_max;
};

/// Truncation-converged oracle. Starting from fock.n_max, the truncation is
/// doubled (capped at fock.max_n_max) until two successive results differ by
/// less than fock.tol; throws NoConvergence if the cap is hit first. When
/// n_max == max_n_max a single fixed-truncation evaluation is returned.
/// Engines are cached per truncation; not thread-safe.
class Oracle {
 public:
  Oracle(VibronicModel model, FockConfig fock);

  OracleValue response(std::span<const int> lambdas, std::span<const double> times);
  OracleState state(std::span<const int> lambdas, std::span<const double> times);
  const OracleEngine& engine(int n_max);
  /// Configuration after capping max_n_max at the basis limit.
  const FockConfig& config() const { return fock_; }

 private:
  VibronicModel model_;
  FockConfig fock_;
  std::map<int, std::unique_ptr<OracleEngine>> engines_;
};

OracleValue oracle_response(const VibronicModel& model, std::span<const int> lambdas,
                            std::span<const double> times, const FockConfig& fock);
OracleState oracle_state(const VibronicModel& model, std::span<const int> lambdas,
                         std::span<const double> times, const FockConfig& fock);

}  // namespace respond::oracle
