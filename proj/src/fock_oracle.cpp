#include "respond/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "respond/error.hpp"

namespace respond::oracle {

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;

std::string short_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void check_pathway(std::span<const int> lambdas, std::span<const double> times) {
  if (lambdas.size() != times.size()) {
    throw Error(ErrorCode::DimensionMismatch, "pathway and time lists differ in length");
  }
}

Eigen::Index power(int base, int exponent) {
  Eigen::Index p = 1;
  for (int k = 0; k < exponent; ++k) {
    p *= base;
    if (p > kMaxDimension) return kMaxDimension + 1;
  }
  return p;
}

// Largest per-mode truncation whose basis stays within kMaxDimension.
int largest_n_max(int modes) {
  int n = 2;
  while (power(n + 1, modes) <= kMaxDimension) ++n;
  return n;
}

}  // namespace

void FockConfig::validate() const {
  if (n_max < 2) throw Error(ErrorCode::InvalidState, "n_max must be at least 2");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidState, "tol must be positive");
  if (max_n_max < n_max) throw Error(ErrorCode::InvalidState, "max_n_max must be at least n_max");
}

FockBasis::FockBasis(int modes, int n_max) : modes_(modes), n_max_(n_max) {
  if (modes < 1 || n_max < 1) throw Error(ErrorCode::InvalidState, "empty Fock basis");
  dim_ = power(n_max, modes);
  if (dim_ > kMaxDimension) {
    throw Error(ErrorCode::DimensionLimit, std::to_string(n_max) + "^" + std::to_string(modes) +
                                               " basis states exceed the limit of " +
                                               std::to_string(kMaxDimension));
  }
}

Eigen::Index FockBasis::index(std::span<const int> occupation) const {
  Eigen::Index idx = 0;
  for (int n : occupation) idx = idx * n_max_ + n;
  return idx;
}

std::vector<int> FockBasis::occupation(Eigen::Index index) const {
  std::vector<int> occ(static_cast<std::size_t>(modes_));
  for (int j = modes_ - 1; j >= 0; --j) {
    occ[static_cast<std::size_t>(j)] = static_cast<int>(index % n_max_);
    index /= n_max_;
  }
  return occ;
}

CVector embed(const CVector& psi, const FockBasis& from, const FockBasis& to) {
  if (from.modes() != to.modes() || from.n_max() > to.n_max() || psi.size() != from.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot embed into a smaller basis");
  }
  CVector out = CVector::Zero(to.dim());
  for (Eigen::Index i = 0; i < from.dim(); ++i) out(to.index(from.occupation(i))) = psi(i);
  return out;
}

SparseC assemble(const std::vector<LadderTerm>& terms, const FockBasis& basis) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  std::vector<int> work;
  for (Eigen::Index col = 0; col < basis.dim(); ++col) {
    const std::vector<int> occ = basis.occupation(col);
    for (const LadderTerm& term : terms) {
      work = occ;
      double amplitude = 1.0;
      for (auto op = term.ops.rbegin(); op != term.ops.rend() && amplitude != 0.0; ++op) {
        int& n = work[static_cast<std::size_t>(op->mode)];
        if (op->create) {
          amplitude *= std::sqrt(static_cast<double>(n + 1));
          ++n;
        } else {
          amplitude *= std::sqrt(static_cast<double>(n));
          --n;
        }
      }
      if (amplitude == 0.0) continue;
      if (std::any_of(work.begin(), work.end(), [&](int n) { return n >= basis.n_max(); })) continue;
      triplets.emplace_back(basis.index(work), col, term.coefficient * amplitude);
    }
  }
  SparseC m(basis.dim(), basis.dim());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

double BogoliubovMap::commutator_defect() const {
  const Eigen::Index n = plus.rows();
  const RMatrix c1 = plus * plus.transpose() - minus * minus.transpose() - RMatrix::Identity(n, n);
  const RMatrix c2 = plus * minus.transpose() - minus * plus.transpose();
  return std::max(c1.cwiseAbs().maxCoeff(), c2.cwiseAbs().maxCoeff());
}

BogoliubovMap bogoliubov_map(const VibronicModel& model, int lambda) {
  const ElectronicState& s = model.state(lambda);
  const RVector& w0 = model.state(0).frequencies;
  const Eigen::Index n = model.modes();
  BogoliubovMap map{RMatrix(n, n), RMatrix(n, n), s.displacements};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double r = std::sqrt(s.frequencies(j) / w0(k));
      map.plus(j, k) = 0.5 * (r + 1.0 / r) * s.duschinsky(j, k);
      map.minus(j, k) = 0.5 * (r - 1.0 / r) * s.duschinsky(j, k);
    }
  }
  return map;
}

RMatrix hamiltonian_matrix(const VibronicModel& model, int lambda, const FockBasis& basis) {
  if (basis.modes() != model.modes()) throw Error(ErrorCode::DimensionMismatch, "basis and model modes differ");
  const BogoliubovMap map = bogoliubov_map(model, lambda);
  const RVector& omega = model.state(lambda).frequencies;
  const int n = model.modes();

  // b_j and b_j^dagger as lists of single-ladder (or identity) pieces.
  struct Piece {
    double coefficient;
    std::vector<Ladder> ops;
  };
  std::vector<LadderTerm> terms;
  double constant = 0.0;
  for (int j = 0; j < n; ++j) {
    std::vector<Piece> b;
    std::vector<Piece> bd;
    for (int k = 0; k < n; ++k) {
      b.push_back({map.plus(j, k), {{k, false}}});
      b.push_back({map.minus(j, k), {{k, true}}});
      bd.push_back({map.plus(j, k), {{k, true}}});
      bd.push_back({map.minus(j, k), {{k, false}}});
    }
    b.push_back({map.shift(j), {}});
    bd.push_back({map.shift(j), {}});
    for (const Piece& left : bd) {
      for (const Piece& right : b) {
        const double c = omega(j) * left.coefficient * right.coefficient;
        if (c == 0.0) continue;
        std::vector<Ladder> ops = left.ops;
        ops.insert(ops.end(), right.ops.begin(), right.ops.end());
        if (ops.empty()) {
          constant += c;
        } else {
          terms.push_back({c, std::move(ops)});
        }
      }
    }
    constant += 0.5 * omega(j);
  }
  terms.push_back({constant, {}});
  const RMatrix real = RMatrix(Eigen::SparseMatrix<double>(assemble(terms, basis).real()));
  return 0.5 * (real + real.transpose());
}

CMatrix build_hamiltonian(const VibronicModel& model, int lambda, const FockConfig& fock) {
  fock.validate();
  const FockBasis basis(model.modes(), fock.n_max);
  RMatrix h = hamiltonian_matrix(model, lambda, basis);
  const Eigen::SelfAdjointEigenSolver<RMatrix> solver(h, Eigen::EigenvaluesOnly);
  const double expected = 0.5 * model.state(lambda).frequencies.sum();
  const double lowest = solver.eigenvalues()(0);
  if (std::abs(lowest - expected) > 1e-6 * 2.0 * expected) {
    throw Error(ErrorCode::TruncationTooSmall,
                "lowest eigenvalue " + std::to_string(lowest) + " differs from " + std::to_string(expected) +
                    " at n_max=" + std::to_string(fock.n_max));
  }
  return h.cast<Complex>();
}

CVector apply_exponential(const SparseC& generator, const CVector& psi) {
  double norm1 = 0.0;
  for (Eigen::Index k = 0; k < generator.outerSize(); ++k) {
    double column = 0.0;
    for (SparseC::InnerIterator it(generator, k); it; ++it) column += std::abs(it.value());
    norm1 = std::max(norm1, column);
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(norm1)));
  const double h = 1.0 / steps;
  CVector v = psi;
  for (int s = 0; s < steps; ++s) {
    CVector term = v;
    CVector sum = v;
    const double scale = v.norm();
    for (int k = 1; k < 60; ++k) {
      term = (h / k) * (generator * term);
      sum += term;
      if (term.norm() <= 1e-17 * scale) break;
    }
    v = sum;
  }
  return v;
}

CVector apply_rotation(const CMatrix& phi, const CVector& psi, const FockBasis& basis) {
  std::vector<LadderTerm> terms;
  for (int j = 0; j < basis.modes(); ++j) {
    for (int k = 0; k < basis.modes(); ++k) {
      if (phi(j, k) != Complex{}) terms.push_back({kI * phi(j, k), {{j, true}, {k, false}}});
    }
  }
  return apply_exponential(assemble(terms, basis), psi);
}

CVector apply_displacement(const CVector& b, const CVector& psi, const FockBasis& basis) {
  std::vector<LadderTerm> terms;
  for (int j = 0; j < basis.modes(); ++j) {
    if (b(j) == Complex{}) continue;
    terms.push_back({b(j), {{j, true}}});
    terms.push_back({-std::conj(b(j)), {{j, false}}});
  }
  return apply_exponential(assemble(terms, basis), psi);
}

CVector apply_squeeze(const CMatrix& w, const CVector& psi, const FockBasis& basis) {
  std::vector<LadderTerm> terms;
  for (int j = 0; j < basis.modes(); ++j) {
    for (int k = 0; k < basis.modes(); ++k) {
      if (w(j, k) == Complex{}) continue;
      terms.push_back({0.5 * std::conj(w(j, k)), {{j, false}, {k, false}}});
      terms.push_back({-0.5 * w(j, k), {{j, true}, {k, true}}});
    }
  }
  return apply_exponential(assemble(terms, basis), psi);
}

CVector construct_state(const MultiModeState& state, const FockBasis& basis) {
  CVector psi = CVector::Zero(basis.dim());
  psi(0) = std::exp(kI * state.phase());
  psi = apply_squeeze(state.squeeze(), psi, basis);
  return apply_displacement(state.amplitudes(), psi, basis);
}

CVector fock_expansion(const MultiModeState& state, const FockBasis& basis) {
  const CMatrix& t = state.tangent();
  const CVector& a = state.amplitudes();
  const CVector gamma = a + t * a.conjugate();
  const RVector sigma = Eigen::JacobiSVD<CMatrix>(t).singularValues();
  double det_root = 1.0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) det_root *= std::pow(1.0 - sigma(k) * sigma(k), 0.25);
  const Complex exponent = -0.5 * (a.squaredNorm() + (a.conjugate().transpose() * t * a.conjugate())(0, 0));

  CVector h(basis.dim());
  h(0) = std::exp(kI * state.phase() + exponent) * det_root;
  const int n_modes = basis.modes();
  std::vector<int> occ;
  for (Eigen::Index i = 1; i < basis.dim(); ++i) {
    occ = basis.occupation(i);
    const int j = static_cast<int>(std::find_if(occ.begin(), occ.end(), [](int n) { return n > 0; }) - occ.begin());
    const double nj = occ[static_cast<std::size_t>(j)];
    --occ[static_cast<std::size_t>(j)];
    Complex value = gamma(j) * h(basis.index(occ));
    for (int k = 0; k < n_modes; ++k) {
      const int nk = occ[static_cast<std::size_t>(k)];
      if (nk == 0) continue;
      --occ[static_cast<std::size_t>(k)];
      value -= t(j, k) * std::sqrt(static_cast<double>(nk)) * h(basis.index(occ));
      ++occ[static_cast<std::size_t>(k)];
    }
    h(i) = value / std::sqrt(nj);
  }
  return h;
}

double fidelity(const CVector& a, const CVector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

OracleEngine::OracleEngine(const VibronicModel& model, int n_max)
    : model_(model),
      basis_(model.modes(), n_max),
      spectra_(static_cast<std::size_t>(model.electronic_states())),
      once_(std::make_unique<std::once_flag[]>(static_cast<std::size_t>(model.electronic_states()))) {}

const OracleEngine::Spectrum& OracleEngine::spectrum(int lambda) const {
  model_.check_index(lambda);
  const auto slot = static_cast<std::size_t>(lambda);
  std::call_once(once_[slot], [&] {
    const RMatrix h = hamiltonian_matrix(model_, lambda, basis_);
    // Undisplaced, unrotated states with ground frequencies are already
    // diagonal in this basis.
    const RVector d = h.diagonal();
    if ((h - RMatrix(d.asDiagonal())).cwiseAbs().maxCoeff() == 0.0) {
      spectra_[slot] = {d, RMatrix::Identity(h.rows(), h.cols())};
      return;
    }
    const Eigen::SelfAdjointEigenSolver<RMatrix> solver(h);
    spectra_[slot] = {solver.eigenvalues(), solver.eigenvectors()};
  });
  return spectra_[slot];
}

CVector OracleEngine::vacuum() const {
  CVector v = CVector::Zero(basis_.dim());
  v(0) = 1.0;
  return v;
}

CVector OracleEngine::propagate(const CVector& psi, int lambda, double t) const {
  if (psi.size() != basis_.dim()) throw Error(ErrorCode::DimensionMismatch, "vector does not match the basis");
  const Spectrum& s = spectrum(lambda);
  const RVector re = s.vectors.transpose() * psi.real();
  const RVector im = s.vectors.transpose() * psi.imag();
  CVector coeff(re.size());
  for (Eigen::Index k = 0; k < re.size(); ++k) {
    coeff(k) = std::exp(-kI * s.energies(k) * t) * Complex(re(k), im(k));
  }
  const RVector out_re = s.vectors * coeff.real();
  const RVector out_im = s.vectors * coeff.imag();
  CVector out(out_re.size());
  for (Eigen::Index k = 0; k < out.size(); ++k) out(k) = Complex(out_re(k), out_im(k));
  return out;
}

CVector OracleEngine::pathway_state(std::span<const int> lambdas, std::span<const double> times) const {
  check_pathway(lambdas, times);
  CVector psi = vacuum();
  for (std::size_t k = 0; k < lambdas.size(); ++k) psi = propagate(psi, lambdas[k], times[k]);
  return psi;
}

Complex OracleEngine::response(std::span<const int> lambdas, std::span<const double> times) const {
  const CVector psi = pathway_state(lambdas, times);
  const double total = std::accumulate(times.begin(), times.end(), 0.0);
  return std::exp(0.5 * kI * model_.ground_frequency_sum() * total) * psi(0);
}

double OracleEngine::ground_energy(int lambda) const { return spectrum(lambda).energies.minCoeff(); }

Oracle::Oracle(VibronicModel model, FockConfig fock) : model_(std::move(model)), fock_(fock) {
  fock_.validate();
  fock_.max_n_max = std::min(fock_.max_n_max, largest_n_max(model_.modes()));
  if (fock_.n_max > fock_.max_n_max) {
    throw Error(ErrorCode::DimensionLimit, "n_max=" + std::to_string(fock_.n_max) + " exceeds the basis limit for " +
                                               std::to_string(model_.modes()) + " modes");
  }
}

const OracleEngine& Oracle::engine(int n_max) {
  auto it = engines_.find(n_max);
  if (it == engines_.end()) it = engines_.emplace(n_max, std::make_unique<OracleEngine>(model_, n_max)).first;
  return *it->second;
}

OracleValue Oracle::response(std::span<const int> lambdas, std::span<const double> times) {
  int n = fock_.n_max;
  Complex previous = engine(n).response(lambdas, times);
  if (n == fock_.max_n_max) return {previous, n};
  while (n < fock_.max_n_max) {
    n = std::min(2 * n, fock_.max_n_max);
    const Complex current = engine(n).response(lambdas, times);
    if (std::abs(current - previous) < fock_.tol) return {current, n};
    previous = current;
  }
  throw Error(ErrorCode::NoConvergence,
              "response not converged to " + short_double(fock_.tol) + " at n_max=" + std::to_string(n));
}

OracleState Oracle::state(std::span<const int> lambdas, std::span<const double> times) {
  int n = fock_.n_max;
  CVector previous = engine(n).pathway_state(lambdas, times);
  if (n == fock_.max_n_max) return {previous, n};
  while (n < fock_.max_n_max) {
    const FockBasis from(model_.modes(), n);
    n = std::min(2 * n, fock_.max_n_max);
    const OracleEngine& e = engine(n);
    CVector current = e.pathway_state(lambdas, times);
    if ((current - embed(previous, from, e.basis())).norm() < fock_.tol) return {std::move(current), n};
    previous = std::move(current);
  }
  throw Error(ErrorCode::NoConvergence,
              "state not converged to " + short_double(fock_.tol) + " at n_max=" + std::to_string(n));
}

OracleValue oracle_response(const VibronicModel& model, std::span<const int> lambdas,
                            std::span<const double> times, const FockConfig& fock) {
  return Oracle(model, fock).response(lambdas, times);
}

OracleState oracle_state(const VibronicModel& model, std::span<const int> lambdas,
                         std::span<const double> times, const FockConfig& fock) {
  return Oracle(model, fock).state(lambdas, times);
}

}  // namespace respond::oracle
