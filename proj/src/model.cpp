#include "respond/model.hpp"

#include <cmath>
#include <string>

#include "respond/error.hpp"

namespace respond {

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::InvalidModel, message); }

}  // namespace

VibronicModel::VibronicModel(std::vector<ElectronicState> states, RMatrix dipoles, double gamma_deph,
                             double gamma_relax, double omega_ref)
    : states_(std::move(states)),
      dipoles_(std::move(dipoles)),
      gamma_deph_(gamma_deph),
      gamma_relax_(gamma_relax),
      omega_ref_(omega_ref) {
  if (states_.empty()) invalid("at least one electronic state is required");
  const Eigen::Index n = states_.front().frequencies.size();
  if (n < 1) invalid("at least one vibrational mode is required");
  const Eigen::Index ne = static_cast<Eigen::Index>(states_.size());
  if (dipoles_.rows() != ne || dipoles_.cols() != ne) {
    invalid("dipole matrix must be " + std::to_string(ne) + "x" + std::to_string(ne));
  }
  if ((dipoles_ - dipoles_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    invalid("dipole matrix must be symmetric");
  }
  if (!(gamma_deph_ >= 0.0) || !(gamma_relax_ >= 0.0)) invalid("rates must be non-negative");
  if (!(omega_ref_ > 0.0)) invalid("omega_ref must be positive");

  for (std::size_t lambda = 0; lambda < states_.size(); ++lambda) {
    const ElectronicState& s = states_[lambda];
    const std::string where = "state " + std::to_string(lambda) + ": ";
    if (s.frequencies.size() != n || s.displacements.size() != n || s.duschinsky.rows() != n ||
        s.duschinsky.cols() != n) {
      invalid(where + "inconsistent number of modes");
    }
    if (!std::isfinite(s.energy)) invalid(where + "energy must be finite");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(s.frequencies(j) > 0.0) || !std::isfinite(s.frequencies(j))) {
        invalid(where + "frequencies must be positive");
      }
      if (!std::isfinite(s.displacements(j))) invalid(where + "displacements must be finite");
    }
    try {
      generators_.push_back(orthogonal_log(s.duschinsky));
      unitaries_.push_back(exp_i_hermitian(generators_.back()));
    } catch (const Error& e) {
      invalid(where + "Duschinsky matrix: " + e.what());
    }
  }
  const ElectronicState& ground = states_.front();
  if (ground.displacements.cwiseAbs().maxCoeff() != 0.0) invalid("ground state displacement must be zero");
  if ((ground.duschinsky - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12) {
    invalid("ground state Duschinsky matrix must be the identity");
  }
}

void VibronicModel::check_index(int lambda) const {
  if (lambda < 0 || lambda >= electronic_states()) {
    throw Error(ErrorCode::IndexOutOfRange, "electronic state index " + std::to_string(lambda) +
                                                " outside 0.." + std::to_string(electronic_states() - 1));
  }
}

const ElectronicState& VibronicModel::state(int lambda) const {
  check_index(lambda);
  return states_[static_cast<std::size_t>(lambda)];
}

const CMatrix& VibronicModel::rotation_generator(int lambda) const {
  check_index(lambda);
  return generators_[static_cast<std::size_t>(lambda)];
}

const CMatrix& VibronicModel::rotation_unitary(int lambda) const {
  check_index(lambda);
  return unitaries_[static_cast<std::size_t>(lambda)];
}

VibronicModel two_level_model(const RVector& ground_frequencies, const RVector& excited_frequencies,
                              const RVector& excited_displacements, const RMatrix& excited_duschinsky,
                              double excited_energy, double dipole) {
  const Eigen::Index n = ground_frequencies.size();
  ElectronicState ground{0.0, ground_frequencies, RVector::Zero(n), RMatrix::Identity(n, n)};
  ElectronicState excited{excited_energy, excited_frequencies, excited_displacements, excited_duschinsky};
  RMatrix mu(2, 2);
  mu << 0.0, dipole, dipole, 0.0;
  return VibronicModel({ground, excited}, mu);
}

RMatrix duschinsky_2d(double angle) {
  RMatrix u(2, 2);
  u << std::cos(angle), std::sin(angle), -std::sin(angle), std::cos(angle);
  return u;
}

}  // namespace respond
