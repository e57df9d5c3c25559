#pragma once

#include <vector>

#include "respond/linalg.hpp"

namespace respond {

/// Vibrational parameters of one electronic state. Frequencies are in units of
/// the reference frequency, energies and rates in units of hbar * omega_ref.
struct ElectronicState {
  double energy = 0.0;
  RVector frequencies;
  RVector displacements;
  RMatrix duschinsky;
};

/// Harmonic vibronic model: electronic levels 0..N_e, each with its own mode
/// frequencies, ladder-operator displacements and Duschinsky rotation with
/// respect to the ground-state modes.
class VibronicModel {
 public:
  /// Throws InvalidModel on any violated invariant.
  VibronicModel(std::vector<ElectronicState> states, RMatrix dipoles, double gamma_deph = 0.0,
                double gamma_relax = 0.0, double omega_ref = 1.0);

  int electronic_states() const { return static_cast<int>(states_.size()); }
  int modes() const { return static_cast<int>(states_.front().frequencies.size()); }

  /// Throws IndexOutOfRange.
  const ElectronicState& state(int lambda) const;
  const std::vector<ElectronicState>& states() const { return states_; }
  const RMatrix& dipoles() const { return dipoles_; }
  double gamma_deph() const { return gamma_deph_; }
  double gamma_relax() const { return gamma_relax_; }
  double omega_ref() const { return omega_ref_; }

  /// Phi_lambda = -i ln U_lambda, computed once at construction.
  const CMatrix& rotation_generator(int lambda) const;
  /// e^{i Phi_lambda} (= U_lambda up to rounding).
  const CMatrix& rotation_unitary(int lambda) const;

  /// Sum over modes of the ground-state frequencies.
  double ground_frequency_sum() const { return states_.front().frequencies.sum(); }

  void check_index(int lambda) const;

 private:
  std::vector<ElectronicState> states_;
  RMatrix dipoles_;
  double gamma_deph_;
  double gamma_relax_;
  double omega_ref_;
  std::vector<CMatrix> generators_;
  std::vector<CMatrix> unitaries_;
};

/// Two-electronic-state model with an identity ground-state rotation, the
/// layout used by the figure presets and most tests.
VibronicModel two_level_model(const RVector& ground_frequencies, const RVector& excited_frequencies,
                              const RVector& excited_displacements, const RMatrix& excited_duschinsky,
                              double excited_energy = 0.0, double dipole = 1.0);

/// 2x2 Duschinsky matrix [[cos, sin], [-sin, cos]].
RMatrix duschinsky_2d(double angle);

}  // namespace respond
