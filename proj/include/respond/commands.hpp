#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "respond/error.hpp"
#include "respond/fock_oracle.hpp"
#include "respond/model.hpp"
#include "respond/response.hpp"

// Library side of the command-line verbs, so tests can drive them without a
// subprocess.
namespace respond::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3, kUnsupportedSides = 4, kToleranceBreach = 5 };

/// Schema and input errors map to kUsage, UnsupportedSides to its own code,
/// everything else to kNumerical.
int exit_code(ErrorCode code);

/// First-order scan over t in [0, tmax] (steps points, endpoint included).
struct LinearRequest {
  double tmax = 6.283185307179586;
  int steps = 201;
  int state = 1;       // excited state lambda_1
  bool total = false;  // multiply by the electronic factor
  int threads = 0;
};

/// Columns t, Re_R, Im_R, abs_R, then Re_alpha_j, Im_alpha_j, Re_z_j, Im_z_j
/// per mode (j from 1); z_j is the diagonal of the squeeze matrix.
void run_linear(const VibronicModel& model, const LinearRequest& request, std::ostream& out);

/// Third-order scan over (t1, t3) at fixed t2.
struct ThirdRequest {
  double t2 = 0.0;
  std::vector<int> lambdas{1, 0, 1};
  std::vector<Side> sides;  // empty = all left
  bool raw_times = false;
  int n1 = 100;
  int n3 = 100;
  double t1max = 0.0;  // <= 0: one period 2 pi / mean(omega_{lambda_1})
  double t3max = 0.0;  // <= 0: one period 2 pi / mean(omega_{lambda_3})
  bool periodic = false;  // exclude the upper endpoint of both axes
  bool total = false;
  int threads = 0;
};

/// Columns t1, t3, Re_R, Im_R, abs_R, abs_A_sq; t1 is the outer loop.
void run_third(const VibronicModel& model, const ThirdRequest& request, std::ostream& out);

/// n points on [0, max], endpoint included unless periodic.
std::vector<double> time_axis(double max, int n, bool periodic);

/// "200x150" -> {200, 150}. Throws SchemaError.
std::pair<int, int> parse_grid(const std::string& text);
/// "1,0,1" -> {1, 0, 1}. Throws SchemaError.
std::vector<int> parse_pathway(const std::string& text);

struct OracleCheckRequest {
  int trials = 50;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  // Zero fields pick the defaults: n_max 30, cap 120 (one mode) or 24, 24 (two
  // modes); the oracle's successive-doubling tolerance defaults to tol.
  oracle::FockConfig fock{0, 0.0, 0};
};

struct OracleCheckReport {
  std::string json;       // full report, deterministic for a given seed
  double max_abs_diff = 0.0;
  bool pass = true;
  std::string worst;      // one-line description of the worst trial
};

/// Random pathways (lambda) or (lambda, 0, lambda) with times drawn from
/// [0, 4 pi / mean(omega_lambda)], compared against the truncated-Fock oracle.
/// When doubling reaches the cap without converging, the capped value is used
/// and the entry is marked "converged": false.
OracleCheckReport run_oracle_check(const VibronicModel& model, const OracleCheckRequest& request);

}  // namespace respond::cli
