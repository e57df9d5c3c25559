#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "respond/error.hpp"
#include "respond/fock_oracle.hpp"
#include "respond/propagation.hpp"
#include "respond/response.hpp"
#include "support/extrema.hpp"
#include "support/generators.hpp"

using namespace respond;
using namespace respond::testing;

namespace {

constexpr double kPi = std::numbers::pi;

VibronicModel single(double w0, double w1, double delta) {
  RVector a(1), b(1), d(1);
  a << w0;
  b << w1;
  d << delta;
  return two_level_model(a, b, d, RMatrix::Identity(1, 1));
}

bool same_state(const SingleModeState& a, const SingleModeState& b, double tol) {
  return std::abs(a.alpha() - b.alpha()) < tol && std::abs(a.tangent() - b.tangent()) < tol &&
         std::abs(std::exp(kI * a.phase()) - std::exp(kI * b.phase())) < tol;
}

bool same_state(const MultiModeState& a, const MultiModeState& b, double tol) {
  return max_abs(a.amplitudes() - b.amplitudes()) < tol && max_abs(a.tangent() - b.tangent()) < tol &&
         std::abs(std::exp(kI * a.phase()) - std::exp(kI * b.phase())) < tol;
}

}  // namespace

TEST_CASE("single-mode factorization structure") {
  const VibronicModel rigid = single(1.3, 1.3, 0.0);
  const SingleModeFactorization f = factorize_interval_single(rigid, 1, 0.7);
  REQUIRE(f.operations.size() == 1);
  CHECK(f.operations[0].kind == OperationKind::Rotate);
  CHECK(std::abs(f.operations[0].parameter - (-1.3 * 0.7)) < 1e-15);
  CHECK(std::abs(f.phase - (-0.5 * 1.3 * 0.7)) < 1e-15);

  const SingleModeFactorization g = factorize_interval_single(single(1.0, 2.0, 0.5), 1, 0.3);
  REQUIRE(g.operations.size() == 5);
  CHECK(g.operations.front().kind == OperationKind::Squeeze);
  CHECK(std::abs(g.operations.front().parameter - (-0.5 * std::log(2.0))) < 1e-15);
  CHECK(std::abs(g.operations.back().parameter - 0.5 * std::log(2.0)) < 1e-15);

  CHECK_THROWS_AS(factorize_interval_single(rigid, 2, 0.1), Error);
}

TEST_CASE("single interval: zero time is the identity") {
  Rng rng(21);
  const VibronicModel m = single(1.0, 2.7, 0.8);
  for (int trial = 0; trial < 10; ++trial) {
    const SingleModeState s = single_state(rng);
    const SingleModeState out = step_interval(s, m, 1, 0.0);
    CHECK(std::abs(out.alpha() - s.alpha()) < 1e-14);
    CHECK(std::abs(out.tangent() - s.tangent()) < 1e-14);
    CHECK(std::abs(out.phase() - s.phase()) < 1e-14);
  }
}

TEST_CASE("displaced oscillator traces a circle") {
  const double delta = 0.9;
  const VibronicModel m = single(1.0, 1.0, delta);
  for (double t = 0.0; t < 2 * kPi; t += 0.1) {
    const SingleModeState s = step_interval(SingleModeState(), m, 1, t);
    CHECK(std::abs(s.alpha() - delta * (std::exp(-kI * t) - 1.0)) < 1e-14);
    CHECK(std::abs(s.tangent()) < 1e-15);
  }
}

TEST_CASE("maximum squeezing equals the log frequency ratio") {
  for (double ratio : {2.0, 5.0, 10.0}) {
    const VibronicModel m = single(1.0, ratio, 1.0);
    const auto re_z = [&](double t) { return step_interval(SingleModeState(), m, 1, t).squeeze().real(); };
    const auto [t, value] = maximize(re_z, 0.0, 2 * kPi / ratio);
    CAPTURE(ratio);
    CHECK(std::abs(value - std::log(ratio)) < 1e-6);
  }
}

TEST_CASE("single interval matches the oracle propagator column") {
  Rng rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    const VibronicModel m = single(uniform(rng, 0.8, 1.2), uniform(rng, 0.6, 1.8), uniform(rng, -1.0, 1.0));
    const double t = uniform(rng, -3.0, 3.0);
    const oracle::OracleEngine engine(m, 80);
    const CVector expected = engine.propagate(engine.vacuum(), 1, t);
    const MultiModeState s = MultiModeState::from_single(step_interval(SingleModeState(), m, 1, t));
    const CVector got = oracle::fock_expansion(s, engine.basis());
    CHECK(max_abs(got - expected) < 1e-8);
  }
}

TEST_CASE("multimode interval reduces to single-mode steps without mixing") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const VibronicModel m = random_model(rng, 3, 0.5, 2.0, 1.0, false);
    CVector a = complex_vector(rng, 3, 0.8);
    CMatrix t = CMatrix::Zero(3, 3);
    double phase = 0.0;
    std::vector<SingleModeState> modes;
    for (int j = 0; j < 3; ++j) {
      modes.emplace_back(a(j), complex_in_disk(rng, 0.5), 0.0);
      t(j, j) = modes.back().tangent();
    }
    const double time = uniform(rng, -4.0, 4.0);
    const MultiModeState out = step_interval(MultiModeState(a, t, 0.0), m, 1, time);
    for (int j = 0; j < 3; ++j) {
      const SingleModeState s = step_interval(modes[static_cast<std::size_t>(j)], m, 1, time, j);
      CHECK(std::abs(out.amplitudes()(j) - s.alpha()) < 1e-12);
      CHECK(std::abs(out.tangent()(j, j) - s.tangent()) < 1e-12);
      phase += s.phase();
    }
    CHECK(std::abs(std::exp(kI * out.phase()) - std::exp(kI * phase)) < 1e-12);
    CHECK(max_abs(out.tangent() - CMatrix(out.tangent().diagonal().asDiagonal())) < 1e-12);
  }
}

TEST_CASE("multimode interval: zero time is the identity") {
  Rng rng(24);
  const VibronicModel m = random_model(rng, 2);
  const MultiModeState s = multi_state(rng, 2);
  CHECK(same_state(step_interval(s, m, 1, 0.0), s, 1e-12));
  CHECK(factorize_interval(m, 1, 0.5).operations.size() == 9);
}

TEST_CASE("two-mode vacuum propagation matches the oracle") {
  // Unit ground frequencies and mild distortions keep 24 levels per mode
  // converged well below the tolerance.
  Rng rng(25);
  for (int trial = 0; trial < 3; ++trial) {
    RVector w1(2), d(2);
    w1 << uniform(rng, 0.8, 1.25), uniform(rng, 0.8, 1.25);
    d << uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5);
    const VibronicModel m = two_level_model(RVector::Ones(2), w1, d, rotation_matrix(rng, 2));
    const double t = uniform(rng, 0.0, 4.0);
    const oracle::OracleEngine engine(m, 24);
    const CVector expected = engine.propagate(engine.vacuum(), 1, t);
    const CVector got = oracle::fock_expansion(step_interval(MultiModeState::vacuum(2), m, 1, t), engine.basis());
    CHECK(max_abs(got - expected) < 1e-7);
  }
}

TEST_CASE("pathway propagation") {
  Rng rng(26);
  const VibronicModel m = random_model(rng, 2);
  const MultiModeState s = multi_state(rng, 2);
  const std::vector<int> one{1};
  const std::vector<double> zero{0.0};
  CHECK(same_state(propagate_pathway(m, one, zero, s), s, 1e-12));

  // Forward then backward in the same state returns the input.
  const std::vector<int> there_and_back{1, 1};
  const std::vector<double> times{1.7, -1.7};
  CHECK(same_state(propagate_pathway(m, there_and_back, times, s), s, 1e-11));

  const VibronicModel sm = single(1.0, 2.5, 1.2);
  const double period = 2 * kPi / 2.5;
  const std::vector<int> gsb{1, 0, 1};
  for (double t2 : {0.0, 0.4, 2.9}) {
    const std::vector<double> t{period, t2, period};
    CHECK(std::abs(std::abs(vacuum_overlap(propagate_pathway(sm, gsb, t, MultiModeState::vacuum(1)))) - 1.0) <
          1e-12);
  }

  const std::vector<double> short_times{0.1};
  CHECK_THROWS_AS(propagate_pathway(m, gsb, short_times, s), Error);
}

TEST_CASE("random pathways match the oracle") {
  Rng rng(27);
  for (int trial = 0; trial < 6; ++trial) {
    const VibronicModel m = single(1.0, uniform(rng, 0.6, 1.8), uniform(rng, -1.0, 1.0));
    const std::vector<int> lambdas{1, 0, 1, 0};
    std::vector<double> times;
    for (int k = 0; k < 4; ++k) times.push_back(uniform(rng, -3.0, 3.0));
    const oracle::OracleEngine engine(m, 120);
    const CVector expected = engine.pathway_state(lambdas, times);
    const CVector got =
        oracle::fock_expansion(propagate_pathway(m, lambdas, times, MultiModeState::vacuum(1)), engine.basis());
    CHECK(max_abs(got - expected) < 1e-7);
  }
}

TEST_CASE("general initial state") {
  Rng rng(28);
  const VibronicModel m = single(1.0, 1.6, 0.7);
  const PathwaySpec gsb{{1, 0, 1}, {}, false, ""};
  const std::vector<double> times{0.8, 1.1, 2.3};
  CHECK(std::abs(vibrational_response(m, gsb, times, CVector::Zero(1), CMatrix::Zero(1, 1)) -
                 vibrational_response(m, gsb, times)) < 1e-12);

  // Coherent state in an undisplaced, unshifted potential: a pure phase.
  const VibronicModel flat = single(1.0, 1.0, 0.0);
  const CVector a0 = CVector::Constant(1, Complex(0.8, -0.3));
  CHECK(std::abs(std::abs(vibrational_response(flat, gsb, times, a0, CMatrix::Zero(1, 1))) - 1.0) < 1e-12);

  for (int trial = 0; trial < 5; ++trial) {
    const MultiModeState initial = multi_state(rng, 1, 0.8, 0.4).with_phase(0.0);
    std::vector<double> t;
    for (int k = 0; k < 3; ++k) t.push_back(uniform(rng, 0.0, 3.0));
    const oracle::OracleEngine engine(m, 100);
    const CVector psi0 = oracle::fock_expansion(initial, engine.basis());
    CVector psi = psi0;
    for (int k = 0; k < 3; ++k) psi = engine.propagate(psi, gsb.lambdas[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(k)]);
    psi = engine.propagate(psi, 0, -(t[0] + t[1] + t[2]));
    const Complex expected = psi0.dot(psi);
    const Complex got = vibrational_response(m, gsb, t, initial.amplitudes(), initial.tangent());
    CHECK(std::abs(got - expected) < 1e-6);
  }
}

TEST_CASE("single interval is periodic in the excited-state period") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const double w1 = uniform(rng, 0.5, 5.0);
    const VibronicModel m = single(1.0, w1, uniform(rng, -1.5, 1.5));
    const double t = uniform(rng, 0.0, 3.0);
    const SingleModeState a = step_interval(SingleModeState(), m, 1, t);
    const SingleModeState b = step_interval(SingleModeState(), m, 1, t + 2 * kPi / w1);
    CHECK(std::abs(a.alpha() - b.alpha()) < 1e-9);
    CHECK(std::abs(a.tangent() - b.tangent()) < 1e-9);
  }
}

TEST_CASE("trajectory depends only on the frequency ratio and displacement") {
  Rng rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const double ratio = uniform(rng, 0.5, 5.0);
    const double delta = uniform(rng, -1.5, 1.5);
    const double c = uniform(rng, 0.3, 3.0);
    const double t = uniform(rng, 0.0, 6.0);
    const SingleModeState a = step_interval(SingleModeState(), single(1.0, ratio, delta), 1, t);
    const SingleModeState b = step_interval(SingleModeState(), single(c, c * ratio, delta), 1, t / c);
    CHECK(std::abs(a.alpha() - b.alpha()) < 1e-12);
    CHECK(std::abs(a.tangent() - b.tangent()) < 1e-12);
  }
}

TEST_CASE("equal frequencies never squeeze") {
  Rng rng(31);
  const VibronicModel m = single(1.4, 1.4, 1.1);
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(std::abs(step_interval(SingleModeState(), m, 1, uniform(rng, -10.0, 10.0)).tangent()) < 1e-15);
  }
}
