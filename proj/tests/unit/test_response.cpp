#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "respond/error.hpp"
#include "respond/response.hpp"
#include "support/generators.hpp"

using namespace respond;
using namespace respond::testing;

namespace {

constexpr double kPi = std::numbers::pi;

VibronicModel single(double w1, double delta, double eps = 0.0, double mu = 1.0, double deph = 0.0,
                     double relax = 0.0) {
  RVector w0(1), w(1), d(1);
  w0 << 1.0;
  w << w1;
  d << delta;
  const VibronicModel base = two_level_model(w0, w, d, RMatrix::Identity(1, 1), eps, mu);
  return VibronicModel(base.states(), base.dipoles(), deph, relax);
}

const PathwaySpec kLinear{{1}, {}, false, "linear"};
const PathwaySpec kGsb{{1, 0, 1}, {}, false, "GSB"};

}  // namespace

TEST_CASE("sides parse and print") {
  const std::vector<Side> lrl = parse_sides("LRL");
  REQUIRE(lrl.size() == 3);
  CHECK(lrl[1] == Side::Right);
  CHECK(to_string(lrl) == "LRL");
  try {
    parse_sides("LXL");
    FAIL("expected UnsupportedSides");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedSides);
  }
}

TEST_CASE("time remapping") {
  const std::vector<double> t{1.0, 2.0, 3.0};
  const RemappedTimes same = remap_times(parse_sides("LLL"), t);
  CHECK(same.vibrational == t);
  CHECK(same.electronic == t);
  CHECK(remap_times(std::vector<Side>{}, t).vibrational == t);

  const RemappedTimes lrl = remap_times(parse_sides("LRL"), t);
  CHECK(lrl.vibrational == std::vector<double>{5.0, -3.0, -3.0});
  CHECK(lrl.electronic == std::vector<double>{5.0, -3.0, -3.0});

  try {
    remap_times(parse_sides("RLL"), t);
    FAIL("expected UnsupportedSides");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedSides);
  }
  // Raw signed times bypass the side table.
  const PathwaySpec raw{{1, 0, 1}, parse_sides("RRR"), true, ""};
  CHECK(remap_times(raw, t).vibrational == t);
}

TEST_CASE("electronic response") {
  const std::vector<double> pi{kPi};
  CHECK(std::abs(electronic_response(single(1.0, 0.0, 1.0), kLinear, pi) - Complex(0.0, -1.0)) < 1e-15);

  const VibronicModel m = single(1.0, 0.0, 0.7, 1.3);
  const std::vector<double> zero{0.0, 2.0, 0.0};
  CHECK(std::abs(electronic_response(m, kGsb, zero) - Complex(0.0, -std::pow(1.3, 4))) < 1e-14);

  // Bare and dressed forms agree without damping.
  const std::vector<double> t{0.4, 1.1, 2.5};
  const Complex expected = Complex(0.0, -std::pow(1.3, 4)) * std::exp(-kI * 0.7 * (0.4 + 2.5));
  CHECK(std::abs(bare_electronic_response(m, kGsb, t) - expected) < 1e-14);
  CHECK(std::abs(electronic_response(m, kGsb, t) - expected) < 1e-14);

  // Coherence damping over t1 (linear) and t1 + t3 (GSB).
  const VibronicModel damped = single(1.0, 0.0, 0.7, 1.3, 0.2, 0.1);
  const double rate = 0.2 + 0.05;
  const std::vector<double> t1{0.9};
  CHECK(std::abs(electronic_response(damped, kLinear, t1) -
                 bare_electronic_response(damped, kLinear, t1) * std::exp(-rate * 0.9)) < 1e-15);
  CHECK(std::abs(electronic_response(damped, kGsb, t) - expected * std::exp(-rate * (0.4 + 2.5))) < 1e-14);

  const PathwaySpec lrl{{1, 0, 1}, parse_sides("LRL"), false, ""};
  CHECK_NOTHROW(electronic_response(m, lrl, t));
  try {
    electronic_response(damped, lrl, t);
    FAIL("expected UnsupportedPathway");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedPathway);
  }
}

TEST_CASE("electronic energies enter relative to the ground state") {
  const VibronicModel m = single(1.0, 0.0, 1.0);
  std::vector<ElectronicState> shifted = m.states();
  for (ElectronicState& s : shifted) s.energy += 5.0;
  const VibronicModel n(shifted, m.dipoles());
  const std::vector<double> t{0.4, 1.1, 2.5};
  CHECK(std::abs(electronic_response(m, kGsb, t) - electronic_response(n, kGsb, t)) < 1e-14);
}

TEST_CASE("dipole prefactor") {
  RMatrix mu(3, 3);
  mu << 0.0, 1.2, 0.5, 1.2, 0.0, 0.9, 0.5, 0.9, 0.0;
  const VibronicModel base = single(1.0, 0.0);
  std::vector<ElectronicState> states = base.states();
  states.push_back(states[1]);
  const VibronicModel m(states, mu);
  const std::vector<int> path{1, 2, 1};
  // i^3 mu_10 mu_21 mu_12 mu_01
  CHECK(std::abs(dipole_prefactor(m, path) - Complex(0.0, -1.2 * 0.9 * 0.9 * 1.2)) < 1e-15);
}

TEST_CASE("vibrational response: trivial values") {
  Rng rng(41);
  const VibronicModel m = random_model(rng, 2);
  const std::vector<double> zero1{0.0};
  const std::vector<double> zero3{0.0, 0.0, 0.0};
  CHECK(std::abs(vibrational_response(m, kLinear, zero1) - 1.0) < 1e-14);
  CHECK(std::abs(vibrational_response(m, kGsb, zero3) - 1.0) < 1e-14);
}

TEST_CASE("displaced oscillator closed form") {
  const VibronicModel m = single(1.0, 1.0);
  for (double t = 0.0; t <= 2 * kPi; t += 0.05) {
    const std::vector<double> times{t};
    CHECK(std::abs(std::abs(vibrational_response(m, kLinear, times)) - std::exp(-(1.0 - std::cos(t)))) < 1e-12);
  }
  const std::vector<double> half{kPi};
  CHECK(std::abs(std::abs(vibrational_response(m, kLinear, half)) - std::exp(-2.0)) < 1e-12);
}

TEST_CASE("GSB response returns to full overlap after whole periods") {
  for (double w1 : {0.7, 1.0, 2.5, 5.0}) {
    const VibronicModel m = single(w1, 1.1);
    for (double t2 : {0.0, 1.5, 3.3}) {
      const std::vector<double> t{2 * kPi / w1, t2, 2 * kPi / w1};
      CHECK(std::abs(std::abs(vibrational_response(m, kGsb, t)) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("response modulus never exceeds one") {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const VibronicModel m = random_model(rng, 1 + static_cast<int>(trial % 3), 0.5, 3.0, 1.5);
    std::vector<double> t;
    for (int k = 0; k < 3; ++k) t.push_back(uniform(rng, -6.0, 6.0));
    CHECK(std::abs(vibrational_response(m, kGsb, t)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("linear response starts at one and decays") {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const VibronicModel m = single(uniform(rng, 0.5, 5.0), uniform(rng, 0.2, 1.5));
    const std::vector<double> zero{0.0};
    const std::vector<double> small{1e-4};
    CHECK(std::abs(vibrational_response(m, kLinear, zero) - 1.0) < 1e-15);
    CHECK(std::abs(vibrational_response(m, kLinear, small)) <= 1.0);
  }
}

TEST_CASE("zero mixing factorizes over modes") {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const VibronicModel m = random_model(rng, 2, 0.5, 2.0, 1.5, false);
    const auto mode = [&](int j) {
      RVector w0(1), w1(1), d(1);
      w0 << m.state(0).frequencies(j);
      w1 << m.state(1).frequencies(j);
      d << m.state(1).displacements(j);
      return two_level_model(w0, w1, d, RMatrix::Identity(1, 1));
    };
    const std::vector<double> t{uniform(rng, 0.0, 10.0)};
    const Complex joint = vibrational_response(m, kLinear, t);
    CHECK(std::abs(joint - vibrational_response(mode(0), kLinear, t) * vibrational_response(mode(1), kLinear, t)) <
          1e-10);
  }
}

TEST_CASE("(L,R,L) response equals the remapped operator string") {
  Rng rng(45);
  const PathwaySpec lrl{{1, 0, 1}, parse_sides("LRL"), false, ""};
  for (int trial = 0; trial < 20; ++trial) {
    const VibronicModel m = random_model(rng, 1 + trial % 2, 0.5, 3.0, 1.5);
    const double t1 = uniform(rng, 0.0, 5.0);
    const double t2 = uniform(rng, 0.0, 5.0);
    const double t3 = uniform(rng, 0.0, 5.0);
    const std::vector<double> t{t1, t2, t3};
    const std::vector<double> remapped{t2 + t3, -t3, -(t1 + t2)};
    CHECK(std::abs(vibrational_response(m, lrl, t) - vibrational_response(m, kGsb, remapped)) < 1e-10);

    // Independent route: the bra-ket operator string with the ground state
    // closing the loop. The ground propagations carry no phase in this
    // frame, so no correction is needed.
    const std::vector<int> lambdas{0, 1, 0, 1};
    const std::vector<double> string_times{t1, t2 + t3, -t3, -(t1 + t2)};
    CHECK(std::abs(vibrational_response(m, lrl, t) - operator_string_overlap(m, lambdas, string_times)) < 1e-10);
  }
}

TEST_CASE("total response is the product of both factors") {
  const VibronicModel m = single(1.7, 0.8, 0.9, 1.1, 0.05, 0.02);
  const std::vector<double> t{0.3, 1.2, 0.8};
  CHECK(std::abs(total_response(m, kGsb, t) - electronic_response(m, kGsb, t) * vibrational_response(m, kGsb, t)) <
        1e-15);
}

TEST_CASE("pathway validation") {
  const VibronicModel m = single(1.0, 1.0);
  const std::vector<double> t{1.0};
  const PathwaySpec bad{{2}, {}, false, ""};
  try {
    vibrational_response(m, bad, t);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }
  const std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(vibrational_response(m, kLinear, two), Error);
}

TEST_CASE("grid scan") {
  Rng rng(46);
  const VibronicModel m = random_model(rng, 2);
  const std::vector<double> axis1{0.0, 0.5, 1.0, 1.5};
  const std::vector<double> axis3{0.2, 0.9, 1.7};
  GridOptions options;
  options.diagnostics = true;
  options.threads = 1;
  const ResponseGrid serial = scan_grid(m, kGsb, {{0, axis1}, {2, axis3}}, {0.0, 0.8, 0.0}, options);
  REQUIRE(serial.size() == axis1.size() * axis3.size());
  REQUIRE(serial.diagnostics.size() == serial.size());

  // Row-major with t1 outermost; each point equals a direct call.
  for (std::size_t i = 0; i < axis1.size(); ++i) {
    for (std::size_t k = 0; k < axis3.size(); ++k) {
      const std::size_t index = i * axis3.size() + k;
      const std::vector<double> t{axis1[i], 0.8, axis3[k]};
      CHECK(serial.times_at(index) == t);
      CHECK(serial.values[index] == total_response(m, kGsb, t));
      CHECK(serial.vibrational[index] == vibrational_response(m, kGsb, t));
      const MultiModeState s = evaluate_vibrational(m, kGsb, t).state;
      CHECK(serial.diagnostics[index].amplitude_norm_sq == s.amplitude_norm_sq());
    }
  }

  options.threads = 4;
  const ResponseGrid parallel = scan_grid(m, kGsb, {{0, axis1}, {2, axis3}}, {0.0, 0.8, 0.0}, options);
  CHECK(parallel.values == serial.values);
  CHECK(parallel.vibrational == serial.vibrational);

  const ResponseGrid point = scan_grid(m, kLinear, {{0, {0.7}}}, {0.0});
  const std::vector<double> t{0.7};
  REQUIRE(point.size() == 1);
  CHECK(point.values[0] == total_response(m, kLinear, t));

  options.electronic = false;
  const ResponseGrid vib = scan_grid(m, kLinear, {{0, {0.7}}}, {0.0}, options);
  CHECK(vib.values[0] == vibrational_response(m, kLinear, t));
}
