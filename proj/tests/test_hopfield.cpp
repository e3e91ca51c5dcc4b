#include <doctest.h>

#include <cmath>
#include <vector>

#include "enlab/hopfield.hpp"
#include "enlab/rng.hpp"

using namespace enlab;
using namespace enlab::hopfield;

namespace {

SpinState spins(std::initializer_list<int> values) {
  SpinState s(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const int value : values) s(i++) = value;
  return s;
}

SpinState random_spins(Rng& rng, int n) {
  SpinState s(n);
  for (int i = 0; i < n; ++i) s(i) = rng.uniform01() < 0.5 ? -1 : 1;
  return s;
}

}  // namespace

TEST_CASE("hebbian weights follow the pattern correlations") {
  const HopfieldNet empty = hebbian_weights({}, 3);
  CHECK(empty.weights.isZero(0.0));

  const HopfieldNet single = hebbian_weights({spins({1, -1, 1})}, 3);
  CHECK(single.weights(0, 1) == doctest::Approx(-1.0 / 3.0));
  CHECK(single.weights(0, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(single.weights(1, 2) == doctest::Approx(-1.0 / 3.0));
  CHECK(single.weights(1, 0) == single.weights(0, 1));
  CHECK(single.weights.diagonal().isZero(0.0));
  CHECK(single.thresholds.isZero(0.0));

  const HopfieldNet doubled =
      hebbian_weights({spins({1, -1, 1}), spins({1, -1, 1})}, 3);
  CHECK(doubled.weights(0, 1) == doctest::Approx(-2.0 / 3.0));

  CHECK_THROWS_AS(hebbian_weights({spins({1, -1})}, 3), ValidationError);
  CHECK_THROWS_AS(hebbian_weights({spins({1, 0, 1})}, 3), ValidationError);
}

TEST_CASE("network construction validates symmetry and the diagonal") {
  Eigen::MatrixXd asymmetric(2, 2);
  asymmetric << 0, 1, 2, 0;
  CHECK_THROWS_AS(HopfieldNet(asymmetric, Eigen::VectorXd::Zero(2)),
                  ValidationError);
  Eigen::MatrixXd diag(2, 2);
  diag << 1, 0, 0, 1;
  CHECK_THROWS_AS(HopfieldNet(diag, Eigen::VectorXd::Zero(2)), ValidationError);
}

TEST_CASE("hopfield energy of stored and perturbed states") {
  const HopfieldNet zero(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(3));
  CHECK(hopfield_energy(zero, spins({1, 1, -1})) == 0.0);

  const HopfieldNet net = hebbian_weights({spins({1, -1, 1})}, 3);
  CHECK(hopfield_energy(net, spins({1, -1, 1})) == doctest::Approx(-1.0));
  CHECK(hopfield_energy(net, spins({1, 1, 1})) == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(hopfield_energy(net, spins({1, -1})), ValidationError);
}

TEST_CASE("energy floor is the theoretical resting limit") {
  const HopfieldNet zero(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(3));
  CHECK(energy_floor(zero) == 0.0);

  const HopfieldNet net = hebbian_weights({spins({1, -1, 1})}, 3);
  CHECK(energy_floor(net) == doctest::Approx(1.0 / 3.0));

  Eigen::MatrixXd uniform = Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0);
  uniform.diagonal().setZero();
  const HopfieldNet ferro(uniform, Eigen::VectorXd::Zero(3));
  CHECK(energy_floor(ferro) == doctest::Approx(-1.0));
  // with zero thresholds the floor is attained by the aligned state
  CHECK(hopfield_energy(ferro, spins({1, 1, 1})) ==
        doctest::Approx(energy_floor(ferro)));
}

TEST_CASE("recall fixes stored patterns and repairs corruption") {
  const SpinState pattern = spins({1, -1, 1});
  const HopfieldNet net = hebbian_weights({pattern}, 3);

  const RecallTrace at_pattern = recall(net, pattern);
  CHECK(at_pattern.converged);
  CHECK(at_pattern.steps == 0);
  CHECK(at_pattern.states.back() == pattern);

  const RecallTrace repaired = recall(net, spins({1, 1, 1}));
  CHECK(repaired.converged);
  CHECK(repaired.states.back() == pattern);
  // the first flip happens at the second neuron, whose local field is -2/3
  REQUIRE(repaired.steps >= 1);
  CHECK(repaired.states[1] == pattern);
  CHECK(repaired.energies[1] - repaired.energies[0] ==
        doctest::Approx(-4.0 / 3.0));

  const SpinState negation = -pattern;
  const RecallTrace negated = recall(net, negation);
  CHECK(negated.steps == 0);
  CHECK(negated.states.back() == negation);

  const HopfieldNet zero(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(3));
  const RecallTrace inert = recall(net, pattern);
  CHECK(inert.steps == 0);
}

TEST_CASE("recall never climbs in energy and always terminates") {
  Rng rng(4242);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 25));
    const auto pattern_count = static_cast<std::size_t>(rng.uniform_int(1, 3));
    std::vector<SpinState> patterns;
    for (std::size_t k = 0; k < pattern_count; ++k) {
      patterns.push_back(random_spins(rng, n));
    }
    const HopfieldNet net = hebbian_weights(patterns, n);
    // with zero thresholds the floor figure is the all-(+1) state's energy
    CHECK(hopfield_energy(net, SpinState::Ones(n)) ==
          doctest::Approx(energy_floor(net)).epsilon(1e-12));
    for (int start = 0; start < 5; ++start) {
      const UpdateSchedule schedule =
          start % 2 ? UpdateSchedule::random : UpdateSchedule::sequential;
      const RecallTrace trace =
          recall(net, random_spins(rng, n), schedule, 200, rng.next_u64());
      REQUIRE(trace.converged);
      // every recorded step is a flip against a resolved nonzero field, so
      // the drop is strict, not merely non-increasing
      for (std::size_t k = 1; k < trace.energies.size(); ++k) {
        REQUIRE(trace.energies[k] < trace.energies[k - 1]);
      }
    }
  }
}

TEST_CASE("single-pattern nets repair any 1-bit corruption") {
  Rng rng(777);
  int recovered = 0;
  int trials = 0;
  for (int round = 0; round < 30; ++round) {
    const int n = static_cast<int>(rng.uniform_int(5, 25));
    const SpinState pattern = random_spins(rng, n);
    const HopfieldNet net = hebbian_weights({pattern}, n);
    for (int bit = 0; bit < n; ++bit) {
      SpinState corrupted = pattern;
      corrupted(bit) = -corrupted(bit);
      const RecallTrace trace = recall(net, corrupted);
      ++trials;
      if (trace.converged && trace.states.back() == pattern) ++recovered;
    }
  }
  CHECK(recovered == trials);
}

TEST_CASE("ising energy of small systems") {
  Eigen::MatrixXd j(2, 2);
  j << 0, 1, 1, 0;
  const IsingModel pair(j, Eigen::VectorXd::Zero(2), 1.0);
  CHECK(ising_energy(pair, spins({1, 1})) == doctest::Approx(-1.0));
  CHECK(ising_energy(pair, spins({1, -1})) == doctest::Approx(1.0));

  const IsingModel free(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2),
                        1.0);
  CHECK(ising_energy(free, spins({1, -1})) == 0.0);
  CHECK(ising_energy(free, spins({-1, -1})) == 0.0);

  CHECK_THROWS_AS(IsingModel(j, Eigen::VectorXd::Zero(2), 0.0),
                  ValidationError);
}

TEST_CASE("metropolis acceptance follows the Boltzmann factor") {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
  const IsingModel m(j, Eigen::VectorXd::Zero(2), 1.0);

  CHECK(metropolis_accept(0.0, m, 0.999));
  CHECK(metropolis_accept(-5.0, m, 0.999));
  const double boundary = std::exp(-2.0);
  CHECK(metropolis_accept(2.0, m, boundary - 1e-12));
  CHECK(!metropolis_accept(2.0, m, boundary));
  CHECK(!metropolis_accept(2.0, m, boundary + 1e-12));
}

TEST_CASE("empirical acceptance frequency matches exp(-dE/kT)") {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
  const IsingModel m(j, Eigen::VectorXd::Zero(2), 1.0);
  const double delta_e = 1.5;
  const double p = std::exp(-delta_e);
  const int draws = 100000;

  Rng rng(31337);
  int accepted = 0;
  for (int k = 0; k < draws; ++k) {
    if (metropolis_accept(delta_e, m, rng.uniform01())) ++accepted;
  }
  const double freq = static_cast<double>(accepted) / draws;
  const double standard_error = std::sqrt(p * (1.0 - p) / draws);
  CHECK(std::abs(freq - p) <= 3.0 * standard_error);
}

TEST_CASE("metropolis run echoes the initial state at zero sweeps") {
  Eigen::MatrixXd j = Eigen::MatrixXd::Constant(4, 4, 1.0);
  j.diagonal().setZero();
  const IsingModel m(j, Eigen::VectorXd::Zero(4), 1.0);
  const SpinState initial = spins({1, -1, 1, -1});
  const MetropolisRun run = metropolis_run(m, initial, 0, 9);
  CHECK(run.final_state == initial);
  CHECK(run.energies.size() == 1);
  CHECK(run.mean_abs_magnetization == doctest::Approx(0.0));
}

TEST_CASE("metropolis runs are deterministic per seed") {
  Eigen::MatrixXd j = Eigen::MatrixXd::Constant(6, 6, 1.0);
  j.diagonal().setZero();
  const IsingModel m(j, Eigen::VectorXd::Zero(6), 2.0);
  Rng rng(5);
  const SpinState initial = random_spins(rng, 6);
  const MetropolisRun a = metropolis_run(m, initial, 500, 42);
  const MetropolisRun b = metropolis_run(m, initial, 500, 42);
  CHECK(a.final_state == b.final_state);
  CHECK(a.energies == b.energies);
  const MetropolisRun c = metropolis_run(m, initial, 500, 43);
  CHECK(a.energies != c.energies);
}

TEST_CASE("ferromagnet orders at low temperature and melts at high") {
  const int n = 10;
  Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0);
  j.diagonal().setZero();

  Rng rng(88);
  const IsingModel cold(j, Eigen::VectorXd::Zero(n), 0.5);
  const MetropolisRun ordered =
      metropolis_run(cold, random_spins(rng, n), 2000, 11);
  CHECK(ordered.mean_abs_magnetization > 0.9);

  const IsingModel hot(j, Eigen::VectorXd::Zero(n), 100.0);
  const MetropolisRun melted =
      metropolis_run(hot, random_spins(rng, n), 2000, 12);
  CHECK(melted.mean_abs_magnetization < 0.35);
}
