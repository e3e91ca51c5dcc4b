#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "enlab/core.hpp"

namespace enlab::hopfield {

/// Bipolar state vector; every entry is -1 or +1.
using SpinState = Eigen::VectorXi;

void check_spins(const SpinState& s);

/// Symmetric zero-diagonal coupling matrix with per-neuron thresholds.
struct HopfieldNet {
  HopfieldNet(Eigen::MatrixXd w, Eigen::VectorXd theta);

  int size() const { return static_cast<int>(weights.rows()); }

  Eigen::MatrixXd weights;
  Eigen::VectorXd thresholds;
};

/// Spin system with symmetric couplings, external fields and a temperature.
struct IsingModel {
  IsingModel(Eigen::MatrixXd j, Eigen::VectorXd h, double temperature,
             PhysicalConstants consts = {});

  int size() const { return static_cast<int>(couplings.rows()); }

  Eigen::MatrixXd couplings;
  Eigen::VectorXd fields;
  double temperature;
  PhysicalConstants consts;
};

enum class UpdateSchedule { sequential, random };

/// Full recall trajectory: state and energy after every accepted flip,
/// starting from the initial state. Deterministic dynamics, so the energy
/// series never increases.
struct RecallTrace {
  std::vector<SpinState> states;
  std::vector<double> energies;
  bool converged = false;
  int steps = 0;   // accepted flips
  int sweeps = 0;  // completed full passes
};

/// Correlation-based weights w_ij = (1/n) sum_k x_i^k x_j^k, zero diagonal,
/// zero thresholds. An empty pattern list yields the zero matrix.
HopfieldNet hebbian_weights(const std::vector<SpinState>& patterns, int n);

/// E = -1/2 sum_{i != j} w_ij s_i s_j - sum_i theta_i s_i.
double hopfield_energy(const HopfieldNet& net, const SpinState& s);

/// Theoretical resting-state floor -1/2 sum_{i != j} w_ij; a limit figure,
/// not necessarily attained by any spin configuration.
double energy_floor(const HopfieldNet& net);

/// Asynchronous recall: s_i <- sign(sum_j w_ij s_j - theta_i) with sign(0)
/// retaining the previous spin. Converged means a full sweep with no flips;
/// the classical model has no halting rule of its own, so this detector is
/// an explicit engineering addition.
RecallTrace recall(const HopfieldNet& net, SpinState initial,
                   UpdateSchedule schedule = UpdateSchedule::sequential,
                   int max_sweeps = 100, std::uint64_t seed = 0);

/// H = -1/2 sum_{i != j} J_ij S_i S_j - sum_i h_i S_i.
double ising_energy(const IsingModel& m, const SpinState& s);

/// Metropolis rule: accept when delta_e <= 0, otherwise when the uniform
/// draw falls under exp(-delta_e / k_B T).
bool metropolis_accept(double delta_e, const IsingModel& m,
                       double uniform_draw);

struct MetropolisRun {
  SpinState final_state;
  std::vector<double> energies;        // sampled after each sweep (plus initial)
  std::vector<double> magnetizations;  // signed m = sum(s)/N per sample
  double mean_abs_magnetization = 0.0;
};

/// Seeded single-flip Metropolis; N flip attempts per sweep. Deterministic
/// given (seed, sweeps).
MetropolisRun metropolis_run(const IsingModel& m, SpinState initial,
                             int sweeps, std::uint64_t seed);

}  // namespace enlab::hopfield
