#include "enlab/hopfield.hpp"

#include <limits>
#include <cmath>
#include <numeric>
#include <utility>

#include "enlab/rng.hpp"

namespace enlab::hopfield {

namespace {

void check_coupling_matrix(const Eigen::MatrixXd& w, const char* what) {
  if (w.rows() != w.cols()) {
    throw ValidationError(std::string(what) + ": matrix must be square");
  }
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    if (w(i, i) != 0.0) {
      throw ValidationError(std::string(what) + ": diagonal must be zero");
    }
    for (Eigen::Index j = i + 1; j < w.cols(); ++j) {
      if (w(i, j) != w(j, i)) {
        throw ValidationError(std::string(what) + ": matrix must be symmetric");
      }
    }
  }
}

void check_dimensions(int net_size, const SpinState& s, const char* what) {
  if (s.size() != net_size) {
    throw ValidationError(std::string(what) + ": state size does not match");
  }
  check_spins(s);
}

double pair_energy(const Eigen::MatrixXd& w, const SpinState& s) {
  const Eigen::VectorXd spins = s.cast<double>();
  return -0.5 * spins.dot(w * spins);  // zero diagonal keeps i != j implicit
}

}  // namespace

void check_spins(const SpinState& s) {
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) != 1 && s(i) != -1) {
      throw ValidationError("spin state: entries must be -1 or +1");
    }
  }
}

HopfieldNet::HopfieldNet(Eigen::MatrixXd w, Eigen::VectorXd theta)
    : weights(std::move(w)), thresholds(std::move(theta)) {
  check_coupling_matrix(weights, "HopfieldNet");
  if (thresholds.size() != weights.rows()) {
    throw ValidationError("HopfieldNet: threshold count does not match size");
  }
}

IsingModel::IsingModel(Eigen::MatrixXd j, Eigen::VectorXd h,
                       double temperature_in, PhysicalConstants consts_in)
    : couplings(std::move(j)),
      fields(std::move(h)),
      temperature(temperature_in),
      consts(consts_in) {
  check_coupling_matrix(couplings, "IsingModel");
  if (fields.size() != couplings.rows()) {
    throw ValidationError("IsingModel: field count does not match size");
  }
  if (!(temperature > 0.0)) {
    throw ValidationError("IsingModel: temperature must be positive");
  }
  detail::check_constants(consts);
}

HopfieldNet hebbian_weights(const std::vector<SpinState>& patterns, int n) {
  if (n < 1) {
    throw ValidationError("hebbian_weights: size must be positive");
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const SpinState& pattern : patterns) {
    if (pattern.size() != n) {
      throw ValidationError("hebbian_weights: pattern length does not match");
    }
    check_spins(pattern);
    const Eigen::VectorXd x = pattern.cast<double>();
    w += (x * x.transpose()) / static_cast<double>(n);
  }
  w.diagonal().setZero();
  return HopfieldNet(std::move(w), Eigen::VectorXd::Zero(n));
}

double hopfield_energy(const HopfieldNet& net, const SpinState& s) {
  check_dimensions(net.size(), s, "hopfield_energy");
  return pair_energy(net.weights, s) - net.thresholds.dot(s.cast<double>());
}

double energy_floor(const HopfieldNet& net) {
  return -0.5 * net.weights.sum();
}

RecallTrace recall(const HopfieldNet& net, SpinState initial,
                   UpdateSchedule schedule, int max_sweeps,
                   std::uint64_t seed) {
  check_dimensions(net.size(), initial, "recall");
  const int n = net.size();

  RecallTrace trace;
  SpinState state = std::move(initial);
  trace.states.push_back(state);
  trace.energies.push_back(hopfield_energy(net, state));

  Rng rng = Rng::substream(seed, "hopfield-recall");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  // A mathematically zero local field can accumulate to a few ulp when the
  // weight terms do not cancel exactly; fields inside the summation error
  // bound count as zero so that the retain-on-zero rule stays monotone.
  Eigen::VectorXd field_tolerance(n);
  for (int i = 0; i < n; ++i) {
    field_tolerance(i) =
        static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
        (net.weights.row(i).cwiseAbs().sum() + std::abs(net.thresholds(i)));
  }

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (schedule == UpdateSchedule::random) {
      for (int i = n - 1; i > 0; --i) {
        std::swap(order[i], order[rng.uniform_int(0, i)]);
      }
    }
    bool flipped = false;
    for (const int i : order) {
      double field = -net.thresholds(i);
      for (int j = 0; j < n; ++j) {
        field += net.weights(i, j) * state(j);
      }
      if (std::abs(field) <= field_tolerance(i)) field = 0.0;
      const int next = field > 0.0 ? 1 : (field < 0.0 ? -1 : state(i));
      if (next != state(i)) {
        state(i) = next;
        flipped = true;
        ++trace.steps;
        trace.states.push_back(state);
        trace.energies.push_back(hopfield_energy(net, state));
      }
    }
    ++trace.sweeps;
    if (!flipped) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

double ising_energy(const IsingModel& m, const SpinState& s) {
  check_dimensions(m.size(), s, "ising_energy");
  return pair_energy(m.couplings, s) - m.fields.dot(s.cast<double>());
}

bool metropolis_accept(double delta_e, const IsingModel& m,
                       double uniform_draw) {
  if (delta_e <= 0.0) return true;
  return uniform_draw < std::exp(-delta_e / (m.consts.k_b * m.temperature));
}

MetropolisRun metropolis_run(const IsingModel& m, SpinState initial,
                             int sweeps, std::uint64_t seed) {
  check_dimensions(m.size(), initial, "metropolis_run");
  if (sweeps < 0) {
    throw ValidationError("metropolis_run: sweeps must be >= 0");
  }
  const int n = m.size();

  MetropolisRun run;
  SpinState state = std::move(initial);
  const auto record = [&] {
    run.energies.push_back(ising_energy(m, state));
    run.magnetizations.push_back(state.sum() / static_cast<double>(n));
  };
  record();

  Rng rng = Rng::substream(seed, "ising-metropolis");
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int attempt = 0; attempt < n; ++attempt) {
      const int i = static_cast<int>(rng.uniform_int(0, n - 1));
      double field = m.fields(i);
      for (int j = 0; j < n; ++j) {
        field += m.couplings(i, j) * state(j);
      }
      const double delta_e = 2.0 * state(i) * field;
      if (metropolis_accept(delta_e, m, rng.uniform01())) {
        state(i) = -state(i);
      }
    }
    record();
  }

  double abs_sum = 0.0;
  // Skip the pre-dynamics sample when sweeps were run, so the figure
  // reflects the sampled dynamics; with sweeps = 0 it is the initial state.
  const std::size_t first = run.magnetizations.size() > 1 ? 1 : 0;
  for (std::size_t k = first; k < run.magnetizations.size(); ++k) {
    abs_sum += std::abs(run.magnetizations[k]);
  }
  run.mean_abs_magnetization =
      abs_sum / static_cast<double>(run.magnetizations.size() - first);
  run.final_state = std::move(state);
  return run;
}

}  // namespace enlab::hopfield
