#include "enlab/mcp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "enlab/entropy.hpp"

namespace enlab::mcp {

namespace {

void check_input(const McpNeuron& neuron, const Eigen::VectorXi& x) {
  if (x.size() != neuron.weights.size()) {
    throw ValidationError("mcp: input length does not match input count");
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) != 0 && x(i) != 1) {
      throw ValidationError("mcp: inputs must be binary");
    }
  }
}

void check_enumerable(const McpNeuron& neuron) {
  if (neuron.input_count() > kMaxEnumerationInputs) {
    throw CapacityError("mcp: input count exceeds the exhaustive enumeration bound");
  }
}

// Potential split for the microstate encoded in the low N bits of mask.
// Summation runs in ascending input-index order for both signs, so census,
// conditional grouping and fire() agree bit-for-bit.
PotentialSplit potential_at(const McpNeuron& neuron, std::uint32_t mask) {
  PotentialSplit split;
  for (int i = 0; i < neuron.input_count(); ++i) {
    if ((mask >> i) & 1u) {
      const double w = neuron.weights(i);
      if (w > 0.0) {
        split.v_plus += w;
      } else if (w < 0.0) {
        split.v_minus += w;
      }
    }
  }
  split.v_total = split.v_plus + split.v_minus;
  return split;
}

bool activates(const McpNeuron& neuron, const PotentialSplit& split) {
  return split.v_total > neuron.threshold;
}

double binary_entropy_bits(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace

McpNeuron::McpNeuron(Eigen::VectorXd w, double q)
    : weights(std::move(w)), threshold(q) {
  if (weights.size() < 1) {
    throw ValidationError("McpNeuron: at least one input required");
  }
  if (weights.size() > kMaxEnumerationInputs) {
    throw CapacityError("McpNeuron: input count exceeds the enumeration bound");
  }
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(std::abs(weights(i)) <= 1.0)) {
      throw ValidationError("McpNeuron: weights must lie in [-1, 1]");
    }
  }
}

PotentialSplit activation_potential(const McpNeuron& neuron,
                                    const Eigen::VectorXi& x) {
  check_input(neuron, x);
  std::uint32_t mask = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) == 1) mask |= (1u << i);
  }
  return potential_at(neuron, mask);
}

double resting_potential(const McpNeuron& neuron) {
  double rest = 0.0;
  for (Eigen::Index i = 0; i < neuron.weights.size(); ++i) {
    if (neuron.weights(i) < 0.0) rest += neuron.weights(i);
  }
  return rest;
}

int fire(const McpNeuron& neuron, const Eigen::VectorXi& x) {
  return activates(neuron, activation_potential(neuron, x)) ? 1 : 0;
}

MicrostateCensus microstate_census(const McpNeuron& neuron) {
  check_enumerable(neuron);
  const int n = neuron.input_count();
  const std::int64_t count = std::int64_t{1} << n;

  MicrostateCensus census;
  census.n = n;
  for (std::int64_t mask = 0; mask < count; ++mask) {
    if (activates(neuron, potential_at(neuron, static_cast<std::uint32_t>(mask)))) {
      ++census.omega_act;
    }
  }
  census.omega_nonact = count - census.omega_act;
  census.p_act = Rational(census.omega_act, count);
  return census;
}

ConditionalActivation conditional_activation(const McpNeuron& neuron) {
  check_enumerable(neuron);
  const int n = neuron.input_count();
  const std::int64_t count = std::int64_t{1} << n;

  struct GroupCounts {
    std::int64_t microstates = 0;
    std::int64_t activating = 0;
  };
  std::map<double, GroupCounts> by_inhibition;
  for (std::int64_t mask = 0; mask < count; ++mask) {
    const PotentialSplit split =
        potential_at(neuron, static_cast<std::uint32_t>(mask));
    GroupCounts& group = by_inhibition[split.v_minus];
    ++group.microstates;
    if (activates(neuron, split)) ++group.activating;
  }

  ConditionalActivation result;
  result.total = Rational(0, 1);
  for (const auto& [v_minus, counts] : by_inhibition) {
    ActivationGroup group;
    group.v_minus = v_minus;
    group.microstates = counts.microstates;
    group.activating = counts.activating;
    group.probability = Rational(counts.microstates, count);
    group.conditional = Rational(counts.activating, counts.microstates);
    result.total += group.probability * group.conditional;
    result.groups.push_back(group);
  }
  return result;
}

EntropyReport entropy_report(const McpNeuron& neuron,
                             const PhysicalConstants& consts) {
  detail::check_constants(consts);
  const MicrostateCensus census = microstate_census(neuron);
  const double p_act = boost::rational_cast<double>(census.p_act);

  EntropyReport report;
  report.h_bits = binary_entropy_bits(p_act);
  const double n_ln2 = census.n * std::numbers::ln2_v<double>;
  if (census.omega_act > 0) {
    report.s_act = consts.k_b * (n_ln2 + std::log(p_act));
  }
  if (census.omega_nonact > 0) {
    report.s_nonact = consts.k_b * (n_ln2 + std::log(1.0 - p_act));
  }
  return report;
}

GibbsReport gibbs_decomposition(const McpNeuron& neuron, double temperature,
                                const PhysicalConstants& consts) {
  const MicrostateCensus census = microstate_census(neuron);
  const double microstates =
      static_cast<double>(std::int64_t{1} << census.n);
  const double well_depth = std::abs(resting_potential(neuron));

  GibbsReport report;
  report.e_unstr =
      microstates * well_depth * entropy::landauer_energy(temperature, consts);
  report.s_total =
      microstates * well_depth * consts.k_b * std::numbers::ln2_v<double>;
  report.e_str = static_cast<double>(census.omega_act);
  report.e_total = report.e_str + report.e_unstr;
  return report;
}

TrainingResult train_perceptron(const McpNeuron& neuron,
                                const std::vector<LabeledInput>& dataset,
                                int max_epochs, double learning_rate) {
  TrainingResult result{neuron, {}};
  if (dataset.empty()) {
    return result;
  }

  std::set<std::uint32_t> distinct_inputs;
  for (const auto& sample : dataset) {
    check_input(neuron, sample.x);
    if (sample.label != 0 && sample.label != 1) {
      throw ValidationError("train_perceptron: labels must be 0 or 1");
    }
    std::uint32_t mask = 0;
    for (Eigen::Index i = 0; i < sample.x.size(); ++i) {
      if (sample.x(i) == 1) mask |= (1u << i);
    }
    distinct_inputs.insert(mask);
  }
  result.trace.effective_set_size =
      static_cast<std::int64_t>(distinct_inputs.size());

  McpNeuron& current = result.neuron;
  for (int epoch = 0; epoch < max_epochs; ++epoch) {
    for (const auto& sample : dataset) {
      const int error = sample.label - fire(current, sample.x);
      if (error == 0) continue;
      for (Eigen::Index i = 0; i < current.weights.size(); ++i) {
        if (sample.x(i) == 1) {
          current.weights(i) = std::clamp(
              current.weights(i) + learning_rate * error, -1.0, 1.0);
        }
      }
      current.threshold -= learning_rate * error;
    }

    int misclassified = 0;
    for (const auto& sample : dataset) {
      if (fire(current, sample.x) != sample.label) ++misclassified;
    }
    result.trace.epochs = epoch + 1;
    result.trace.error_history.push_back(misclassified);
    result.trace.census_history.push_back(microstate_census(current));
    result.trace.entropy_history.push_back(entropy_report(current).h_bits);
    if (misclassified == 0) break;
  }
  return result;
}

}  // namespace enlab::mcp
