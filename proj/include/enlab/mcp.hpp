#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "enlab/core.hpp"

namespace enlab::mcp {

/// Exhaustive-enumeration bound: census walks all 2^N input combinations.
inline constexpr int kMaxEnumerationInputs = 24;

/// Threshold unit with binary inputs, weights in [-1, +1] (pseudo-energy
/// contributions) and a strict activation threshold Q. Immutable after
/// construction; training returns a new neuron.
struct McpNeuron {
  McpNeuron(Eigen::VectorXd w, double q);

  int input_count() const { return static_cast<int>(weights.size()); }

  Eigen::VectorXd weights;
  double threshold;
};

/// Split of the membrane potential into excitatory and inhibitory parts.
/// v_total is defined as v_plus + v_minus, summed in input-index order, so
/// every consumer of the split makes bit-identical activation decisions.
struct PotentialSplit {
  double v_plus = 0.0;
  double v_minus = 0.0;
  double v_total = 0.0;
};

/// Counts of activating / non-activating input combinations under the
/// uniform measure over all 2^N microstates. p_act is exact.
struct MicrostateCensus {
  int n = 0;
  std::int64_t omega_act = 0;
  std::int64_t omega_nonact = 0;
  Rational p_act{0, 1};
};

/// One inhibitory-sum group of the conditional activation decomposition.
struct ActivationGroup {
  double v_minus = 0.0;           // shared inhibitory sum of the group
  std::int64_t microstates = 0;   // group size
  std::int64_t activating = 0;    // members exceeding the effective threshold
  Rational probability{0, 1};     // P(V-) under the uniform measure
  Rational conditional{0, 1};     // P(activate | V-)
};

/// Grouped conditional activation probability. total equals the census
/// p_act exactly (same per-microstate decisions, regrouped).
struct ConditionalActivation {
  std::vector<ActivationGroup> groups;
  Rational total{0, 1};
};

/// Informational and thermodynamic entropy figures for the two macrostates.
/// s_act / s_nonact are absent when the corresponding macrostate has no
/// microstates (log divergence).
struct EntropyReport {
  double h_bits = 0.0;
  std::optional<double> s_act;
  std::optional<double> s_nonact;
};

/// Output-energy split into structured and unstructured (dissipative) parts.
struct GibbsReport {
  double e_total = 0.0;
  double e_str = 0.0;
  double e_unstr = 0.0;
  double s_total = 0.0;
};

struct LabeledInput {
  Eigen::VectorXi x;
  int label = 0;
};

struct TrainingTrace {
  int epochs = 0;
  std::vector<int> error_history;
  std::int64_t effective_set_size = 0;
  std::vector<MicrostateCensus> census_history;
  std::vector<double> entropy_history;
};

struct TrainingResult {
  McpNeuron neuron;
  TrainingTrace trace;
};

/// V+ / V- / V for one binary input vector.
PotentialSplit activation_potential(const McpNeuron& neuron,
                                    const Eigen::VectorXi& x);

/// Sum of the negative weights: the depth of the potential well at rest.
double resting_potential(const McpNeuron& neuron);

/// Heaviside response with the strict rule V > Q; V = Q yields 0.
int fire(const McpNeuron& neuron, const Eigen::VectorXi& x);

/// Exhaustive census over all 2^N microstates.
MicrostateCensus microstate_census(const McpNeuron& neuron);

/// Census regrouped by inhibitory sum; exact rational bookkeeping.
ConditionalActivation conditional_activation(const McpNeuron& neuron);

/// Binary Shannon entropy of P_act plus the per-macrostate thermodynamic
/// entropies k_B (N ln 2 + ln P).
EntropyReport entropy_report(const McpNeuron& neuron,
                             const PhysicalConstants& consts = {});

/// Structured / unstructured output-energy decomposition. The unstructured
/// part charges every microstate |V-_rest| erased bits at Landauer cost;
/// the structured part counts one normalized output unit per activating
/// microstate.
GibbsReport gibbs_decomposition(const McpNeuron& neuron, double temperature,
                                const PhysicalConstants& consts = {});

/// Classic perceptron pass over a labeled dataset, weights clamped to the
/// model range [-1, +1], threshold trained as the bias term. Records census
/// and entropy after every epoch; stops at zero error or max_epochs.
TrainingResult train_perceptron(const McpNeuron& neuron,
                                const std::vector<LabeledInput>& dataset,
                                int max_epochs, double learning_rate = 0.1);

}  // namespace enlab::mcp
