#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enlab/core.hpp"

namespace enlab::reduction {

inline constexpr double kDefaultZeroTol = 1e-9;
inline constexpr double kDefaultGammaSig = 0.5;

/// Measurement scales ordered weak to strong. Reduction only ever moves
/// parameters toward weaker scales.
enum class Scale { nominal = 0, ordinal = 1, interval = 2, ratio = 3 };

/// One level weaker; nominal is the floor.
Scale weaker(Scale s);
bool is_weaker(Scale a, Scale b);  // a strictly weaker than b
const char* to_string(Scale s);
Scale scale_from_string(const std::string& name);

/// Per-parameter energy contribution of each scale. Any strictly decreasing
/// positive table satisfies the reduction laws; this default is a config
/// value, not a derived quantity.
struct ScaleEnergies {
  double ratio = 4.0;
  double interval = 3.0;
  double ordinal = 2.0;
  double nominal = 1.0;

  double at(Scale s) const;
  void validate() const;
};

struct Param {
  double value = 0.0;
  Scale scale = Scale::ratio;
};

struct StructElement {
  std::string id;
  std::map<std::string, Param> params;
};

/// Sequentially ordered structure with homogeneous parameter sets.
struct OrderedStructure {
  std::vector<StructElement> elements;

  void validate() const;
  std::vector<std::string> parameter_names() const;
};

/// Ordinal relation between consecutive critical points: gradient sign of
/// the reduction parameter plus the scale segment the run lives in.
struct RelationLabel {
  int sign = 0;
  int segment = 0;

  bool operator==(const RelationLabel&) const = default;
};

/// Statistical significance of a structural component: exact weight
/// w = n_true / n_total, the pruning threshold and the microstate exponent.
struct SignificanceStats {
  std::int64_t n_true = 1;
  std::int64_t n_total = 1;
  double gamma_sig = kDefaultGammaSig;
  double gamma_exp = 1.0;

  Rational w() const { return Rational(n_true, n_total); }
  double w_value() const { return boost::rational_cast<double>(w()); }
};

SignificanceStats structural_weight(std::int64_t observed_in,
                                    std::int64_t total_samples);

/// Scale segmentation: strictly increasing thresholds defining half-open
/// segments [Tr_j, Tr_j+1). Cyclic segmentations wrap modulo the period.
struct Segmentation {
  std::string parameter;
  std::vector<double> thresholds;
  bool cyclic = false;
  double period = 0.0;  // required when cyclic

  void validate() const;
};

using SegmentationSet = std::map<std::string, Segmentation>;

/// Critical point of a reduced chain. Parameters are demoted to qualitative
/// form: the segment index of the original value under the parameter's
/// segmentation (0 when unsegmented).
struct ReducedNode {
  std::string id;
  std::map<std::string, int> qual;
  std::map<std::string, Scale> scales;
  SignificanceStats stats;
};

struct ReducedLink {
  int from = 0;  // node indices
  int to = 0;
  std::string parameter;
  RelationLabel label;
  SignificanceStats stats;
};

/// Chain (or chain fragments, after pruning) of critical points.
struct ReducedStructure {
  std::string parameter;
  std::vector<ReducedNode> nodes;
  std::vector<ReducedLink> links;
};

/// Unit/connection energy bookkeeping with a per-scale breakdown; the
/// Lyapunov measure of the reduction pipeline.
struct EnergyLedger {
  double unit_energy = 0.0;
  double connection_energy = 0.0;
  double total = 0.0;
  std::map<Scale, double> per_level;
};

struct ReduceOptions {
  std::string parameter;  // empty selects the principal parameter
  SegmentationSet segmentations;
  double zero_tol = kDefaultZeroTol;
  double gamma_sig = kDefaultGammaSig;
  ScaleEnergies energies{};
};

/// Interval-scale comparison of consecutive parameter values; positive for
/// an increase.
double compare(double u_i, double u_next);

/// Ordinal gradient label: +1 increase, 0 constancy within tolerance,
/// -1 decrease.
int gradient_sign(double delta, double zero_tol = kDefaultZeroTol);

/// Gradient labels for all consecutive element pairs.
std::vector<int> relation_vector(const OrderedStructure& s,
                                 const std::string& parameter,
                                 double zero_tol = kDefaultZeroTol);

/// Index j with Tr_j <= value < Tr_j+1. Cyclic segmentations wrap; in a
/// non-cyclic one, values below the lowest threshold are a domain error and
/// values past the last threshold fall into the final open segment.
int segment_index(double value, const Segmentation& seg);

/// Structural-parametric reduction: compresses every maximal run of equal
/// gradient sign within one scale segment down to its two endpoint critical
/// points joined by one labeled relation. Interior critical points are
/// shared between adjacent runs.
ReducedStructure sp_reduce(const OrderedStructure& s, const ReduceOptions& opts);

/// Reduction of an already reduced chain: merges adjacent links carrying
/// identical labels. A freshly reduced chain has none, so this is the
/// identity on sp_reduce output.
ReducedStructure sp_reduce(const ReducedStructure& s);

/// Parametric reduction to a strictly weaker scale, one level at a time:
/// ratio values become differences from the first element (origin),
/// interval values become gradient-sign labels, ordinal values become
/// presence labels.
OrderedStructure param_reduce(const OrderedStructure& s, Scale target_level);
ReducedStructure param_reduce(const ReducedStructure& s, Scale target_level);

EnergyLedger structure_energy(const OrderedStructure& s,
                              const ScaleEnergies& energies = {});
EnergyLedger structure_energy(const ReducedStructure& s,
                              const ScaleEnergies& energies = {});

struct PruneResult {
  ReducedStructure structure;
  bool emptied = false;  // warning: pruning removed everything
  int removed_nodes = 0;
  int removed_links = 0;
  int merged_links = 0;
};

/// Structural reduction: drops every node and link with w < gamma_sig.
/// A chain heals across a removed interior node only when the flanking
/// links carry identical labels; otherwise it splits.
PruneResult structural_prune(const ReducedStructure& s, double gamma_sig);

/// Principal parameter: the candidate with the highest mean link weight,
/// ties resolved by name order.
std::string principal_parameter(
    const std::map<std::string, double>& mean_link_weight);

/// Full reduction pipeline R_w . R_sp . R_u,c. Asserts the Lyapunov
/// property: the output ledger total never exceeds the input's, strictly
/// smaller whenever elements were dropped or scales demoted.
ReducedStructure composite_reduce(const OrderedStructure& s,
                                  const ReduceOptions& opts);

/// S(w) = k_B ln(omega0) + k_B gamma_exp ln(w); strictly increasing in w.
double entropy_of_w(const SignificanceStats& stats, std::uint64_t omega0,
                    const PhysicalConstants& consts = {});

/// E(w) = e0 - T S(w); strictly decreasing in w.
double energy_vs_w(const SignificanceStats& stats, double e0,
                   double temperature, std::uint64_t omega0,
                   const PhysicalConstants& consts = {});

/// Closed form dE/dw = -k_B T gamma_exp / w, exposed for slope testing.
double energy_vs_w_derivative(const SignificanceStats& stats,
                              double temperature,
                              const PhysicalConstants& consts = {});

}  // namespace enlab::reduction
