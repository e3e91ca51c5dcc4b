#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "enlab/core.hpp"
#include "enlab/reduction.hpp"

namespace enlab::concepts {

using reduction::OrderedStructure;
using reduction::ReducedStructure;
using reduction::ReduceOptions;
using reduction::RelationLabel;
using reduction::Scale;
using reduction::SegmentationSet;
using reduction::SignificanceStats;

/// Exact-search bound for the edit-distance computation.
inline constexpr int kMaxDiversityNodes = 12;

/// Qualitative node content: parameter name -> segment label.
using NodeLabel = std::map<std::string, int>;

struct LinkLabel {
  std::string parameter;
  RelationLabel relation;

  bool operator==(const LinkLabel&) const = default;
};

/// A reduced structure flattened to its label content; the unit the
/// matching and edit-distance machinery works on.
struct LabeledChain {
  std::vector<NodeLabel> nodes;
  std::vector<LinkLabel> links;  // links[i] joins nodes[i] and nodes[i+1]

  bool operator==(const LabeledChain&) const = default;
};

/// General model container: labeled relations over arbitrary node subsets.
/// Reduced structures here are chains, so every edge has two endpoints;
/// the wider arity exists for future extension and no hyperedge-specific
/// algorithm is implemented against it.
struct LabeledHypergraph {
  std::vector<NodeLabel> nodes;
  std::vector<std::pair<std::vector<int>, LinkLabel>> edges;
};

/// Chain view of a reduced structure. Fails when the links do not form one
/// simple path over the nodes.
LabeledChain to_chain(const ReducedStructure& s);

/// Positionally aligned concept component. Positions index the chain from
/// its start; several variants may share a position (branches created by
/// label mismatches during training).
struct ConceptNode {
  int position = 0;
  NodeLabel label;
  SignificanceStats stats;
};

struct ConceptLink {
  int position = 0;  // joins position and position + 1
  LinkLabel label;
  SignificanceStats stats;
};

/// Internal model of one class: the attractor the training samples reduce
/// to, with per-component statistical weights.
struct ConceptGraph {
  std::string class_label;
  std::string parameter;
  std::vector<ConceptNode> nodes;
  std::vector<ConceptLink> links;
  std::int64_t sample_count = 0;
  double gamma_sig = reduction::kDefaultGammaSig;
  SegmentationSet segmentations;

  /// Highest-weight variant per position, walked while both a node and its
  /// onward link survive. Empty when pruning broke the chain at position 0.
  LabeledChain principal_chain() const;
};

enum class Verdict { Recognized, AssociativeInput, AssociativeConcept, Unrecognized };

const char* to_string(Verdict v);

struct InterpretationResult {
  Verdict verdict = Verdict::Unrecognized;
  /// Node correspondence (input index, concept index) when a mapping exists.
  std::vector<std::pair<int, int>> mapping;
  int diversity = 0;  // edit distance; 0 exactly when Recognized
};

struct Readout {
  double value = 0.0;
  enum class Kind { constant } kind = Kind::constant;
};

/// Detector configuration: external parameter name -> scale to attach.
/// The identity detector copies readings through unchanged.
struct DetectorConfig {
  std::map<std::string, Scale> parameters;
};

/// One external sequence record.
struct SequenceRecord {
  std::string id;
  std::optional<std::string> class_label;
  std::vector<std::map<std::string, double>> elements;
};

/// Measurement stage: maps an external record into an internal ordered
/// structure with scale levels attached.
OrderedStructure perceive(const SequenceRecord& record,
                          const DetectorConfig& detector);

/// Builds the class concept: reduces every sample, aligns the reduced
/// chains positionally, accumulates per-component weights, prunes below
/// gamma_sig. Deterministic given the sample order.
ConceptGraph train_concept(const std::vector<OrderedStructure>& samples,
                           const std::string& class_label,
                           const ReduceOptions& opts);

/// Reduces the input and matches it against the concept chain: exact label
/// equality, concept-in-input or input-in-concept contiguous containment,
/// otherwise unrecognized. Diversity is the exact edit distance in every
/// case.
InterpretationResult interpret(const OrderedStructure& input,
                               const ConceptGraph& con,
                               const ReduceOptions& opts);

/// Constant readout: the number of structural elements of the concept.
Readout readout(const ConceptGraph& con);

/// Winner-take-all over concept responses; ties go to the lowest id.
std::string wta(const std::vector<std::pair<std::string, double>>& responses);

/// Exact graph edit distance with unit costs (node/link insert, delete,
/// relabel), branch-and-bound over node assignments.
int diversity(const LabeledChain& a, const LabeledChain& b);
int diversity(const ReducedStructure& a, const ReducedStructure& b);
int diversity(const ConceptGraph& a, const ConceptGraph& b);

}  // namespace enlab::concepts
