#include "enlab/concepts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace enlab::concepts {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Recognized:
      return "Recognized";
    case Verdict::AssociativeInput:
      return "AssociativeInput";
    case Verdict::AssociativeConcept:
      return "AssociativeConcept";
    case Verdict::Unrecognized:
    default:
      return "Unrecognized";
  }
}

LabeledChain to_chain(const ReducedStructure& s) {
  LabeledChain chain;
  std::vector<reduction::ReducedLink> links = s.links;
  std::sort(links.begin(), links.end(),
            [](const auto& a, const auto& b) { return a.from < b.from; });
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (links[i].from != static_cast<int>(i) ||
        links[i].to != static_cast<int>(i) + 1) {
      throw ValidationError("to_chain: links do not form a single chain");
    }
  }
  if (!s.nodes.empty() && links.size() + 1 != s.nodes.size()) {
    throw ValidationError("to_chain: links do not cover the nodes");
  }
  for (const auto& node : s.nodes) {
    chain.nodes.push_back(node.qual);
  }
  for (const auto& link : links) {
    chain.links.push_back({link.parameter, link.label});
  }
  return chain;
}

LabeledChain ConceptGraph::principal_chain() const {
  LabeledChain chain;
  const auto best_node_at = [&](int position) -> const ConceptNode* {
    const ConceptNode* best = nullptr;
    for (const auto& node : nodes) {
      if (node.position != position) continue;
      if (best == nullptr || node.stats.w() > best->stats.w()) best = &node;
    }
    return best;
  };
  const auto best_link_at = [&](int position) -> const ConceptLink* {
    const ConceptLink* best = nullptr;
    for (const auto& link : links) {
      if (link.position != position) continue;
      if (best == nullptr || link.stats.w() > best->stats.w()) best = &link;
    }
    return best;
  };

  const ConceptNode* node = best_node_at(0);
  if (node == nullptr) return chain;
  chain.nodes.push_back(node->label);
  for (int position = 0;; ++position) {
    const ConceptLink* link = best_link_at(position);
    const ConceptNode* next = best_node_at(position + 1);
    if (link == nullptr || next == nullptr) break;
    chain.links.push_back(link->label);
    chain.nodes.push_back(next->label);
  }
  return chain;
}

OrderedStructure perceive(const SequenceRecord& record,
                          const DetectorConfig& detector) {
  if (record.elements.empty()) {
    throw ValidationError("perceive: record '" + record.id +
                          "' has no elements");
  }
  if (detector.parameters.empty()) {
    throw ValidationError("perceive: detector has no parameters");
  }

  OrderedStructure structure;
  for (std::size_t k = 0; k < record.elements.size(); ++k) {
    const auto& readings = record.elements[k];
    reduction::StructElement element;
    element.id = record.id + ":" + std::to_string(k);
    for (const auto& [name, value] : readings) {
      const auto it = detector.parameters.find(name);
      if (it == detector.parameters.end()) {
        throw ParseError("perceive: record '" + record.id +
                             "' carries unknown parameter '" + name + "'",
                         static_cast<std::int64_t>(k));
      }
      element.params[name] = {value, it->second};
    }
    for (const auto& [name, scale] : detector.parameters) {
      if (!readings.count(name)) {
        throw ParseError("perceive: record '" + record.id +
                             "' is missing parameter '" + name + "'",
                         static_cast<std::int64_t>(k));
      }
    }
    structure.elements.push_back(std::move(element));
  }
  structure.validate();
  return structure;
}

ConceptGraph train_concept(const std::vector<OrderedStructure>& samples,
                           const std::string& class_label,
                           const ReduceOptions& opts) {
  if (samples.empty()) {
    throw ValidationError("train_concept: no samples");
  }

  ConceptGraph con;
  con.class_label = class_label;
  con.sample_count = static_cast<std::int64_t>(samples.size());
  con.gamma_sig = opts.gamma_sig;
  con.segmentations = opts.segmentations;

  std::vector<ConceptNode> nodes;
  std::vector<ConceptLink> links;
  for (const OrderedStructure& sample : samples) {
    const ReducedStructure reduced = composite_reduce(sample, opts);
    const LabeledChain chain = to_chain(reduced);
    if (con.parameter.empty()) {
      con.parameter = reduced.parameter;
    } else if (con.parameter != reduced.parameter) {
      throw ValidationError("train_concept: samples reduce on different parameters");
    }
    for (std::size_t p = 0; p < chain.nodes.size(); ++p) {
      auto it = std::find_if(nodes.begin(), nodes.end(), [&](const auto& n) {
        return n.position == static_cast<int>(p) && n.label == chain.nodes[p];
      });
      if (it == nodes.end()) {
        nodes.push_back({static_cast<int>(p), chain.nodes[p],
                         reduction::structural_weight(1, con.sample_count)});
      } else {
        ++it->stats.n_true;
      }
    }
    for (std::size_t p = 0; p < chain.links.size(); ++p) {
      auto it = std::find_if(links.begin(), links.end(), [&](const auto& l) {
        return l.position == static_cast<int>(p) && l.label == chain.links[p];
      });
      if (it == links.end()) {
        links.push_back({static_cast<int>(p), chain.links[p],
                         reduction::structural_weight(1, con.sample_count)});
      } else {
        ++it->stats.n_true;
      }
    }
  }

  for (ConceptNode& node : nodes) {
    node.stats.n_total = con.sample_count;
    node.stats.gamma_sig = opts.gamma_sig;
    if (node.stats.w_value() >= opts.gamma_sig) con.nodes.push_back(node);
  }
  for (ConceptLink& link : links) {
    link.stats.n_total = con.sample_count;
    link.stats.gamma_sig = opts.gamma_sig;
    if (link.stats.w_value() >= opts.gamma_sig) con.links.push_back(link);
  }
  return con;
}

namespace {

// Window match of `needle` inside `haystack` (contiguous nodes and links).
std::optional<int> find_window(const LabeledChain& haystack,
                               const LabeledChain& needle) {
  if (needle.nodes.empty() || needle.nodes.size() > haystack.nodes.size()) {
    return std::nullopt;
  }
  const std::size_t n = haystack.nodes.size();
  const std::size_t m = needle.nodes.size();
  for (std::size_t offset = 0; offset + m <= n; ++offset) {
    bool match = true;
    for (std::size_t i = 0; i < m && match; ++i) {
      if (haystack.nodes[offset + i] != needle.nodes[i]) match = false;
    }
    for (std::size_t i = 0; i + 1 < m && match; ++i) {
      if (haystack.links[offset + i] != needle.links[i]) match = false;
    }
    if (match) return static_cast<int>(offset);
  }
  return std::nullopt;
}

std::set<std::string> label_parameters(const LabeledChain& chain) {
  std::set<std::string> names;
  for (const auto& node : chain.nodes) {
    for (const auto& [name, value] : node) names.insert(name);
  }
  return names;
}

}  // namespace

InterpretationResult interpret(const OrderedStructure& input,
                               const ConceptGraph& con,
                               const ReduceOptions& opts) {
  const LabeledChain concept_chain = con.principal_chain();
  if (concept_chain.nodes.empty()) {
    throw ValidationError("interpret: concept has no intact chain");
  }

  ReduceOptions staged = opts;
  staged.parameter = con.parameter;
  const LabeledChain input_chain = to_chain(composite_reduce(input, staged));

  if (label_parameters(input_chain) != label_parameters(concept_chain)) {
    throw ValidationError("interpret: incompatible parameter sets");
  }

  InterpretationResult result;
  result.diversity = diversity(input_chain, concept_chain);
  if (input_chain == concept_chain) {
    result.verdict = Verdict::Recognized;
    for (std::size_t i = 0; i < input_chain.nodes.size(); ++i) {
      result.mapping.emplace_back(static_cast<int>(i), static_cast<int>(i));
    }
    return result;
  }
  if (const auto offset = find_window(input_chain, concept_chain)) {
    result.verdict = Verdict::AssociativeInput;
    for (std::size_t i = 0; i < concept_chain.nodes.size(); ++i) {
      result.mapping.emplace_back(*offset + static_cast<int>(i),
                                  static_cast<int>(i));
    }
    return result;
  }
  if (const auto offset = find_window(concept_chain, input_chain)) {
    result.verdict = Verdict::AssociativeConcept;
    for (std::size_t i = 0; i < input_chain.nodes.size(); ++i) {
      result.mapping.emplace_back(static_cast<int>(i),
                                  *offset + static_cast<int>(i));
    }
    return result;
  }
  result.verdict = Verdict::Unrecognized;
  return result;
}

Readout readout(const ConceptGraph& con) {
  if (con.nodes.empty()) {
    throw DomainError("readout: empty concept");
  }
  return Readout{static_cast<double>(con.nodes.size()), Readout::Kind::constant};
}

std::string wta(const std::vector<std::pair<std::string, double>>& responses) {
  if (responses.empty()) {
    throw ValidationError("wta: no responses");
  }
  const auto* best = &responses.front();
  for (const auto& response : responses) {
    if (response.second > best->second ||
        (response.second == best->second && response.first < best->first)) {
      best = &response;
    }
  }
  return best->first;
}

namespace {

struct GedProblem {
  const LabeledChain& a;
  const LabeledChain& b;
  int n;
  int m;
  int best;

  int node_cost(int i, int j) const { return a.nodes[i] == b.nodes[j] ? 0 : 1; }

  // phi: assignment of a-nodes processed so far; -1 encodes deletion.
  void search(int i, std::uint32_t used, int matched_b_links, int cost,
              std::vector<int>& phi) {
    const int avail = m - std::popcount(used);
    const int remaining = n - i;
    if (cost + std::abs(remaining - avail) >= best) return;
    if (i == n) {
      const int b_links = m > 0 ? m - 1 : 0;
      const int total = cost + avail + (b_links - matched_b_links);
      best = std::min(best, total);
      return;
    }

    for (int j = 0; j < m; ++j) {
      if (used & (1u << j)) continue;
      int c = node_cost(i, j);
      int matched = 0;
      if (i >= 1) {
        if (phi[i - 1] >= 0 && phi[i - 1] + 1 == j) {
          c += a.links[i - 1] == b.links[phi[i - 1]] ? 0 : 1;
          matched = 1;
        } else {
          c += 1;  // the a-link (i-1, i) has no image
        }
      }
      phi[i] = j;
      search(i + 1, used | (1u << j), matched_b_links + matched, cost + c, phi);
    }

    int c = 1;                // delete the node
    if (i >= 1) c += 1;       // and the a-link arriving at it
    phi[i] = -1;
    search(i + 1, used, matched_b_links, cost + c, phi);
  }
};

int identity_alignment_cost(const LabeledChain& a, const LabeledChain& b) {
  const int n = static_cast<int>(a.nodes.size());
  const int m = static_cast<int>(b.nodes.size());
  const int common = std::min(n, m);
  int cost = 0;
  for (int i = 0; i < common; ++i) {
    cost += a.nodes[i] == b.nodes[i] ? 0 : 1;
  }
  for (int i = 0; i + 1 < common; ++i) {
    cost += a.links[i] == b.links[i] ? 0 : 1;
  }
  cost += std::abs(n - m);                    // node inserts/deletes
  const int a_links = n > 0 ? n - 1 : 0;
  const int b_links = m > 0 ? m - 1 : 0;
  cost += std::abs(a_links - b_links);        // dangling link edits
  return cost;
}

}  // namespace

int diversity(const LabeledChain& a, const LabeledChain& b) {
  if (a.nodes.empty() || b.nodes.empty()) {
    throw ValidationError("diversity: chains must be non-empty");
  }
  if (a.nodes.size() > kMaxDiversityNodes ||
      b.nodes.size() > kMaxDiversityNodes) {
    throw CapacityError("diversity: exact search bound exceeded");
  }

  GedProblem problem{a, b, static_cast<int>(a.nodes.size()),
                     static_cast<int>(b.nodes.size()), 0};
  const int everything =
      problem.n + problem.m + (problem.n - 1) + (problem.m - 1);
  problem.best = std::min(identity_alignment_cost(a, b), everything);

  std::vector<int> phi(static_cast<std::size_t>(problem.n), -1);
  problem.search(0, 0u, 0, 0, phi);
  return problem.best;
}

int diversity(const ReducedStructure& a, const ReducedStructure& b) {
  return diversity(to_chain(a), to_chain(b));
}

int diversity(const ConceptGraph& a, const ConceptGraph& b) {
  return diversity(a.principal_chain(), b.principal_chain());
}

}  // namespace enlab::concepts
