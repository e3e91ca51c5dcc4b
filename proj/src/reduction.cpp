#include "enlab/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace enlab::reduction {

Scale weaker(Scale s) {
  switch (s) {
    case Scale::ratio:
      return Scale::interval;
    case Scale::interval:
      return Scale::ordinal;
    case Scale::ordinal:
      return Scale::nominal;
    case Scale::nominal:
    default:
      return Scale::nominal;
  }
}

bool is_weaker(Scale a, Scale b) {
  return static_cast<int>(a) < static_cast<int>(b);
}

const char* to_string(Scale s) {
  switch (s) {
    case Scale::ratio:
      return "ratio";
    case Scale::interval:
      return "interval";
    case Scale::ordinal:
      return "ordinal";
    case Scale::nominal:
    default:
      return "nominal";
  }
}

Scale scale_from_string(const std::string& name) {
  if (name == "ratio") return Scale::ratio;
  if (name == "interval") return Scale::interval;
  if (name == "ordinal") return Scale::ordinal;
  if (name == "nominal") return Scale::nominal;
  throw ValidationError("unknown scale name '" + name + "'");
}

double ScaleEnergies::at(Scale s) const {
  switch (s) {
    case Scale::ratio:
      return ratio;
    case Scale::interval:
      return interval;
    case Scale::ordinal:
      return ordinal;
    case Scale::nominal:
    default:
      return nominal;
  }
}

void ScaleEnergies::validate() const {
  if (!(ratio > interval && interval > ordinal && ordinal > nominal &&
        nominal > 0.0)) {
    throw ValidationError(
        "ScaleEnergies: require ratio > interval > ordinal > nominal > 0");
  }
}

void OrderedStructure::validate() const {
  if (elements.empty()) return;
  const auto& reference = elements.front().params;
  for (const auto& element : elements) {
    if (element.params.size() != reference.size()) {
      throw ValidationError("OrderedStructure: heterogeneous parameter sets");
    }
    for (const auto& [name, param] : element.params) {
      auto it = reference.find(name);
      if (it == reference.end()) {
        throw ValidationError("OrderedStructure: parameter '" + name +
                              "' missing from other elements");
      }
      if (it->second.scale != param.scale) {
        throw ValidationError("OrderedStructure: parameter '" + name +
                              "' carries mixed scales");
      }
      if (!std::isfinite(param.value)) {
        throw NumericError("OrderedStructure: non-finite value for '" + name +
                           "'");
      }
    }
  }
}

std::vector<std::string> OrderedStructure::parameter_names() const {
  std::vector<std::string> names;
  if (elements.empty()) return names;
  for (const auto& [name, param] : elements.front().params) {
    names.push_back(name);
  }
  return names;
}

SignificanceStats structural_weight(std::int64_t observed_in,
                                    std::int64_t total_samples) {
  if (total_samples < 1) {
    throw DomainError("structural_weight: total_samples must be >= 1");
  }
  if (observed_in < 0 || observed_in > total_samples) {
    throw ValidationError(
        "structural_weight: observed_in must lie in [0, total_samples]");
  }
  SignificanceStats stats;
  stats.n_true = observed_in;
  stats.n_total = total_samples;
  return stats;
}

void Segmentation::validate() const {
  if (thresholds.empty()) {
    throw ValidationError("Segmentation: thresholds must be non-empty");
  }
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i - 1] < thresholds[i])) {
      throw ValidationError("Segmentation: thresholds must be strictly increasing");
    }
  }
  if (cyclic) {
    if (!(period > 0.0)) {
      throw ValidationError("Segmentation: cyclic segmentation needs a period");
    }
    if (!(thresholds.back() - thresholds.front() < period)) {
      throw ValidationError(
          "Segmentation: thresholds must span less than one period");
    }
  }
}

double compare(double u_i, double u_next) {
  if (!std::isfinite(u_i) || !std::isfinite(u_next)) {
    throw NumericError("compare: non-finite input");
  }
  return u_next - u_i;
}

int gradient_sign(double delta, double zero_tol) {
  if (zero_tol < 0.0) {
    throw ValidationError("gradient_sign: zero_tol must be >= 0");
  }
  if (delta > zero_tol) return 1;
  if (delta < -zero_tol) return -1;
  return 0;
}

std::vector<int> relation_vector(const OrderedStructure& s,
                                 const std::string& parameter,
                                 double zero_tol) {
  s.validate();
  if (s.elements.size() < 2) {
    throw ValidationError("relation_vector: need at least two elements");
  }
  std::vector<int> signs;
  signs.reserve(s.elements.size() - 1);
  for (std::size_t i = 0; i + 1 < s.elements.size(); ++i) {
    const auto it = s.elements[i].params.find(parameter);
    const auto next = s.elements[i + 1].params.find(parameter);
    if (it == s.elements[i].params.end() ||
        next == s.elements[i + 1].params.end()) {
      throw ValidationError("relation_vector: unknown parameter '" + parameter +
                            "'");
    }
    signs.push_back(
        gradient_sign(compare(it->second.value, next->second.value), zero_tol));
  }
  return signs;
}

int segment_index(double value, const Segmentation& seg) {
  seg.validate();
  if (!std::isfinite(value)) {
    throw NumericError("segment_index: non-finite value");
  }
  double v = value;
  const double lowest = seg.thresholds.front();
  if (seg.cyclic) {
    v = std::fmod(v - lowest, seg.period);
    if (v < 0.0) v += seg.period;
    v += lowest;
  } else if (v < lowest) {
    throw DomainError("segment_index: value below the lowest threshold");
  }
  const auto it =
      std::upper_bound(seg.thresholds.begin(), seg.thresholds.end(), v);
  return static_cast<int>(it - seg.thresholds.begin()) - 1;
}

namespace {

const Param& param_of(const StructElement& element, const std::string& name) {
  const auto it = element.params.find(name);
  if (it == element.params.end()) {
    throw ValidationError("reduction: unknown parameter '" + name + "'");
  }
  return it->second;
}

int segment_of(const StructElement& element, const std::string& name,
               const SegmentationSet& segmentations) {
  const auto seg = segmentations.find(name);
  if (seg == segmentations.end()) return 0;
  return segment_index(param_of(element, name).value, seg->second);
}

ReducedNode make_node(const StructElement& element,
                      const SegmentationSet& segmentations) {
  ReducedNode node;
  node.id = element.id;
  for (const auto& [name, param] : element.params) {
    node.qual[name] = segment_of(element, name, segmentations);
    node.scales[name] = is_weaker(param.scale, Scale::ordinal)
                            ? param.scale
                            : Scale::ordinal;
  }
  return node;
}

std::string resolve_parameter(const OrderedStructure& s,
                              const ReduceOptions& opts) {
  if (!opts.parameter.empty()) return opts.parameter;
  std::map<std::string, double> candidates;
  for (const auto& name : s.parameter_names()) {
    if (!is_weaker(param_of(s.elements.front(), name).scale, Scale::ordinal)) {
      candidates[name] = 1.0;  // fresh structures carry unit weights
    }
  }
  if (candidates.empty()) {
    throw ValidationError("reduction: no ordered parameter to reduce on");
  }
  return principal_parameter(candidates);
}

}  // namespace

ReducedStructure sp_reduce(const OrderedStructure& s,
                           const ReduceOptions& opts) {
  s.validate();
  if (s.elements.size() < 2) {
    throw ValidationError("sp_reduce: need at least two elements");
  }
  const std::string parameter = resolve_parameter(s, opts);
  const Param& first = param_of(s.elements.front(), parameter);
  if (is_weaker(first.scale, Scale::ordinal)) {
    throw ValidationError("sp_reduce: reduction parameter '" + parameter +
                          "' has no order (nominal scale)");
  }

  const std::size_t n = s.elements.size();
  const auto value_at = [&](std::size_t i) {
    return param_of(s.elements[i], parameter).value;
  };
  const auto segment_at = [&](std::size_t i) {
    return segment_of(s.elements[i], parameter, opts.segmentations);
  };

  // A run extends while each step keeps the gradient sign of the run's first
  // step and lands in the same segment as the run's body. The first step of
  // a run never breaks: it establishes sign and segment, and the shared
  // start node keeps whatever segment the previous run left it in.
  std::vector<std::size_t> boundary{0};
  std::vector<RelationLabel> labels;
  int run_sign = 0;
  int run_segment = 0;
  bool run_open = false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int sign =
        gradient_sign(compare(value_at(i), value_at(i + 1)), opts.zero_tol);
    const int segment = segment_at(i + 1);
    if (!run_open) {
      run_sign = sign;
      run_segment = segment;
      run_open = true;
    } else if (sign != run_sign || segment != run_segment) {
      boundary.push_back(i);
      labels.push_back({run_sign, run_segment});
      run_sign = sign;
      run_segment = segment;
    }
  }
  boundary.push_back(n - 1);
  labels.push_back({run_sign, run_segment});

  ReducedStructure reduced;
  reduced.parameter = parameter;
  for (const std::size_t index : boundary) {
    reduced.nodes.push_back(make_node(s.elements[index], opts.segmentations));
  }
  for (std::size_t k = 0; k < labels.size(); ++k) {
    ReducedLink link;
    link.from = static_cast<int>(k);
    link.to = static_cast<int>(k + 1);
    link.parameter = parameter;
    link.label = labels[k];
    reduced.links.push_back(link);
  }
  return reduced;
}

ReducedStructure sp_reduce(const ReducedStructure& s) {
  ReducedStructure out;
  out.parameter = s.parameter;

  std::vector<bool> keep(s.nodes.size(), true);
  std::vector<ReducedLink> links = s.links;
  std::sort(links.begin(), links.end(),
            [](const ReducedLink& a, const ReducedLink& b) {
              return a.from < b.from;
            });

  std::vector<ReducedLink> merged;
  for (const ReducedLink& link : links) {
    if (!merged.empty() && merged.back().to == link.from &&
        merged.back().parameter == link.parameter &&
        merged.back().label == link.label) {
      keep[static_cast<std::size_t>(link.from)] = false;
      merged.back().to = link.to;
      if (link.stats.w() < merged.back().stats.w()) {
        merged.back().stats = link.stats;
      }
    } else {
      merged.push_back(link);
    }
  }

  std::vector<int> remap(s.nodes.size(), -1);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (keep[i]) {
      remap[i] = static_cast<int>(out.nodes.size());
      out.nodes.push_back(s.nodes[i]);
    }
  }
  for (ReducedLink link : merged) {
    link.from = remap[static_cast<std::size_t>(link.from)];
    link.to = remap[static_cast<std::size_t>(link.to)];
    out.links.push_back(link);
  }
  return out;
}

namespace {

void demote_once(OrderedStructure& s, const std::string& name) {
  const Scale current = param_of(s.elements.front(), name).scale;
  switch (current) {
    case Scale::ratio: {
      const double origin = param_of(s.elements.front(), name).value;
      for (auto& element : s.elements) {
        Param& p = element.params[name];
        p.value -= origin;
        p.scale = Scale::interval;
      }
      break;
    }
    case Scale::interval:
      for (auto& element : s.elements) {
        Param& p = element.params[name];
        p.value = gradient_sign(p.value, 0.0);
        p.scale = Scale::ordinal;
      }
      break;
    case Scale::ordinal:
      for (auto& element : s.elements) {
        Param& p = element.params[name];
        p.value = 1.0;
        p.scale = Scale::nominal;
      }
      break;
    case Scale::nominal:
    default:
      throw PreconditionError("param_reduce: nominal scale cannot be demoted");
  }
}

}  // namespace

OrderedStructure param_reduce(const OrderedStructure& s, Scale target_level) {
  s.validate();
  if (s.elements.empty()) {
    throw ValidationError("param_reduce: empty structure");
  }
  for (const auto& name : s.parameter_names()) {
    if (!is_weaker(target_level, param_of(s.elements.front(), name).scale)) {
      throw PreconditionError("param_reduce: target level is not weaker than '" +
                              name + "'");
    }
  }
  OrderedStructure out = s;
  for (const auto& name : out.parameter_names()) {
    while (is_weaker(target_level, param_of(out.elements.front(), name).scale)) {
      demote_once(out, name);
    }
  }
  return out;
}

ReducedStructure param_reduce(const ReducedStructure& s, Scale target_level) {
  for (const auto& node : s.nodes) {
    for (const auto& [name, scale] : node.scales) {
      if (!is_weaker(target_level, scale)) {
        throw PreconditionError(
            "param_reduce: target level is not weaker than '" + name + "'");
      }
    }
  }
  ReducedStructure out = s;
  for (auto& node : out.nodes) {
    for (auto& [name, scale] : node.scales) {
      scale = target_level;
      node.qual[name] = 1;  // presence label
    }
  }
  return out;
}

EnergyLedger structure_energy(const OrderedStructure& s,
                              const ScaleEnergies& energies) {
  energies.validate();
  s.validate();
  EnergyLedger ledger;
  for (const auto& element : s.elements) {
    for (const auto& [name, param] : element.params) {
      const double e = energies.at(param.scale);
      ledger.unit_energy += e;
      ledger.per_level[param.scale] += e;
    }
  }
  if (s.elements.size() >= 2) {
    const auto pairs = static_cast<double>(s.elements.size() - 1);
    for (const auto& [name, param] : s.elements.front().params) {
      // Comparisons live one level below the parameters they compare, but
      // never below ordinal: the sign of a difference is still ordered.
      const Scale link_scale =
          param.scale == Scale::ordinal ? Scale::ordinal : weaker(param.scale);
      const double e = pairs * energies.at(link_scale);
      ledger.connection_energy += e;
      ledger.per_level[link_scale] += e;
    }
  }
  ledger.total = ledger.unit_energy + ledger.connection_energy;
  return ledger;
}

EnergyLedger structure_energy(const ReducedStructure& s,
                              const ScaleEnergies& energies) {
  energies.validate();
  EnergyLedger ledger;
  for (const auto& node : s.nodes) {
    for (const auto& [name, scale] : node.scales) {
      const double e = energies.at(scale);
      ledger.unit_energy += e;
      ledger.per_level[scale] += e;
    }
  }
  for (const auto& link : s.links) {
    (void)link;  // relation labels are ordinal by construction
    const double e = energies.at(Scale::ordinal);
    ledger.connection_energy += e;
    ledger.per_level[Scale::ordinal] += e;
  }
  ledger.total = ledger.unit_energy + ledger.connection_energy;
  return ledger;
}

PruneResult structural_prune(const ReducedStructure& s, double gamma_sig) {
  if (!(gamma_sig > 0.0 && gamma_sig <= 1.0)) {
    throw ValidationError("structural_prune: gamma_sig must lie in (0, 1]");
  }

  PruneResult result;
  std::vector<bool> node_alive(s.nodes.size(), true);
  std::vector<ReducedLink> links;
  for (const ReducedLink& link : s.links) {
    if (link.stats.w_value() < gamma_sig) {
      ++result.removed_links;
    } else {
      links.push_back(link);
    }
  }

  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (s.nodes[i].stats.w_value() >= gamma_sig) continue;
    node_alive[i] = false;
    ++result.removed_nodes;

    const int id = static_cast<int>(i);
    std::vector<std::size_t> incoming;
    std::vector<std::size_t> outgoing;
    for (std::size_t k = 0; k < links.size(); ++k) {
      if (links[k].to == id) incoming.push_back(k);
      if (links[k].from == id) outgoing.push_back(k);
    }

    if (incoming.size() == 1 && outgoing.size() == 1 &&
        links[incoming.front()].label == links[outgoing.front()].label &&
        links[incoming.front()].parameter == links[outgoing.front()].parameter) {
      // The flanking relations agree, so the chain heals across the gap.
      ReducedLink& kept = links[incoming.front()];
      const ReducedLink& dropped = links[outgoing.front()];
      kept.to = dropped.to;
      if (dropped.stats.w() < kept.stats.w()) kept.stats = dropped.stats;
      links.erase(links.begin() +
                  static_cast<std::ptrdiff_t>(outgoing.front()));
      ++result.merged_links;
    } else {
      std::vector<std::size_t> doomed;
      doomed.insert(doomed.end(), incoming.begin(), incoming.end());
      doomed.insert(doomed.end(), outgoing.begin(), outgoing.end());
      std::sort(doomed.rbegin(), doomed.rend());
      for (const std::size_t k : doomed) {
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(k));
        ++result.removed_links;
      }
    }
  }

  std::vector<int> remap(s.nodes.size(), -1);
  result.structure.parameter = s.parameter;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (node_alive[i]) {
      remap[i] = static_cast<int>(result.structure.nodes.size());
      result.structure.nodes.push_back(s.nodes[i]);
    }
  }
  for (ReducedLink link : links) {
    link.from = remap[static_cast<std::size_t>(link.from)];
    link.to = remap[static_cast<std::size_t>(link.to)];
    result.structure.links.push_back(link);
  }
  result.emptied = !s.nodes.empty() && result.structure.nodes.empty();
  return result;
}

std::string principal_parameter(
    const std::map<std::string, double>& mean_link_weight) {
  if (mean_link_weight.empty()) {
    throw ValidationError("principal_parameter: no candidates");
  }
  auto best = mean_link_weight.begin();
  for (auto it = std::next(best); it != mean_link_weight.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

namespace {

// Ratio measurements become interval differences from the first element,
// and the matching segmentations are re-anchored to the new origin so that
// segment membership is preserved.
std::pair<OrderedStructure, SegmentationSet> anchor_to_interval(
    const OrderedStructure& s, const SegmentationSet& segmentations,
    bool* demoted_any) {
  OrderedStructure out = s;
  SegmentationSet segs = segmentations;
  for (const auto& name : out.parameter_names()) {
    if (param_of(out.elements.front(), name).scale != Scale::ratio) continue;
    const double origin = param_of(out.elements.front(), name).value;
    demote_once(out, name);
    *demoted_any = true;
    if (auto it = segs.find(name); it != segs.end()) {
      for (double& threshold : it->second.thresholds) threshold -= origin;
    }
  }
  return {std::move(out), std::move(segs)};
}

}  // namespace

ReducedStructure composite_reduce(const OrderedStructure& s,
                                  const ReduceOptions& opts) {
  s.validate();
  const EnergyLedger before = structure_energy(s, opts.energies);

  bool demoted_any = false;
  auto [anchored, segmentations] =
      anchor_to_interval(s, opts.segmentations, &demoted_any);

  ReduceOptions staged = opts;
  staged.segmentations = std::move(segmentations);
  staged.parameter = resolve_parameter(anchored, staged);

  const ReducedStructure chain = sp_reduce(anchored, staged);
  PruneResult pruned = structural_prune(chain, staged.gamma_sig);

  const EnergyLedger after = structure_energy(pruned.structure, opts.energies);
  if (after.total > before.total) {
    throw InvariantBreach("composite_reduce: energy increased");
  }
  bool scale_weakened = demoted_any;
  for (const auto& name : s.parameter_names()) {
    if (is_weaker(Scale::ordinal, param_of(s.elements.front(), name).scale)) {
      scale_weakened = true;
    }
  }
  const bool compressed =
      pruned.structure.nodes.size() < s.elements.size() || scale_weakened ||
      pruned.removed_nodes > 0 || pruned.removed_links > 0;
  if (compressed && !(after.total < before.total)) {
    throw InvariantBreach("composite_reduce: compression without energy descent");
  }
  return std::move(pruned.structure);
}

double entropy_of_w(const SignificanceStats& stats, std::uint64_t omega0,
                    const PhysicalConstants& consts) {
  detail::check_constants(consts);
  if (omega0 < 1) {
    throw DomainError("entropy_of_w: omega0 must be >= 1");
  }
  if (stats.n_true <= 0) {
    throw DomainError("entropy_of_w: w must be positive (log divergence)");
  }
  if (!(stats.gamma_exp > 0.0)) {
    throw ValidationError("entropy_of_w: gamma_exp must be positive");
  }
  return consts.k_b * std::log(static_cast<double>(omega0)) +
         consts.k_b * stats.gamma_exp * std::log(stats.w_value());
}

double energy_vs_w(const SignificanceStats& stats, double e0,
                   double temperature, std::uint64_t omega0,
                   const PhysicalConstants& consts) {
  return e0 - temperature * entropy_of_w(stats, omega0, consts);
}

double energy_vs_w_derivative(const SignificanceStats& stats,
                              double temperature,
                              const PhysicalConstants& consts) {
  detail::check_constants(consts);
  if (stats.n_true <= 0) {
    throw DomainError("energy_vs_w_derivative: w must be positive");
  }
  return -consts.k_b * temperature * stats.gamma_exp / stats.w_value();
}

}  // namespace enlab::reduction
