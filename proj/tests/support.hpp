#pragma once

// Shared generators for the property suites.

#include <string>
#include <vector>

#include "enlab/reduction.hpp"
#include "enlab/rng.hpp"

namespace testsupport {

using enlab::Rng;
using enlab::reduction::OrderedStructure;
using enlab::reduction::Param;
using enlab::reduction::ReducedStructure;
using enlab::reduction::Scale;
using enlab::reduction::Segmentation;
using enlab::reduction::SegmentationSet;
using enlab::reduction::StructElement;

struct RandomStructure {
  OrderedStructure structure;
  SegmentationSet segmentations;
};

// Ordered structures with 1..max_params homogeneous parameters, plateaus to
// exercise zero gradients, and per-parameter segmentations half the time.
// Values stay above the lowest non-cyclic threshold by construction.
inline RandomStructure random_structure(Rng& rng, int max_len = 64,
                                        int max_params = 3) {
  RandomStructure out;
  const int n = static_cast<int>(rng.uniform_int(2, max_len));
  const int params = static_cast<int>(rng.uniform_int(1, max_params));

  std::vector<Scale> scales;
  for (int p = 0; p < params; ++p) {
    if (p == 0) {
      scales.push_back(rng.uniform01() < 0.5 ? Scale::ratio : Scale::interval);
    } else {
      const double draw = rng.uniform01();
      scales.push_back(draw < 0.4 ? Scale::ratio
                                  : (draw < 0.8 ? Scale::interval
                                                : Scale::ordinal));
    }
  }

  for (int i = 0; i < n; ++i) {
    StructElement element;
    element.id = "e" + std::to_string(i);
    for (int p = 0; p < params; ++p) {
      const std::string name = "p" + std::to_string(p);
      double value;
      if (i > 0 && rng.uniform01() < 0.3) {
        value = out.structure.elements[static_cast<std::size_t>(i - 1)]
                    .params.at(name)
                    .value;
      } else {
        value = rng.uniform(-50.0, 50.0);
      }
      element.params[name] = Param{value, scales[static_cast<std::size_t>(p)]};
    }
    out.structure.elements.push_back(std::move(element));
  }

  for (int p = 0; p < params; ++p) {
    if (rng.uniform01() >= 0.5) continue;
    Segmentation seg;
    seg.parameter = "p" + std::to_string(p);
    seg.cyclic = rng.uniform01() < 0.5;
    const int extra = static_cast<int>(rng.uniform_int(1, 3));
    seg.thresholds.push_back(-60.0);
    double cursor = -60.0;
    for (int k = 0; k < extra; ++k) {
      cursor += rng.uniform(5.0, 40.0);
      if (cursor < 60.0) seg.thresholds.push_back(cursor);
    }
    if (seg.cyclic) seg.period = 130.0;
    out.segmentations[seg.parameter] = std::move(seg);
  }
  return out;
}

inline bool same_structure(const ReducedStructure& a,
                           const ReducedStructure& b) {
  if (a.parameter != b.parameter) return false;
  if (a.nodes.size() != b.nodes.size()) return false;
  if (a.links.size() != b.links.size()) return false;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    if (a.nodes[i].id != b.nodes[i].id) return false;
    if (a.nodes[i].qual != b.nodes[i].qual) return false;
    if (a.nodes[i].scales != b.nodes[i].scales) return false;
  }
  for (std::size_t i = 0; i < a.links.size(); ++i) {
    if (a.links[i].from != b.links[i].from) return false;
    if (a.links[i].to != b.links[i].to) return false;
    if (a.links[i].parameter != b.links[i].parameter) return false;
    if (!(a.links[i].label == b.links[i].label)) return false;
  }
  return true;
}

}  // namespace testsupport
