#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "enlab/concepts.hpp"
#include "enlab/reduction.hpp"

namespace enlab::synthetic {

/// Prototype stroke sequence, parameterized by segment orientation (degrees).
struct StrokeClass {
  std::string label;
  std::vector<double> orientations;
};

struct StrokeDatasetSpec {
  std::vector<StrokeClass> classes;
  int samples_per_class = 50;
  double noise_amplitude = 3.0;
  std::uint64_t seed = 0;
};

struct StrokeDataset {
  std::vector<concepts::SequenceRecord> records;
  reduction::Segmentation segmentation;
  /// Largest noise amplitude that provably preserves every gradient sign
  /// and segment membership of the prototypes.
  double label_preservation_bound = 0.0;
  bool label_preserving = false;
};

/// Three classes whose reduced chains are pairwise distinct under the
/// quadrant segmentation: a rising run, a rising run crossing a quadrant
/// boundary, and a fall-rise zigzag.
std::vector<StrokeClass> default_stroke_classes();

/// Quadrant segmentation of the orientation parameter (cyclic, period 360).
reduction::Segmentation quadrant_segmentation();

/// Seeded generation of prototypes plus uniformly jittered variants.
/// Noise below the preservation bound guarantees every sample reduces to
/// its prototype's chain.
StrokeDataset generate_stroke_dataset(const StrokeDatasetSpec& spec);

/// Detector accepting the single ratio-scale "orientation" parameter.
concepts::DetectorConfig stroke_detector();

}  // namespace enlab::synthetic
