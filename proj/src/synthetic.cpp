#include "enlab/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "enlab/rng.hpp"

namespace enlab::synthetic {

std::vector<StrokeClass> default_stroke_classes() {
  return {
      {"ascender", {10.0, 40.0, 70.0}},
      {"crosser", {10.0, 60.0, 110.0, 160.0}},
      {"zigzag", {80.0, 20.0, 80.0}},
  };
}

reduction::Segmentation quadrant_segmentation() {
  reduction::Segmentation seg;
  seg.parameter = "orientation";
  seg.thresholds = {0.0, 90.0, 180.0, 270.0};
  seg.cyclic = true;
  seg.period = 360.0;
  return seg;
}

concepts::DetectorConfig stroke_detector() {
  concepts::DetectorConfig detector;
  detector.parameters["orientation"] = reduction::Scale::ratio;
  return detector;
}

namespace {

// Largest amplitude eps such that jittering every reading by at most eps
// can neither flip a gradient sign (needs |delta| > 2 eps) nor move a
// reading across a segment threshold (needs distance > eps).
double preservation_bound(const std::vector<StrokeClass>& classes,
                          const reduction::Segmentation& seg) {
  seg.validate();
  double bound = std::numeric_limits<double>::infinity();
  for (const auto& cls : classes) {
    for (std::size_t i = 0; i + 1 < cls.orientations.size(); ++i) {
      const double delta =
          std::abs(cls.orientations[i + 1] - cls.orientations[i]);
      bound = std::min(bound, delta / 2.0);
    }
    for (const double value : cls.orientations) {
      double folded = value;
      if (seg.cyclic) {
        folded = std::fmod(value - seg.thresholds.front(), seg.period);
        if (folded < 0.0) folded += seg.period;
        folded += seg.thresholds.front();
      }
      for (const double threshold : seg.thresholds) {
        bound = std::min(bound, std::abs(folded - threshold));
      }
      if (seg.cyclic) {
        // distance to the wrap point counts as a threshold distance
        bound = std::min(bound, std::abs(seg.thresholds.front() + seg.period -
                                         folded));
      }
    }
  }
  return bound;
}

}  // namespace

StrokeDataset generate_stroke_dataset(const StrokeDatasetSpec& spec) {
  if (spec.classes.empty()) {
    throw ValidationError("generate_stroke_dataset: no classes");
  }
  if (spec.samples_per_class < 1) {
    throw ValidationError("generate_stroke_dataset: samples_per_class must be >= 1");
  }
  if (spec.noise_amplitude < 0.0) {
    throw ValidationError("generate_stroke_dataset: noise amplitude must be >= 0");
  }
  for (const auto& cls : spec.classes) {
    if (cls.orientations.size() < 2) {
      throw ValidationError("generate_stroke_dataset: class '" + cls.label +
                            "' needs at least two strokes");
    }
  }

  StrokeDataset dataset;
  dataset.segmentation = quadrant_segmentation();
  dataset.label_preservation_bound =
      preservation_bound(spec.classes, dataset.segmentation);
  dataset.label_preserving =
      spec.noise_amplitude < dataset.label_preservation_bound;

  Rng rng = Rng::substream(spec.seed, "gen-dataset");
  for (const auto& cls : spec.classes) {
    for (int k = 0; k < spec.samples_per_class; ++k) {
      concepts::SequenceRecord record;
      record.id = cls.label + "-" + std::to_string(k);
      record.class_label = cls.label;
      for (const double orientation : cls.orientations) {
        const double noise =
            spec.noise_amplitude > 0.0
                ? rng.uniform(-spec.noise_amplitude, spec.noise_amplitude)
                : 0.0;
        record.elements.push_back({{"orientation", orientation + noise}});
      }
      dataset.records.push_back(std::move(record));
    }
  }
  return dataset;
}

}  // namespace enlab::synthetic
