#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "enlab/concepts.hpp"
#include "enlab/reduction.hpp"

namespace enlab::io {

/// Flat key-value run configuration: one `key = value` per line, `#` starts
/// a comment, blank lines ignored.
std::map<std::string, std::string> read_config(const std::filesystem::path& path);

std::vector<concepts::SequenceRecord> read_dataset(
    const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path,
                   const std::vector<concepts::SequenceRecord>& records);

reduction::SegmentationSet read_segmentations(const std::filesystem::path& path);
void write_segmentations(const std::filesystem::path& path,
                         const reduction::SegmentationSet& segmentations);

/// Concept store: every trained class concept in one self-describing
/// document. Save and load round-trip losslessly.
void save_concept_store(const std::filesystem::path& path,
                        const std::vector<concepts::ConceptGraph>& concepts);
std::vector<concepts::ConceptGraph> load_concept_store(
    const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Column-stable CSV emitter; all floating-point cells round-trip exactly.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::string str() const;
  void write(const std::filesystem::path& path) const;
  std::size_t row_count() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace enlab::io
