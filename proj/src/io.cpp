#include "enlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace enlab::io {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::int64_t line_of_byte(const std::filesystem::path& path,
                          std::size_t byte) {
  std::ifstream in(path, std::ios::binary);
  std::int64_t line = 1;
  char c;
  for (std::size_t offset = 0; offset + 1 < byte && in.get(c); ++offset) {
    if (c == '\n') ++line;
  }
  return line;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    const std::int64_t line = line_of_byte(path, e.byte);
    throw ParseError("'" + path.string() + "' line " + std::to_string(line) +
                         ": " + e.what(),
                     line);
  }
}

void dump_json(const std::filesystem::path& path, const json& document) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << document.dump(2) << "\n";
}

json segmentation_to_json(const reduction::Segmentation& seg) {
  json j;
  j["parameter"] = seg.parameter;
  j["thresholds"] = seg.thresholds;
  j["cyclic"] = seg.cyclic;
  if (seg.cyclic) j["period"] = seg.period;
  return j;
}

reduction::Segmentation segmentation_from_json(const json& j) {
  reduction::Segmentation seg;
  seg.parameter = j.at("parameter").get<std::string>();
  seg.thresholds = j.at("thresholds").get<std::vector<double>>();
  seg.cyclic = j.value("cyclic", false);
  if (seg.cyclic) seg.period = j.at("period").get<double>();
  seg.validate();
  return seg;
}

}  // namespace

std::map<std::string, std::string> read_config(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open config '" + path.string() + "'");
  }
  std::map<std::string, std::string> config;
  std::string line;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError(
          "config '" + path.string() + "': expected key = value", line_number);
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("config '" + path.string() + "': empty key",
                       line_number);
    }
    config[key] = value;
  }
  return config;
}

std::vector<concepts::SequenceRecord> read_dataset(
    const std::filesystem::path& path) {
  const json document = load_json(path);
  if (!document.contains("structures") || !document["structures"].is_array()) {
    throw ParseError("dataset '" + path.string() +
                     "': missing \"structures\" array");
  }
  std::vector<concepts::SequenceRecord> records;
  std::int64_t index = 0;
  for (const json& entry : document["structures"]) {
    try {
      concepts::SequenceRecord record;
      record.id = entry.at("id").get<std::string>();
      if (entry.contains("class")) {
        record.class_label = entry["class"].get<std::string>();
      }
      for (const json& element : entry.at("elements")) {
        std::map<std::string, double> params;
        for (const auto& [name, value] : element.at("params").items()) {
          params[name] = value.get<double>();
        }
        record.elements.push_back(std::move(params));
      }
      records.push_back(std::move(record));
    } catch (const json::exception& e) {
      throw ParseError(
          "dataset '" + path.string() + "': bad record: " + e.what(), index);
    }
    ++index;
  }
  return records;
}

void write_dataset(const std::filesystem::path& path,
                   const std::vector<concepts::SequenceRecord>& records) {
  json structures = json::array();
  for (const auto& record : records) {
    json entry;
    entry["id"] = record.id;
    if (record.class_label) entry["class"] = *record.class_label;
    json elements = json::array();
    for (const auto& element : record.elements) {
      json params = json::object();
      for (const auto& [name, value] : element) params[name] = value;
      elements.push_back(json{{"params", params}});
    }
    entry["elements"] = std::move(elements);
    structures.push_back(std::move(entry));
  }
  dump_json(path, json{{"structures", structures}});
}

reduction::SegmentationSet read_segmentations(
    const std::filesystem::path& path) {
  const json document = load_json(path);
  reduction::SegmentationSet set;
  const auto add = [&](const json& j) {
    reduction::Segmentation seg = segmentation_from_json(j);
    set[seg.parameter] = std::move(seg);
  };
  try {
    if (document.is_array()) {
      for (const json& entry : document) add(entry);
    } else if (document.contains("segmentations")) {
      for (const json& entry : document["segmentations"]) add(entry);
    } else {
      add(document);
    }
  } catch (const json::exception& e) {
    throw ParseError("segmentation '" + path.string() + "': " + e.what());
  }
  return set;
}

void write_segmentations(const std::filesystem::path& path,
                         const reduction::SegmentationSet& segmentations) {
  if (segmentations.size() == 1) {
    dump_json(path, segmentation_to_json(segmentations.begin()->second));
    return;
  }
  json list = json::array();
  for (const auto& [name, seg] : segmentations) {
    list.push_back(segmentation_to_json(seg));
  }
  dump_json(path, json{{"segmentations", list}});
}

void save_concept_store(const std::filesystem::path& path,
                        const std::vector<concepts::ConceptGraph>& concepts) {
  json store;
  store["format_version"] = 1;
  json list = json::array();
  for (const auto& con : concepts) {
    json entry;
    entry["class"] = con.class_label;
    entry["parameter"] = con.parameter;
    entry["sample_count"] = con.sample_count;
    entry["gamma_sig"] = con.gamma_sig;
    json segs = json::array();
    for (const auto& [name, seg] : con.segmentations) {
      segs.push_back(segmentation_to_json(seg));
    }
    entry["segmentations"] = std::move(segs);

    json nodes = json::array();
    for (const auto& node : con.nodes) {
      json qual = json::object();
      for (const auto& [name, segment] : node.label) qual[name] = segment;
      nodes.push_back(json{{"position", node.position},
                           {"qual", qual},
                           {"n_true", node.stats.n_true},
                           {"w", node.stats.w_value()}});
    }
    entry["nodes"] = std::move(nodes);

    json links = json::array();
    for (const auto& link : con.links) {
      links.push_back(json{{"position", link.position},
                           {"parameter", link.label.parameter},
                           {"sign", link.label.relation.sign},
                           {"segment", link.label.relation.segment},
                           {"n_true", link.stats.n_true},
                           {"w", link.stats.w_value()}});
    }
    entry["links"] = std::move(links);
    list.push_back(std::move(entry));
  }
  store["concepts"] = std::move(list);
  dump_json(path, store);
}

std::vector<concepts::ConceptGraph> load_concept_store(
    const std::filesystem::path& path) {
  const json store = load_json(path);
  try {
    if (store.at("format_version").get<int>() != 1) {
      throw ParseError("concept store '" + path.string() +
                       "': unsupported format version");
    }
    std::vector<concepts::ConceptGraph> concepts;
    for (const json& entry : store.at("concepts")) {
      concepts::ConceptGraph con;
      con.class_label = entry.at("class").get<std::string>();
      con.parameter = entry.at("parameter").get<std::string>();
      con.sample_count = entry.at("sample_count").get<std::int64_t>();
      con.gamma_sig = entry.at("gamma_sig").get<double>();
      for (const json& seg : entry.at("segmentations")) {
        reduction::Segmentation parsed = segmentation_from_json(seg);
        con.segmentations[parsed.parameter] = std::move(parsed);
      }
      for (const json& node : entry.at("nodes")) {
        concepts::ConceptNode parsed;
        parsed.position = node.at("position").get<int>();
        for (const auto& [name, segment] : node.at("qual").items()) {
          parsed.label[name] = segment.get<int>();
        }
        parsed.stats.n_true = node.at("n_true").get<std::int64_t>();
        parsed.stats.n_total = con.sample_count;
        parsed.stats.gamma_sig = con.gamma_sig;
        con.nodes.push_back(std::move(parsed));
      }
      for (const json& link : entry.at("links")) {
        concepts::ConceptLink parsed;
        parsed.position = link.at("position").get<int>();
        parsed.label.parameter = link.at("parameter").get<std::string>();
        parsed.label.relation.sign = link.at("sign").get<int>();
        parsed.label.relation.segment = link.at("segment").get<int>();
        parsed.stats.n_true = link.at("n_true").get<std::int64_t>();
        parsed.stats.n_total = con.sample_count;
        parsed.stats.gamma_sig = con.gamma_sig;
        con.links.push_back(std::move(parsed));
      }
      concepts.push_back(std::move(con));
    }
    return concepts;
  } catch (const json::exception& e) {
    throw ParseError("concept store '" + path.string() + "': " + e.what());
  }
}

std::string format_double(double value) {
  char buffer[40];
  for (const int precision : {15, 16, 17}) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw ValidationError("CsvWriter: row width does not match header");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
  std::ostringstream out;
  const auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  emit(header_);
  for (const auto& row : rows_) emit(row);
  return out.str();
}

void CsvWriter::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << str();
}

}  // namespace enlab::io
