// enlab: seeded experiment runner over the energy-landscape library.
//
// Every command reads a flat key = value config file, draws all randomness
// from named sub-streams of one seed, and emits a CSV (or JSON) table plus
// a .meta.json sidecar echoing the configuration. Outputs are byte-stable
// across reruns of the same build.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "enlab/concepts.hpp"
#include "enlab/core.hpp"
#include "enlab/entropy.hpp"
#include "enlab/hopfield.hpp"
#include "enlab/io.hpp"
#include "enlab/landscape.hpp"
#include "enlab/mcp.hpp"
#include "enlab/reduction.hpp"
#include "enlab/rng.hpp"
#include "enlab/synthetic.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace enlab;

struct RunContext {
  std::string command;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  fs::path out_dir = ".";
  std::string format = "csv";
};

std::string require_key(const RunContext& ctx, const std::string& key) {
  const auto it = ctx.config.find(key);
  if (it == ctx.config.end() || it->second.empty()) {
    throw ValidationError("config: missing required key '" + key + "'");
  }
  return it->second;
}

std::string key_or(const RunContext& ctx, const std::string& key,
                   const std::string& fallback) {
  const auto it = ctx.config.find(key);
  return it == ctx.config.end() ? fallback : it->second;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ValidationError("config: '" + what + "' is not a number: " + text);
  }
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const std::int64_t value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ValidationError("config: '" + what + "' is not an integer: " + text);
  }
}

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, separator)) parts.push_back(item);
  return parts;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> values;
  for (const std::string& item : split(text, ',')) {
    values.push_back(parse_double(item, what));
  }
  return values;
}

hopfield::SpinState parse_spins(const std::string& text) {
  hopfield::SpinState s(static_cast<Eigen::Index>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '+') {
      s(static_cast<Eigen::Index>(i)) = 1;
    } else if (text[i] == '-') {
      s(static_cast<Eigen::Index>(i)) = -1;
    } else {
      throw ValidationError("spin string must contain only '+' and '-'");
    }
  }
  return s;
}

std::string spins_to_string(const hopfield::SpinState& s) {
  std::string text;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    text += s(i) > 0 ? '+' : '-';
  }
  return text;
}

std::string rational_to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void emit_outputs(const RunContext& ctx, const io::CsvWriter& table,
                  const std::vector<std::string>& header, const json& extra) {
  fs::create_directories(ctx.out_dir);

  if (ctx.format == "csv") {
    table.write(ctx.out_dir / (ctx.command + ".csv"));
  } else {
    // Same cells as the CSV, one object per row, values as decimal text.
    std::istringstream parsed(table.str());
    std::string line;
    std::getline(parsed, line);
    json rows = json::array();
    while (std::getline(parsed, line)) {
      const std::vector<std::string> cells = split(line, ',');
      json row = json::object();
      for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) {
        row[header[i]] = cells[i];
      }
      rows.push_back(std::move(row));
    }
    std::ofstream out(ctx.out_dir / (ctx.command + ".json"));
    out << rows.dump(2) << "\n";
  }

  json meta;
  meta["command"] = ctx.command;
  meta["format"] = ctx.format;
  meta["seed"] = ctx.seed;
  json config = json::object();
  for (const auto& [key, value] : ctx.config) config[key] = value;
  meta["config"] = std::move(config);
  meta["build"] = json{{"compiler", __VERSION__},
                       {"standard", static_cast<long>(__cplusplus)}};
  meta["extra"] = extra;
  std::ofstream out(ctx.out_dir / (ctx.command + ".meta.json"));
  out << meta.dump(2) << "\n";
}

mcp::McpNeuron neuron_from_config(const RunContext& ctx) {
  const std::vector<double> weights =
      parse_double_list(require_key(ctx, "weights"), "weights");
  Eigen::VectorXd w(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    w(static_cast<Eigen::Index>(i)) = weights[i];
  }
  const double q = parse_double(key_or(ctx, "threshold", "0"), "threshold");
  return mcp::McpNeuron(std::move(w), q);
}

int cmd_mcp_census(const RunContext& ctx) {
  const mcp::McpNeuron neuron = neuron_from_config(ctx);
  const mcp::MicrostateCensus census = mcp::microstate_census(neuron);
  const mcp::EntropyReport report = mcp::entropy_report(neuron);

  const std::vector<std::string> header = {
      "n",          "threshold", "weights",    "omega_act", "omega_nonact",
      "p_act_exact", "p_act",    "h_bits",     "s_act",     "s_nonact"};
  io::CsvWriter table(header);
  std::string weight_text;
  for (Eigen::Index i = 0; i < neuron.weights.size(); ++i) {
    if (i) weight_text += '|';
    weight_text += io::format_double(neuron.weights(i));
  }
  table.add_row({
      std::to_string(census.n),
      io::format_double(neuron.threshold),
      weight_text,
      std::to_string(census.omega_act),
      std::to_string(census.omega_nonact),
      rational_to_string(census.p_act),
      io::format_double(boost::rational_cast<double>(census.p_act)),
      io::format_double(report.h_bits),
      report.s_act ? io::format_double(*report.s_act) : "undefined",
      report.s_nonact ? io::format_double(*report.s_nonact) : "undefined",
  });
  emit_outputs(ctx, table, header, json::object());
  return 0;
}

int cmd_entropy_sweep(const RunContext& ctx) {
  const std::vector<double> grid =
      parse_double_list(require_key(ctx, "grid"), "grid");
  if (grid.empty()) {
    throw ValidationError("entropy-sweep: empty weight grid");
  }
  const int n = static_cast<int>(parse_int(key_or(ctx, "n", "2"), "n"));
  if (n < 1 || n > 8) {
    throw ValidationError("entropy-sweep: n must lie in [1, 8]");
  }
  const double q = parse_double(key_or(ctx, "threshold", "0"), "threshold");

  std::vector<std::string> header;
  for (int i = 0; i < n; ++i) header.push_back("w" + std::to_string(i + 1));
  header.insert(header.end(),
                {"omega_act", "p_act_exact", "p_act", "h_bits", "is_max"});

  struct Row {
    std::vector<double> weights;
    mcp::MicrostateCensus census;
    double h_bits;
  };
  std::vector<Row> rows;
  std::vector<std::size_t> odometer(static_cast<std::size_t>(n), 0);
  while (true) {
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) {
      w(i) = grid[odometer[static_cast<std::size_t>(i)]];
    }
    const mcp::McpNeuron neuron(w, q);
    Row row;
    row.weights.assign(w.data(), w.data() + n);
    row.census = mcp::microstate_census(neuron);
    row.h_bits = mcp::entropy_report(neuron).h_bits;
    rows.push_back(std::move(row));

    int position = n - 1;
    while (position >= 0 &&
           ++odometer[static_cast<std::size_t>(position)] == grid.size()) {
      odometer[static_cast<std::size_t>(position)] = 0;
      --position;
    }
    if (position < 0) break;
  }

  double max_h = 0.0;
  for (const Row& row : rows) max_h = std::max(max_h, row.h_bits);

  io::CsvWriter table(header);
  for (const Row& row : rows) {
    std::vector<std::string> cells;
    for (const double w : row.weights) cells.push_back(io::format_double(w));
    cells.push_back(std::to_string(row.census.omega_act));
    cells.push_back(rational_to_string(row.census.p_act));
    cells.push_back(
        io::format_double(boost::rational_cast<double>(row.census.p_act)));
    cells.push_back(io::format_double(row.h_bits));
    cells.push_back(row.h_bits == max_h ? "1" : "0");
    table.add_row(std::move(cells));
  }
  emit_outputs(ctx, table, header, json{{"max_h_bits", max_h}});
  return 0;
}

hopfield::HopfieldNet hopfield_net_from_config(const RunContext& ctx,
                                               std::vector<hopfield::SpinState>* patterns) {
  if (ctx.config.count("weights_file")) {
    const json document = [&] {
      std::ifstream in(key_or(ctx, "weights_file", ""));
      if (!in) throw ValidationError("hopfield: cannot open weights_file");
      try {
        return json::parse(in);
      } catch (const json::parse_error& e) {
        throw ParseError(std::string("hopfield weights_file: ") + e.what());
      }
    }();
    const auto rows = document.at("weights").get<std::vector<std::vector<double>>>();
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
        throw ValidationError("hopfield: weight matrix is not square");
      }
      for (int j = 0; j < n; ++j) {
        w(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
    if (document.contains("thresholds")) {
      const auto t = document["thresholds"].get<std::vector<double>>();
      if (static_cast<int>(t.size()) != n) {
        throw ValidationError("hopfield: threshold count does not match");
      }
      for (int i = 0; i < n; ++i) theta(i) = t[static_cast<std::size_t>(i)];
    }
    return hopfield::HopfieldNet(std::move(w), std::move(theta));
  }

  const std::string text = require_key(ctx, "patterns");
  for (const std::string& item : split(text, ';')) {
    patterns->push_back(parse_spins(item));
  }
  if (patterns->empty()) {
    throw ValidationError("hopfield: no patterns given");
  }
  const int n = static_cast<int>(patterns->front().size());
  return hopfield::hebbian_weights(*patterns, n);
}

int cmd_hopfield(const RunContext& ctx) {
  std::vector<hopfield::SpinState> patterns;
  const hopfield::HopfieldNet net = hopfield_net_from_config(ctx, &patterns);

  hopfield::SpinState initial;
  if (ctx.config.count("corrupt")) {
    const std::vector<std::string> parts = split(key_or(ctx, "corrupt", ""), ',');
    if (parts.size() != 2 || patterns.empty()) {
      throw ValidationError("hopfield: corrupt needs 'pattern_index,bit_index'");
    }
    const auto pattern_index =
        static_cast<std::size_t>(parse_int(parts[0], "corrupt"));
    const auto bit = static_cast<Eigen::Index>(parse_int(parts[1], "corrupt"));
    if (pattern_index >= patterns.size() || bit < 0 ||
        bit >= patterns[pattern_index].size()) {
      throw ValidationError("hopfield: corrupt index out of range");
    }
    initial = patterns[pattern_index];
    initial(bit) = -initial(bit);
  } else {
    initial = parse_spins(require_key(ctx, "initial"));
  }

  const auto schedule = key_or(ctx, "schedule", "sequential") == "random"
                            ? hopfield::UpdateSchedule::random
                            : hopfield::UpdateSchedule::sequential;
  const int max_sweeps =
      static_cast<int>(parse_int(key_or(ctx, "max_sweeps", "100"), "max_sweeps"));
  const hopfield::RecallTrace trace =
      hopfield::recall(net, initial, schedule, max_sweeps, ctx.seed);

  const std::vector<std::string> header = {"step", "energy", "state"};
  io::CsvWriter table(header);
  for (std::size_t k = 0; k < trace.energies.size(); ++k) {
    table.add_row({std::to_string(k), io::format_double(trace.energies[k]),
                   spins_to_string(trace.states[k])});
  }
  emit_outputs(ctx, table, header,
               json{{"converged", trace.converged},
                    {"steps", trace.steps},
                    {"sweeps", trace.sweeps},
                    {"energy_floor", hopfield::energy_floor(net)},
                    {"final_state", spins_to_string(trace.states.back())}});
  return 0;
}

int cmd_ising(const RunContext& ctx) {
  const int n = static_cast<int>(parse_int(require_key(ctx, "n"), "n"));
  if (n < 1) throw ValidationError("ising: n must be positive");
  const double coupling =
      parse_double(key_or(ctx, "coupling", "1"), "coupling");
  const double field = parse_double(key_or(ctx, "field", "0"), "field");
  const double kbt = parse_double(require_key(ctx, "kbt"), "kbt");
  const int sweeps =
      static_cast<int>(parse_int(key_or(ctx, "sweeps", "1000"), "sweeps"));

  Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, coupling);
  j.diagonal().setZero();
  const hopfield::IsingModel model(std::move(j),
                                   Eigen::VectorXd::Constant(n, field), kbt);

  hopfield::SpinState initial(n);
  const std::string start = key_or(ctx, "initial", "random");
  if (start == "up") {
    initial.setConstant(1);
  } else if (start == "down") {
    initial.setConstant(-1);
  } else if (start == "random") {
    Rng rng = Rng::substream(ctx.seed, "ising-initial");
    for (int i = 0; i < n; ++i) {
      initial(i) = rng.uniform01() < 0.5 ? -1 : 1;
    }
  } else {
    initial = parse_spins(start);
    if (initial.size() != n) {
      throw ValidationError("ising: initial state length does not match n");
    }
  }

  const hopfield::MetropolisRun run =
      hopfield::metropolis_run(model, initial, sweeps, ctx.seed);

  const std::vector<std::string> header = {"sweep", "energy", "magnetization"};
  io::CsvWriter table(header);
  for (std::size_t k = 0; k < run.energies.size(); ++k) {
    table.add_row({std::to_string(k), io::format_double(run.energies[k]),
                   io::format_double(run.magnetizations[k])});
  }
  emit_outputs(ctx, table, header,
               json{{"mean_abs_magnetization", run.mean_abs_magnetization},
                    {"final_state", spins_to_string(run.final_state)}});
  return 0;
}

reduction::ReduceOptions reduce_options_from_config(const RunContext& ctx) {
  reduction::ReduceOptions opts;
  if (ctx.config.count("segmentation")) {
    opts.segmentations =
        io::read_segmentations(key_or(ctx, "segmentation", ""));
  }
  opts.parameter = key_or(ctx, "parameter", "");
  opts.zero_tol = parse_double(key_or(ctx, "zero_tol", "1e-9"), "zero_tol");
  opts.gamma_sig = parse_double(key_or(ctx, "gamma_sig", "0.5"), "gamma_sig");
  return opts;
}

concepts::DetectorConfig detector_for(
    const std::vector<concepts::SequenceRecord>& records) {
  concepts::DetectorConfig detector;
  if (records.empty() || records.front().elements.empty()) return detector;
  for (const auto& [name, value] : records.front().elements.front()) {
    detector.parameters[name] = reduction::Scale::ratio;
  }
  return detector;
}

int cmd_reduce(const RunContext& ctx) {
  const auto records = io::read_dataset(require_key(ctx, "dataset"));
  const reduction::ReduceOptions opts = reduce_options_from_config(ctx);
  const concepts::DetectorConfig detector = detector_for(records);

  const std::vector<std::string> header = {
      "id",        "elements",  "nodes",     "links",
      "energy_in", "energy_out", "monotone"};
  io::CsvWriter table(header);
  bool breach = false;
  for (const auto& record : records) {
    const reduction::OrderedStructure structure =
        concepts::perceive(record, detector);
    const reduction::EnergyLedger before =
        reduction::structure_energy(structure, opts.energies);
    const reduction::ReducedStructure reduced =
        reduction::composite_reduce(structure, opts);
    const reduction::EnergyLedger after =
        reduction::structure_energy(reduced, opts.energies);
    const bool monotone = after.total <= before.total;
    breach = breach || !monotone;
    table.add_row({record.id, std::to_string(structure.elements.size()),
                   std::to_string(reduced.nodes.size()),
                   std::to_string(reduced.links.size()),
                   io::format_double(before.total),
                   io::format_double(after.total), monotone ? "1" : "0"});
  }
  emit_outputs(ctx, table, header, json{{"structures", records.size()}});
  if (breach) {
    std::cerr << "enlab reduce: energy increase detected\n";
    return 4;
  }
  return 0;
}

int cmd_concept_train(const RunContext& ctx) {
  const auto records = io::read_dataset(require_key(ctx, "dataset"));
  if (records.empty()) {
    throw ValidationError("concept-train: empty dataset");
  }
  const reduction::ReduceOptions opts = reduce_options_from_config(ctx);
  const concepts::DetectorConfig detector = detector_for(records);

  std::map<std::string, std::vector<reduction::OrderedStructure>> by_class;
  for (const auto& record : records) {
    if (!record.class_label) {
      throw ValidationError("concept-train: record '" + record.id +
                            "' has no class label");
    }
    by_class[*record.class_label].push_back(
        concepts::perceive(record, detector));
  }

  std::vector<concepts::ConceptGraph> store;
  const std::vector<std::string> header = {"class", "samples", "nodes",
                                           "links", "readout"};
  io::CsvWriter table(header);
  for (const auto& [label, samples] : by_class) {
    concepts::ConceptGraph con = concepts::train_concept(samples, label, opts);
    table.add_row({label, std::to_string(samples.size()),
                   std::to_string(con.nodes.size()),
                   std::to_string(con.links.size()),
                   io::format_double(concepts::readout(con).value)});
    store.push_back(std::move(con));
  }

  const fs::path store_path =
      key_or(ctx, "store", (ctx.out_dir / "concepts.json").string());
  fs::create_directories(store_path.parent_path().empty()
                             ? fs::path(".")
                             : store_path.parent_path());
  io::save_concept_store(store_path, store);
  emit_outputs(ctx, table, header, json{{"store", store_path.string()}});
  return 0;
}

int cmd_concept_infer(const RunContext& ctx) {
  const auto records = io::read_dataset(require_key(ctx, "dataset"));
  const auto store = io::load_concept_store(require_key(ctx, "store"));
  if (store.empty()) {
    throw ValidationError("concept-infer: store has no concepts");
  }
  const concepts::DetectorConfig detector = detector_for(records);

  std::vector<std::string> header = {"id", "true_class", "winner"};
  std::vector<const concepts::ConceptGraph*> concepts_sorted;
  for (const auto& con : store) concepts_sorted.push_back(&con);
  std::sort(concepts_sorted.begin(), concepts_sorted.end(),
            [](const auto* a, const auto* b) {
              return a->class_label < b->class_label;
            });
  for (const auto* con : concepts_sorted) {
    header.push_back("verdict_" + con->class_label);
    header.push_back("diversity_" + con->class_label);
  }

  io::CsvWriter table(header);
  for (const auto& record : records) {
    const reduction::OrderedStructure structure =
        concepts::perceive(record, detector);
    std::vector<std::pair<std::string, double>> responses;
    std::vector<std::string> cells = {record.id,
                                      record.class_label.value_or("")};
    std::vector<std::string> verdict_cells;
    for (const auto* con : concepts_sorted) {
      reduction::ReduceOptions opts;
      opts.segmentations = con->segmentations;
      opts.parameter = con->parameter;
      opts.gamma_sig = con->gamma_sig;
      const concepts::InterpretationResult result =
          concepts::interpret(structure, *con, opts);
      verdict_cells.push_back(concepts::to_string(result.verdict));
      verdict_cells.push_back(std::to_string(result.diversity));
      const double response = result.verdict == concepts::Verdict::Recognized
                                  ? concepts::readout(*con).value
                                  : 0.0;
      responses.emplace_back(con->class_label, response);
    }
    cells.push_back(concepts::wta(responses));
    cells.insert(cells.end(), verdict_cells.begin(), verdict_cells.end());
    table.add_row(std::move(cells));
  }
  emit_outputs(ctx, table, header, json{{"records", records.size()}});
  return 0;
}

int cmd_concept_diversity(const RunContext& ctx) {
  const auto store = io::load_concept_store(require_key(ctx, "store"));
  const std::string class_a = require_key(ctx, "class_a");
  const std::string class_b = require_key(ctx, "class_b");
  const auto find = [&](const std::string& label) -> const concepts::ConceptGraph& {
    for (const auto& con : store) {
      if (con.class_label == label) return con;
    }
    throw ValidationError("concept-diversity: class '" + label +
                          "' not in store");
  };
  const int distance = concepts::diversity(find(class_a), find(class_b));

  const std::vector<std::string> header = {"class_a", "class_b", "diversity"};
  io::CsvWriter table(header);
  table.add_row({class_a, class_b, std::to_string(distance)});
  emit_outputs(ctx, table, header, json::object());
  return 0;
}

int cmd_gen_dataset(const RunContext& ctx) {
  synthetic::StrokeDatasetSpec spec;
  spec.samples_per_class = static_cast<int>(
      parse_int(key_or(ctx, "samples_per_class", "50"), "samples_per_class"));
  spec.noise_amplitude =
      parse_double(key_or(ctx, "noise", "3"), "noise");
  spec.seed = ctx.seed;
  if (ctx.config.count("classes")) {
    for (const std::string& item : split(key_or(ctx, "classes", ""), ';')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        throw ValidationError("gen-dataset: classes must be label:v|v|v;...");
      }
      synthetic::StrokeClass cls;
      cls.label = item.substr(0, colon);
      for (const std::string& value : split(item.substr(colon + 1), '|')) {
        cls.orientations.push_back(parse_double(value, "classes"));
      }
      spec.classes.push_back(std::move(cls));
    }
  } else {
    spec.classes = synthetic::default_stroke_classes();
  }

  const synthetic::StrokeDataset dataset =
      synthetic::generate_stroke_dataset(spec);
  fs::create_directories(ctx.out_dir);
  const fs::path dataset_path =
      key_or(ctx, "dataset_out", (ctx.out_dir / "strokes.json").string());
  const fs::path segmentation_path = key_or(
      ctx, "segmentation_out", (ctx.out_dir / "segmentation.json").string());
  io::write_dataset(dataset_path, dataset.records);
  io::write_segmentations(segmentation_path,
                          {{dataset.segmentation.parameter, dataset.segmentation}});

  const std::vector<std::string> header = {"class", "samples", "prototype"};
  io::CsvWriter table(header);
  for (const auto& cls : spec.classes) {
    std::string prototype;
    for (std::size_t i = 0; i < cls.orientations.size(); ++i) {
      if (i) prototype += '|';
      prototype += io::format_double(cls.orientations[i]);
    }
    table.add_row({cls.label, std::to_string(spec.samples_per_class),
                   prototype});
  }
  json extra{{"dataset", dataset_path.string()},
             {"segmentation", segmentation_path.string()},
             {"noise_amplitude", spec.noise_amplitude},
             {"label_preservation_bound", dataset.label_preservation_bound},
             {"label_preserving", dataset.label_preserving}};
  if (!dataset.label_preserving) {
    extra["warning"] = "noise amplitude reaches the label-preservation bound";
  }
  emit_outputs(ctx, table, header, extra);
  return 0;
}

int dispatch(const RunContext& ctx) {
  if (ctx.command == "mcp-census") return cmd_mcp_census(ctx);
  if (ctx.command == "entropy-sweep") return cmd_entropy_sweep(ctx);
  if (ctx.command == "hopfield") return cmd_hopfield(ctx);
  if (ctx.command == "ising") return cmd_ising(ctx);
  if (ctx.command == "reduce") return cmd_reduce(ctx);
  if (ctx.command == "concept-train") return cmd_concept_train(ctx);
  if (ctx.command == "concept-infer") return cmd_concept_infer(ctx);
  if (ctx.command == "concept-diversity") return cmd_concept_diversity(ctx);
  if (ctx.command == "gen-dataset") return cmd_gen_dataset(ctx);
  throw ValidationError("unknown command '" + ctx.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-landscape experiment runner"};
  app.require_subcommand(1);

  RunContext ctx;
  std::string config_path;
  std::optional<std::uint64_t> seed_override;

  const std::vector<std::string> commands = {
      "mcp-census",    "entropy-sweep",    "hopfield",
      "ising",         "reduce",           "concept-train",
      "concept-infer", "concept-diversity", "gen-dataset"};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration file")
        ->required();
    sub->add_option("--seed", seed_override, "seed override");
    sub->add_option("--out", ctx.out_dir, "output directory");
    sub->add_option("--format", ctx.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  CLI11_PARSE(app, argc, argv);
  ctx.command = app.get_subcommands().front()->get_name();

  try {
    ctx.config = enlab::io::read_config(config_path);
    if (const auto it = ctx.config.find("seed"); it != ctx.config.end()) {
      ctx.seed = static_cast<std::uint64_t>(parse_int(it->second, "seed"));
    }
    if (seed_override) ctx.seed = *seed_override;
    return dispatch(ctx);
  } catch (const enlab::CapacityError& e) {
    std::cerr << "enlab: capacity error: " << e.what() << "\n";
    return 3;
  } catch (const enlab::InvariantBreach& e) {
    std::cerr << "enlab: invariant breach: " << e.what() << "\n";
    return 4;
  } catch (const enlab::ValidationError& e) {
    std::cerr << "enlab: validation error: " << e.what() << "\n";
    return 2;
  } catch (const enlab::DomainError& e) {
    std::cerr << "enlab: domain error: " << e.what() << "\n";
    return 2;
  } catch (const enlab::PreconditionError& e) {
    std::cerr << "enlab: precondition error: " << e.what() << "\n";
    return 2;
  } catch (const enlab::NumericError& e) {
    std::cerr << "enlab: numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "enlab: error: " << e.what() << "\n";
    return 1;
  }
}
