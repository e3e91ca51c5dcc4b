// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "enlab/concepts.hpp"
#include "enlab/entropy.hpp"
#include "enlab/hopfield.hpp"
#include "enlab/io.hpp"
#include "enlab/mcp.hpp"
#include "enlab/reduction.hpp"
#include "enlab/rng.hpp"
#include "enlab/synthetic.hpp"
#include "support.hpp"

using namespace enlab;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

mcp::McpNeuron random_neuron(Rng& rng, int max_inputs) {
  const auto n = static_cast<Eigen::Index>(rng.uniform_int(1, max_inputs));
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = rng.uniform(-1.0, 1.0);
  return mcp::McpNeuron(w, rng.uniform(-0.5, 0.5));
}

hopfield::SpinState random_spins(Rng& rng, int n) {
  hopfield::SpinState s(n);
  for (int i = 0; i < n; ++i) s(i) = rng.uniform01() < 0.5 ? -1 : 1;
  return s;
}

bool criterion_entropy_maximum(std::string& detail) {
  const std::vector<double> grid = {-1.0, -0.5, 0.0, 0.5, 1.0};
  double max_h = 0.0;
  std::vector<std::pair<Rational, double>> rows;
  for (const double w1 : grid) {
    for (const double w2 : grid) {
      Eigen::VectorXd w(2);
      w << w1, w2;
      const mcp::McpNeuron neuron(w, 0.0);
      const Rational p = mcp::microstate_census(neuron).p_act;
      const double h = mcp::entropy_report(neuron).h_bits;
      const double p_value = boost::rational_cast<double>(p);
      double closed = 0.0;
      if (p_value > 0.0) closed -= p_value * std::log2(p_value);
      if (p_value < 1.0) closed -= (1.0 - p_value) * std::log2(1.0 - p_value);
      if (std::abs(h - closed) > 1e-12) {
        detail = "closed form mismatch";
        return false;
      }
      rows.emplace_back(p, h);
      max_h = std::max(max_h, h);
    }
  }
  int balanced = 0;
  for (const auto& [p, h] : rows) {
    const bool argmax = h == max_h;
    if (argmax != (p == Rational(1, 2))) {
      detail = "argmax row without P_act = 1/2";
      return false;
    }
    if (argmax) ++balanced;
  }
  std::ostringstream note;
  note << balanced << " argmax rows, all at P_act = 1/2, max H = " << max_h;
  detail = note.str();
  return balanced > 0 && max_h == 1.0;
}

bool criterion_conditional_equivalence(std::string& detail) {
  Rng rng(20250810);
  for (int trial = 0; trial < 1000; ++trial) {
    const mcp::McpNeuron neuron = random_neuron(rng, 12);
    if (mcp::microstate_census(neuron).p_act !=
        mcp::conditional_activation(neuron).total) {
      detail = "rational mismatch at trial " + std::to_string(trial);
      return false;
    }
  }
  detail = "1000/1000 exact rational matches";
  return true;
}

bool criterion_entropy_consistency(std::string& detail) {
  Rng rng(20250810);  // same stream as criterion 2: the same 1000 neurons
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const mcp::McpNeuron neuron = random_neuron(rng, 12);
    const mcp::MicrostateCensus census = mcp::microstate_census(neuron);
    if (census.omega_act == 0) continue;
    const mcp::EntropyReport report = mcp::entropy_report(neuron);
    const double recovered = std::exp(*report.s_act);
    const double expected = std::pow(2.0, census.n) *
                            boost::rational_cast<double>(census.p_act);
    worst = std::max(worst, std::abs(recovered - expected));
    if (worst > 1e-9) {
      detail = "deviation " + std::to_string(worst);
      return false;
    }
  }
  std::ostringstream note;
  note << "worst |exp(S)-2^N P| = " << worst;
  detail = note.str();
  return true;
}

bool criterion_hopfield_monotonicity(std::string& detail) {
  Rng rng(424242);
  long long flips = 0;
  for (int net_index = 0; net_index < 500; ++net_index) {
    const int n = static_cast<int>(rng.uniform_int(2, 25));
    std::vector<hopfield::SpinState> patterns;
    const auto pattern_count = rng.uniform_int(1, 3);
    for (int k = 0; k < pattern_count; ++k) {
      patterns.push_back(random_spins(rng, n));
    }
    const hopfield::HopfieldNet net = hopfield::hebbian_weights(patterns, n);
    for (int start = 0; start < 500; ++start) {
      const hopfield::RecallTrace trace =
          hopfield::recall(net, random_spins(rng, n),
                           hopfield::UpdateSchedule::sequential, 200);
      if (!trace.converged) {
        detail = "non-converged recall";
        return false;
      }
      flips += trace.steps;
      for (std::size_t k = 1; k < trace.energies.size(); ++k) {
        if (trace.energies[k] > trace.energies[k - 1]) {
          detail = "energy increase observed";
          return false;
        }
      }
    }
  }

  int recovered = 0;
  int trials = 0;
  for (int round = 0; round < 60; ++round) {
    const int n = static_cast<int>(rng.uniform_int(5, 25));
    const hopfield::SpinState pattern = random_spins(rng, n);
    const hopfield::HopfieldNet net = hopfield::hebbian_weights({pattern}, n);
    for (int bit = 0; bit < n; ++bit) {
      hopfield::SpinState corrupted = pattern;
      corrupted(bit) = -corrupted(bit);
      const hopfield::RecallTrace trace = hopfield::recall(net, corrupted);
      ++trials;
      if (trace.converged && trace.states.back() == pattern) ++recovered;
    }
  }
  const double rate = static_cast<double>(recovered) / trials;
  std::ostringstream note;
  note << "250000 recalls monotone (" << flips << " flips); 1-bit recovery "
       << recovered << "/" << trials;
  detail = note.str();
  return rate >= 0.95;
}

bool criterion_ising_ordering(std::string& detail) {
  const int n = 10;
  Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0);
  j.diagonal().setZero();
  const hopfield::IsingModel cold(j, Eigen::VectorXd::Zero(n), 0.5);
  const hopfield::IsingModel hot(j, Eigen::VectorXd::Zero(n), 100.0);

  double cold_sum = 0.0;
  double hot_sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng init = Rng::substream(seed, "acceptance-ising-init");
    const hopfield::SpinState initial = random_spins(init, n);
    cold_sum += hopfield::metropolis_run(cold, initial, 10000, seed)
                    .mean_abs_magnetization;
    hot_sum += hopfield::metropolis_run(hot, initial, 10000, seed)
                   .mean_abs_magnetization;
  }
  const double cold_mean = cold_sum / 20.0;
  const double hot_mean = hot_sum / 20.0;
  std::ostringstream note;
  note << "mean |m| = " << cold_mean << " at k_BT=0.5, " << hot_mean
       << " at k_BT=100";
  detail = note.str();
  return cold_mean > 0.9 && hot_mean < 0.35;
}

bool criterion_lyapunov_reduction(std::string& detail) {
  Rng rng(77007);
  int strict = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const testsupport::RandomStructure generated =
        testsupport::random_structure(rng, 64, 3);
    reduction::ReduceOptions opts;
    opts.segmentations = generated.segmentations;

    const double before =
        reduction::structure_energy(generated.structure).total;
    const reduction::ReducedStructure reduced =
        reduction::composite_reduce(generated.structure, opts);
    const double after = reduction::structure_energy(reduced).total;

    if (after > before) {
      detail = "energy increased at trial " + std::to_string(trial);
      return false;
    }
    const bool compressed =
        reduced.nodes.size() < generated.structure.elements.size();
    if (compressed && !(after < before)) {
      detail = "compression without strict descent";
      return false;
    }
    if (after < before) ++strict;

    if (!testsupport::same_structure(reduction::sp_reduce(reduced), reduced)) {
      detail = "sp_reduce not idempotent at trial " + std::to_string(trial);
      return false;
    }
  }
  std::ostringstream note;
  note << "10000 structures, " << strict
       << " strict descents, idempotence 100%";
  detail = note.str();
  return true;
}

bool criterion_weight_laws(std::string& detail) {
  double previous_s = -1e300;
  double previous_e = 1e300;
  for (int k = 1; k <= 100; ++k) {
    const reduction::SignificanceStats stats =
        reduction::structural_weight(k, 100);
    const double s = reduction::entropy_of_w(stats, 4096);
    const double e = reduction::energy_vs_w(stats, 0.0, 1.0, 4096);
    if (!(s > previous_s) || !(e < previous_e)) {
      detail = "monotonicity violated at w = " + std::to_string(k / 100.0);
      return false;
    }
    previous_s = s;
    previous_e = e;

    const double w = k / 100.0;
    const double h = 1e-6 * w;
    const auto energy_at = [&](double wv) {
      return -(std::log(4096.0) + std::log(wv));
    };
    const double slope = (energy_at(w + h) - energy_at(w - h)) / (2.0 * h);
    const double closed = reduction::energy_vs_w_derivative(stats, 1.0);
    if (std::abs(slope - closed) > 1e-6 * std::abs(closed) || closed >= 0.0) {
      detail = "slope mismatch at w = " + std::to_string(w);
      return false;
    }
  }
  detail = "100 sample points, both laws monotone, slopes within 1e-6";
  return true;
}

bool criterion_concept_pipeline(std::string& detail) {
  synthetic::StrokeDatasetSpec spec;
  spec.classes = synthetic::default_stroke_classes();
  spec.samples_per_class = 50;
  spec.noise_amplitude = 3.0;
  spec.seed = 8;
  const synthetic::StrokeDataset dataset =
      synthetic::generate_stroke_dataset(spec);
  if (!dataset.label_preserving) {
    detail = "noise amplitude not sub-threshold";
    return false;
  }

  reduction::ReduceOptions opts;
  opts.parameter = dataset.segmentation.parameter;
  opts.segmentations[dataset.segmentation.parameter] = dataset.segmentation;
  const concepts::DetectorConfig detector = synthetic::stroke_detector();

  std::map<std::string, std::vector<concepts::OrderedStructure>> by_class;
  for (const auto& record : dataset.records) {
    by_class[*record.class_label].push_back(
        concepts::perceive(record, detector));
  }
  std::vector<concepts::ConceptGraph> store;
  for (const auto& [label, samples] : by_class) {
    store.push_back(concepts::train_concept(samples, label, opts));
  }

  const auto verdict_table = [&](const std::vector<concepts::ConceptGraph>&
                                     concepts_in_use) {
    std::vector<std::string> table;
    for (const auto& record : dataset.records) {
      const concepts::OrderedStructure input =
          concepts::perceive(record, detector);
      std::vector<std::pair<std::string, double>> responses;
      std::string row = record.id;
      for (const auto& con : concepts_in_use) {
        const concepts::InterpretationResult result =
            concepts::interpret(input, con, opts);
        row += "," + std::string(concepts::to_string(result.verdict)) + ":" +
               std::to_string(result.diversity);
        const bool recognized =
            result.verdict == concepts::Verdict::Recognized;
        responses.emplace_back(con.class_label,
                               recognized ? concepts::readout(con).value : 0.0);
        if (con.class_label == *record.class_label &&
            (!recognized || result.diversity != 0)) {
          return std::vector<std::string>{};
        }
      }
      if (concepts::wta(responses) != *record.class_label) {
        return std::vector<std::string>{};
      }
      table.push_back(row);
    }
    return table;
  };

  const std::vector<std::string> first = verdict_table(store);
  if (first.empty()) {
    detail = "a sample missed its own class concept or the WTA winner";
    return false;
  }

  const auto store_path = std::filesystem::temp_directory_path() /
                          "enlab-acceptance-concepts.json";
  io::save_concept_store(store_path, store);
  const std::vector<concepts::ConceptGraph> reloaded =
      io::load_concept_store(store_path);
  const std::vector<std::string> second = verdict_table(reloaded);
  std::filesystem::remove(store_path);
  if (first != second) {
    detail = "verdict tables differ after the store round-trip";
    return false;
  }
  detail = "150/150 recognized with diversity 0, WTA exact, round-trip stable";
  return true;
}

bool criterion_mutual_information(std::string& detail) {
  Rng rng(1001);
  double worst_route = 0.0;
  double worst_product = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rows = static_cast<Eigen::Index>(rng.uniform_int(1, 8));
    const auto cols = static_cast<Eigen::Index>(rng.uniform_int(1, 8));
    Eigen::MatrixXd joint(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        joint(i, j) = rng.uniform01() + 1e-9;
      }
    }
    joint /= joint.sum();

    const double a = entropy::mutual_information(joint);
    const double b = entropy::mutual_information(
        joint, LogBase::two, entropy::MiRoute::conditional_on_y);
    const double c = entropy::mutual_information(
        joint, LogBase::two, entropy::MiRoute::conditional_on_x);
    worst_route = std::max({worst_route, std::abs(a - b), std::abs(a - c)});

    const Eigen::VectorXd px = joint.rowwise().sum();
    const Eigen::VectorXd py = joint.colwise().sum();
    Eigen::MatrixXd product = px * py.transpose();
    product /= product.sum();
    worst_product =
        std::max(worst_product,
                 std::abs(entropy::mutual_information(product)));
  }
  std::ostringstream note;
  note << "route spread " << worst_route << ", product |I| " << worst_product;
  detail = note.str();
  return worst_route <= 1e-10 && worst_product <= 1e-12;
}

bool criterion_landauer(std::string& detail) {
  const double joules =
      entropy::landauer_energy(300.0, PhysicalConstants::si());
  const double reference = 2.871e-21;
  const double relative = std::abs(joules - reference) / reference;
  std::ostringstream note;
  note << "E = " << joules << " J, relative offset " << relative;
  detail = note.str();
  return relative < 1e-3;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"binary response entropy peaks exactly at P_act = 1/2 on the N=2 grid",
       criterion_entropy_maximum},
      {"grouped conditional activation equals the exhaustive census exactly",
       criterion_conditional_equivalence},
      {"activation entropy consistency exp(S/k_B) = 2^N P_act",
       criterion_entropy_consistency},
      {"recall energy never increases and 1-bit corruption is repaired",
       criterion_hopfield_monotonicity},
      {"ferromagnet orders at k_BT = 0.5 and disorders at k_BT = 100",
       criterion_ising_ordering},
      {"composite reduction is a Lyapunov descent and idempotent",
       criterion_lyapunov_reduction},
      {"entropy grows and energy falls monotonically in the weight w",
       criterion_weight_laws},
      {"stroke classes are recognized, WTA-selected and store-stable",
       criterion_concept_pipeline},
      {"mutual-information routes agree and product joints carry zero",
       criterion_mutual_information},
      {"one-bit erasure at 300 K costs 2.871e-21 J",
       criterion_landauer},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[k].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %02zu %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", k + 1,
                criteria[k].name.c_str(), seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
