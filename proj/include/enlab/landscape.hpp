#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "enlab/core.hpp"

namespace enlab::landscape {

/// Potential well: resting energy, activation threshold (capacity limit)
/// and the current additional energy.
struct LandscapeUnit {
  std::string id;
  double u_rest = 0.0;
  double tr2 = 0.0;      // activation threshold; must exceed u_rest
  double delta_u = 0.0;  // current additional energy
};

/// Energy channel between two units with a structural stability threshold.
struct LandscapeBond {
  std::string from;
  std::string to;
  double w_rest = 0.0;
  double tr3 = 0.0;  // structural stability threshold; >= w_rest
  bool intact = true;
};

/// Distribution of internal energy over wells and channels.
struct EnergyLandscape {
  std::vector<LandscapeUnit> units;
  std::vector<LandscapeBond> bonds;

  void validate() const;
  const LandscapeUnit* find_unit(const std::string& id) const;
};

/// Sum of unit energies (rest + additional) plus intact-bond rest energies.
double total_energy(const EnergyLandscape& l);

/// Rest threshold Tr1: the landscape total with all fluctuations zero.
/// Requires the system to actually be at rest.
double rest_threshold(const EnergyLandscape& l);

/// Strict activation rule (u_rest + delta_u) > tr2.
bool is_activated(const LandscapeUnit& u);

/// Inclusive stability rule (w_rest + delta_u) <= tr3.
bool bond_stable(const LandscapeBond& b, double delta_u);

struct InjectionEvent {
  enum class Kind { activated, bond_broken };
  Kind kind;
  std::string id;  // unit id, or "from-to" for bonds
};

struct InjectionResult {
  EnergyLandscape landscape;
  std::vector<InjectionEvent> events;
  int broken_bonds = 0;
  double broken_fraction = 0.0;  // raw statistic for bifurcation analysis
};

/// Pours energy onto the landscape: adds the allocation to each unit's
/// delta_u, then re-evaluates unit activation and bond stability. A bond is
/// loaded with the combined additional energy of its endpoints.
InjectionResult inject_energy(const EnergyLandscape& l,
                              const std::map<std::string, double>& allocation);

/// Landscape of a weight matrix seen as a set of isolated wells: unit j
/// rests at the sum of column j, with a well capacity above rest and no
/// bonds. Its rest threshold equals the total weight sum.
EnergyLandscape from_weight_matrix(const Eigen::MatrixXd& weights,
                                   double capacity = 1.0);

struct LangevinConfig {
  std::function<double(double)> potential;
  std::function<double(double)> gradient;
  double dt = 1e-2;
  double noise_scale = 0.0;
  std::uint64_t seed = 0;
  int steps = 0;
};

/// Euler-Maruyama descent x <- x - grad(x) dt + noise sqrt(dt) gauss.
/// Returns the trajectory including x0; deterministic given the seed.
std::vector<double> langevin_descent(const LangevinConfig& cfg, double x0);

}  // namespace enlab::landscape
