#include "enlab/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "enlab/rng.hpp"

namespace enlab::landscape {

void EnergyLandscape::validate() const {
  std::set<std::string> ids;
  for (const auto& unit : units) {
    if (!(unit.tr2 > unit.u_rest)) {
      throw ValidationError("landscape: unit '" + unit.id +
                            "' must have tr2 > u_rest");
    }
    if (!ids.insert(unit.id).second) {
      throw ValidationError("landscape: duplicate unit id '" + unit.id + "'");
    }
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& bond : bonds) {
    if (!ids.count(bond.from) || !ids.count(bond.to)) {
      throw ValidationError("landscape: bond endpoints must reference units");
    }
    if (!(bond.tr3 >= bond.w_rest)) {
      throw ValidationError("landscape: bond must have tr3 >= w_rest");
    }
    auto key = std::minmax(bond.from, bond.to);
    if (!pairs.insert({key.first, key.second}).second) {
      throw ValidationError("landscape: duplicate bond between '" + bond.from +
                            "' and '" + bond.to + "'");
    }
  }
}

const LandscapeUnit* EnergyLandscape::find_unit(const std::string& id) const {
  for (const auto& unit : units) {
    if (unit.id == id) return &unit;
  }
  return nullptr;
}

double total_energy(const EnergyLandscape& l) {
  l.validate();
  double total = 0.0;
  for (const auto& unit : l.units) total += unit.u_rest + unit.delta_u;
  for (const auto& bond : l.bonds) {
    if (bond.intact) total += bond.w_rest;
  }
  return total;
}

double rest_threshold(const EnergyLandscape& l) {
  l.validate();
  for (const auto& unit : l.units) {
    if (unit.delta_u != 0.0) {
      throw PreconditionError("rest_threshold: system not at rest (delta_u != 0)");
    }
  }
  double tr1 = 0.0;
  for (const auto& unit : l.units) tr1 += unit.u_rest;
  for (const auto& bond : l.bonds) tr1 += bond.w_rest;
  return tr1;
}

bool is_activated(const LandscapeUnit& u) {
  return (u.u_rest + u.delta_u) > u.tr2;
}

bool bond_stable(const LandscapeBond& b, double delta_u) {
  return (b.w_rest + delta_u) <= b.tr3;
}

InjectionResult inject_energy(const EnergyLandscape& l,
                              const std::map<std::string, double>& allocation) {
  l.validate();
  for (const auto& [id, amount] : allocation) {
    if (amount < 0.0) {
      throw ValidationError("inject_energy: allocations must be >= 0");
    }
    if (l.find_unit(id) == nullptr) {
      throw ValidationError("inject_energy: unknown unit id '" + id + "'");
    }
  }

  InjectionResult result;
  result.landscape = l;

  std::map<std::string, double> unit_delta;
  for (auto& unit : result.landscape.units) {
    const bool was_active = is_activated(unit);
    if (auto it = allocation.find(unit.id); it != allocation.end()) {
      unit.delta_u += it->second;
    }
    unit_delta[unit.id] = unit.delta_u;
    if (!was_active && is_activated(unit)) {
      result.events.push_back({InjectionEvent::Kind::activated, unit.id});
    }
  }

  for (auto& bond : result.landscape.bonds) {
    if (!bond.intact) {
      ++result.broken_bonds;
      continue;
    }
    const double load = unit_delta[bond.from] + unit_delta[bond.to];
    if (!bond_stable(bond, load)) {
      bond.intact = false;
      ++result.broken_bonds;
      result.events.push_back(
          {InjectionEvent::Kind::bond_broken, bond.from + "-" + bond.to});
    }
  }
  if (!result.landscape.bonds.empty()) {
    result.broken_fraction =
        static_cast<double>(result.broken_bonds) /
        static_cast<double>(result.landscape.bonds.size());
  }
  return result;
}

EnergyLandscape from_weight_matrix(const Eigen::MatrixXd& weights,
                                   double capacity) {
  if (!(capacity > 0.0)) {
    throw ValidationError("from_weight_matrix: capacity must be positive");
  }
  EnergyLandscape l;
  for (Eigen::Index j = 0; j < weights.cols(); ++j) {
    LandscapeUnit unit;
    unit.id = "u" + std::to_string(j);
    unit.u_rest = weights.col(j).sum();
    unit.tr2 = unit.u_rest + capacity;
    l.units.push_back(unit);
  }
  l.validate();
  return l;
}

std::vector<double> langevin_descent(const LangevinConfig& cfg, double x0) {
  if (!(cfg.dt > 0.0)) {
    throw ValidationError("langevin_descent: dt must be positive");
  }
  if (cfg.noise_scale < 0.0) {
    throw ValidationError("langevin_descent: noise scale must be >= 0");
  }
  if (cfg.steps < 0) {
    throw ValidationError("langevin_descent: steps must be >= 0");
  }
  if (!cfg.potential || !cfg.gradient) {
    throw ValidationError("langevin_descent: potential and gradient required");
  }

  Rng rng = Rng::substream(cfg.seed, "langevin");
  std::vector<double> trajectory;
  trajectory.reserve(static_cast<std::size_t>(cfg.steps) + 1);

  double x = x0;
  trajectory.push_back(x);
  const double sqrt_dt = std::sqrt(cfg.dt);
  for (int step = 0; step < cfg.steps; ++step) {
    if (!std::isfinite(cfg.potential(x))) {
      throw NumericError("langevin_descent: non-finite potential value", step);
    }
    x = x - cfg.gradient(x) * cfg.dt + cfg.noise_scale * sqrt_dt * rng.gaussian();
    if (!std::isfinite(x)) {
      throw NumericError("langevin_descent: trajectory diverged", step);
    }
    trajectory.push_back(x);
  }
  if (!trajectory.empty() && !std::isfinite(cfg.potential(x))) {
    throw NumericError("langevin_descent: non-finite potential value",
                       cfg.steps);
  }
  return trajectory;
}

}  // namespace enlab::landscape
