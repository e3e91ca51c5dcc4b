#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

#include "enlab/core.hpp"

namespace enlab::entropy {

/// Normalization tolerance for probability vectors and joint distributions.
inline constexpr double kDistributionTolerance = 1e-12;

namespace detail {

inline double log_base(double x, LogBase base) {
  return base == LogBase::two ? std::log2(x) : std::log(x);
}

template <class Derived>
void check_probability_vector(const Eigen::MatrixBase<Derived>& p) {
  if (p.size() == 0) {
    throw ValidationError("probability vector: empty");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double value = static_cast<double>(p(i));
    if (value < 0.0 || !std::isfinite(value)) {
      throw ValidationError("probability vector: entries must be finite and >= 0");
    }
    sum += value;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    throw ValidationError("probability vector: entries must sum to 1");
  }
}

template <class Derived>
void check_joint(const Eigen::MatrixBase<Derived>& joint) {
  if (joint.rows() == 0 || joint.cols() == 0) {
    throw ValidationError("joint distribution: empty");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < joint.rows(); ++i) {
    for (Eigen::Index j = 0; j < joint.cols(); ++j) {
      const double cell = static_cast<double>(joint(i, j));
      if (cell < 0.0 || !std::isfinite(cell)) {
        throw ValidationError("joint distribution: cells must be finite and >= 0");
      }
      sum += cell;
    }
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    throw ValidationError("joint distribution: cells must sum to 1");
  }
}

// -sum p log p with the 0*log 0 = 0 continuity convention, no validation.
template <class Derived>
double plogp_sum(const Eigen::MatrixBase<Derived>& p, LogBase base) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double value = static_cast<double>(p(i));
    if (value > 0.0) {
      h -= value * log_base(value, base);
    }
  }
  return h;
}

}  // namespace detail

/// H = -sum p_i log p_i. Informational entropy; defaults to bits.
template <class Derived>
double shannon_entropy(const Eigen::MatrixBase<Derived>& p,
                       LogBase base = LogBase::two) {
  detail::check_probability_vector(p);
  return detail::plogp_sum(p, base);
}

/// S = k_B ln(omega) over equiprobable microstates.
inline double boltzmann_entropy(std::uint64_t omega,
                                const PhysicalConstants& consts = {}) {
  enlab::detail::check_constants(consts);
  if (omega == 0) {
    throw DomainError("boltzmann_entropy: no accessible microstate (omega = 0)");
  }
  return consts.k_b * std::log(static_cast<double>(omega));
}

/// S = -k_B sum p_i ln p_i; reduces to boltzmann_entropy for uniform p.
template <class Derived>
double gibbs_entropy(const Eigen::MatrixBase<Derived>& p,
                     const PhysicalConstants& consts = {}) {
  enlab::detail::check_constants(consts);
  detail::check_probability_vector(p);
  return consts.k_b * detail::plogp_sum(p, LogBase::e);
}

/// S = -sum p_i ln p_i over the density-matrix eigenvalues (nats).
template <class Derived>
double von_neumann_entropy(const Eigen::MatrixBase<Derived>& eigenvalues) {
  detail::check_probability_vector(eigenvalues);
  return detail::plogp_sum(eigenvalues, LogBase::e);
}

/// Computation routes for mutual information; all three agree analytically,
/// and the test suite holds them to 1e-10 of each other.
enum class MiRoute {
  joint_decomposition,  // H(X) + H(Y) - H(X,Y)
  conditional_on_y,     // H(X) - H(X|Y)
  conditional_on_x,     // H(Y) - H(Y|X)
};

/// I(X;Y) from a joint distribution. Rows index X outcomes, columns Y.
template <class Derived>
double mutual_information(const Eigen::MatrixBase<Derived>& joint,
                          LogBase base = LogBase::two,
                          MiRoute route = MiRoute::joint_decomposition) {
  detail::check_joint(joint);
  const Eigen::Index rows = joint.rows();
  const Eigen::Index cols = joint.cols();

  Eigen::VectorXd marginal_x = Eigen::VectorXd::Zero(rows);
  Eigen::VectorXd marginal_y = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double cell = static_cast<double>(joint(i, j));
      marginal_x(i) += cell;
      marginal_y(j) += cell;
    }
  }

  const auto joint_entropy = [&] {
    double h = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        const double cell = static_cast<double>(joint(i, j));
        if (cell > 0.0) h -= cell * detail::log_base(cell, base);
      }
    }
    return h;
  };

  // H(A|B) = -sum_ij p_ij log(p_ij / p_b(j-part)).
  const auto conditional_entropy = [&](bool x_given_y) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        const double cell = static_cast<double>(joint(i, j));
        if (cell <= 0.0) continue;
        const double conditioning = x_given_y ? marginal_y(j) : marginal_x(i);
        h -= cell * detail::log_base(cell / conditioning, base);
      }
    }
    return h;
  };

  switch (route) {
    case MiRoute::conditional_on_y:
      return detail::plogp_sum(marginal_x, base) - conditional_entropy(true);
    case MiRoute::conditional_on_x:
      return detail::plogp_sum(marginal_y, base) - conditional_entropy(false);
    case MiRoute::joint_decomposition:
    default:
      return detail::plogp_sum(marginal_x, base) +
             detail::plogp_sum(marginal_y, base) - joint_entropy();
  }
}

/// Minimum dissipation for erasing one bit: k_B * T * ln 2.
inline double landauer_energy(double temperature,
                              const PhysicalConstants& consts = {}) {
  enlab::detail::check_constants(consts);
  if (temperature < 0.0) {
    throw DomainError("landauer_energy: temperature must be >= 0");
  }
  return consts.k_b * temperature * std::numbers::ln2_v<double>;
}

}  // namespace enlab::entropy
