#pragma once

// Split Lennard-Jones potential with the elastic confinement correction,
// the cluster-size formula and a multi-start cluster energy minimizer.
//
//   V_att(r) = -eps (g/r)^6 + gamma r^2 / 2,   V_rep(r) = eps (g/r)^12
//   N ~ (3 eps / (gamma g^2))^(3/5)

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "inerton/errors.hpp"

namespace inerton {

class KeyValueConfig;

template <typename Scalar>
struct ClusterPotential {
  Scalar epsilon{1};  ///< bond energy
  Scalar g{1};        ///< bond length
  Scalar gamma{0};    ///< elasticity of the confinement term

  void validate() const {
    if (!(epsilon > Scalar(0)) || !(g > Scalar(0)) || !(gamma >= Scalar(0)) ||
        !std::isfinite(epsilon) || !std::isfinite(g) || !std::isfinite(gamma)) {
      throw DomainError("cluster", "validate", "requires epsilon > 0, g > 0, gamma >= 0");
    }
  }
};

using ClusterPotentiald = ClusterPotential<double>;

template <typename Scalar>
Scalar v_att(Scalar r, const ClusterPotential<Scalar>& p) {
  if (!(r > Scalar(0))) throw DomainError("cluster", "v_att", "r must be > 0");
  const Scalar s = p.g / r;
  const Scalar s3 = s * s * s;
  return -p.epsilon * s3 * s3 + p.gamma * r * r / Scalar(2);
}

template <typename Scalar>
Scalar v_rep(Scalar r, const ClusterPotential<Scalar>& p) {
  if (!(r > Scalar(0))) throw DomainError("cluster", "v_rep", "r must be > 0");
  const Scalar s = p.g / r;
  const Scalar s3 = s * s * s;
  const Scalar s6 = s3 * s3;
  return p.epsilon * s6 * s6;
}

/// Pair energy without the elastic part: eps[(g/r)^12 - (g/r)^6].
template <typename Scalar>
Scalar lj_pair(Scalar r, const ClusterPotential<Scalar>& p) {
  if (!(r > Scalar(0))) throw DomainError("cluster", "lj_pair", "r must be > 0");
  const Scalar s = p.g / r;
  const Scalar s3 = s * s * s;
  const Scalar s6 = s3 * s3;
  return p.epsilon * s6 * (s6 - Scalar(1));
}

/// Real-valued (3 eps / (gamma g^2))^(3/5); callers round.
template <typename Scalar>
Scalar cluster_size_formula(const ClusterPotential<Scalar>& p) {
  if (!(p.gamma > Scalar(0))) {
    throw DomainError("cluster", "cluster_size_formula",
                      "gamma = 0 leaves the cluster size unbounded");
  }
  if (!(p.epsilon > Scalar(0)) || !(p.g > Scalar(0))) {
    throw DomainError("cluster", "cluster_size_formula", "requires epsilon > 0, g > 0");
  }
  return std::pow(Scalar(3) * p.epsilon / (p.gamma * p.g * p.g), Scalar(3) / Scalar(5));
}

/// gamma for which the size formula yields `n_target`.
template <typename Scalar>
Scalar invert_for_gamma(std::int64_t n_target, Scalar epsilon, Scalar g) {
  if (n_target < 1 || !(epsilon > Scalar(0)) || !(g > Scalar(0))) {
    throw DomainError("cluster", "invert_for_gamma",
                      "requires N_target >= 1, epsilon > 0, g > 0");
  }
  const Scalar n = static_cast<Scalar>(n_target);
  return Scalar(3) * epsilon / (std::pow(n, Scalar(5) / Scalar(3)) * g * g);
}

enum class ElasticMode {
  centroid,  ///< sum_i gamma |x_i - centroid|^2 / 2
  pairwise,  ///< sum_{i<j} gamma r_ij^2 / 2
};

/// Positions stored column-wise, dim x N.
struct ClusterConfiguration {
  Eigen::MatrixXd positions;

  int size() const { return static_cast<int>(positions.cols()); }
  int dim() const { return static_cast<int>(positions.rows()); }
};

struct MinimizerSettings {
  int restarts{32};
  int max_iterations{20000};
  /// Convergence when every gradient component is below this (units eps/g).
  double gradient_tolerance{1e-9};
  ElasticMode elastic_mode{ElasticMode::centroid};
};

struct ClusterResult {
  ClusterConfiguration configuration;
  double energy{0};
  bool converged{false};
  int iterations{0};
  /// Energy of every starting configuration, in restart order.
  std::vector<double> start_energies;
};

class ClusterConvergenceError : public NumericalError {
 public:
  ClusterConvergenceError(const std::string& message, ClusterResult best)
      : NumericalError("cluster", "minimize_cluster_energy", message), best_(std::move(best)) {}

  const ClusterResult& best() const noexcept { return best_; }

 private:
  ClusterResult best_;
};

double cluster_energy(const ClusterConfiguration& config, const ClusterPotentiald& p,
                      ElasticMode mode = ElasticMode::centroid);

/// Energy and analytic gradient (same shape as positions).
double cluster_energy_gradient(const Eigen::MatrixXd& positions, const ClusterPotentiald& p,
                               ElasticMode mode, Eigen::MatrixXd& gradient);

/// Multi-start local minimization. Each restart draws a random non-overlapping
/// configuration from `seed`; `extra_starts` are minimized as additional
/// restarts. Returns the lowest converged result; throws
/// ClusterConvergenceError carrying the best-so-far if no restart converges.
ClusterResult minimize_cluster_energy(int n_atoms, const ClusterPotentiald& p, int dim,
                                      std::uint64_t seed, const MinimizerSettings& settings = {},
                                      std::span<const ClusterConfiguration> extra_starts = {});

struct ClusterSizeEntry {
  int N{0};
  double energy{0};
  double energy_per_atom{0};
};

struct ClusterSweep {
  std::vector<ClusterSizeEntry> table;
  std::vector<ClusterConfiguration> minima;
  int n_numeric{0};
};

/// Minimizes every N in [1, N_max] and returns the size with the lowest
/// energy per atom (smallest N on ties). Each N after the first also restarts
/// from the (N-1) minimum with one atom added.
ClusterSweep optimal_cluster_size(const ClusterPotentiald& p, int n_max, int dim,
                                  std::uint64_t seed, const MinimizerSettings& settings = {});

/// Sweep table CSV `N,E_total,E_per_atom`.
void write_cluster_csv(std::ostream& out, const ClusterSweep& sweep);

}  // namespace inerton
