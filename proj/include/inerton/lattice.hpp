#pragma once

// Force matrix with inerton-overlap correction and acoustic dispersion for a
// monatomic chain (dim = 1) or simple cubic lattice (dim = 3) with
// nearest-neighbour springs.
//
//   W_ab(k) = V_ab(k) + t_ab * sum_a' t_a'b(k) e_a' / e_b
//
// where t is the inverse inerton-correction matrix. The factor outside the
// sum is the constant matrix; the one inside may depend on k.

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "inerton/errors.hpp"

namespace inerton {

class KeyValueConfig;

struct LatticeSpec {
  int dim{1};
  double a{1};       ///< lattice constant
  double m_atom{1};  ///< atomic mass
  double C{1};       ///< nearest-neighbour force constant
  /// Constant correction matrix (dim x dim); zero disables the correction.
  Eigen::MatrixXd tau_inv;
  /// Optional k-dependent correction used inside the sum. Falls back to
  /// `tau_inv` when empty.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> tau_inv_k;
  /// Polarization components, all nonzero.
  Eigen::VectorXd e;

  static LatticeSpec chain(double a, double m_atom, double C);
  static LatticeSpec simple_cubic(double a, double m_atom, double C);

  /// Uniform correction tau_inv = s * I with e = (1, .., 1).
  LatticeSpec& with_uniform_correction(double s);

  void validate() const;
};

struct DispersionResult {
  std::vector<Eigen::VectorXd> kpath;
  /// branches[i](j): frequency of branch j at kpath[i], ascending in j.
  std::vector<Eigen::VectorXd> branches;
};

/// 2C(1 - cos k_a a) on the diagonal, evaluated as 4C sin^2(k_a a / 2).
Eigen::MatrixXd elastic_matrix(const LatticeSpec& spec, const Eigen::VectorXd& k);

Eigen::MatrixXd force_matrix(const LatticeSpec& spec, const Eigen::VectorXd& k);

/// omega_j(k) = sqrt(eig_j(W(k)) / m_atom). Throws DomainError naming the
/// wave-vector when W has a negative or complex eigenvalue.
DispersionResult dispersion(const LatticeSpec& spec, const std::vector<Eigen::VectorXd>& kpath);

/// Evenly spaced path from Gamma to the zone boundary along `direction`
/// (components in units of pi / a), `points` samples including both ends.
std::vector<Eigen::VectorXd> zone_path(const LatticeSpec& spec, const Eigen::VectorXd& direction,
                                       int points);

/// Keys dim, a, m_atom, C, tau_inv (scalar s for s*I, or dim*dim row-major
/// entries), e (dim entries).
LatticeSpec lattice_spec_from_config(KeyValueConfig& config);

/// One row per k-point: `k1,k2,k3,omega_1..omega_dim`.
void write_dispersion_csv(std::ostream& out, const DispersionResult& result, int dim);

}  // namespace inerton
