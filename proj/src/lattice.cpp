#include "inerton/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "inerton/config.hpp"
#include "inerton/errors.hpp"

namespace inerton {

namespace {

constexpr const char* kModule = "lattice";

std::string describe(const Eigen::VectorXd& k) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    if (i) os << ", ";
    os << format_number(k[i]);
  }
  os << ')';
  return os.str();
}

void check_k(const LatticeSpec& spec, const Eigen::VectorXd& k, const char* op) {
  if (k.size() != spec.dim) {
    throw DomainError(kModule, op, "wave-vector has " + std::to_string(k.size()) +
                                       " components, lattice dim is " +
                                       std::to_string(spec.dim));
  }
  const double edge = std::numbers::pi / spec.a * (1.0 + 1e-12);
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i]) || std::abs(k[i]) > edge) {
      throw DomainError(kModule, op, "wave-vector " + describe(k) +
                                         " lies outside the first Brillouin zone");
    }
  }
}

}  // namespace

LatticeSpec LatticeSpec::chain(double a, double m_atom, double C) {
  LatticeSpec s;
  s.dim = 1;
  s.a = a;
  s.m_atom = m_atom;
  s.C = C;
  s.tau_inv = Eigen::MatrixXd::Zero(1, 1);
  s.e = Eigen::VectorXd::Ones(1);
  return s;
}

LatticeSpec LatticeSpec::simple_cubic(double a, double m_atom, double C) {
  LatticeSpec s = chain(a, m_atom, C);
  s.dim = 3;
  s.tau_inv = Eigen::MatrixXd::Zero(3, 3);
  s.e = Eigen::VectorXd::Ones(3);
  return s;
}

LatticeSpec& LatticeSpec::with_uniform_correction(double s) {
  tau_inv = s * Eigen::MatrixXd::Identity(dim, dim);
  tau_inv_k = nullptr;
  e = Eigen::VectorXd::Ones(dim);
  return *this;
}

void LatticeSpec::validate() const {
  if (dim != 1 && dim != 3) throw DomainError(kModule, "validate", "dim must be 1 or 3");
  if (!(a > 0.0) || !(m_atom > 0.0) || !(C > 0.0)) {
    throw DomainError(kModule, "validate", "a, m_atom and C must be > 0");
  }
  if (tau_inv.rows() != dim || tau_inv.cols() != dim) {
    throw DomainError(kModule, "validate", "tau_inv must be dim x dim");
  }
  if (e.size() != dim) throw DomainError(kModule, "validate", "e must have dim components");
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (e[i] == 0.0 || !std::isfinite(e[i])) {
      throw DomainError(kModule, "validate",
                        "degenerate polarization: e_" + std::to_string(i + 1) + " = 0");
    }
  }
}

Eigen::MatrixXd elastic_matrix(const LatticeSpec& spec, const Eigen::VectorXd& k) {
  spec.validate();
  check_k(spec, k, "elastic_matrix");
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(spec.dim, spec.dim);
  for (int i = 0; i < spec.dim; ++i) {
    const double s = std::sin(0.5 * k[i] * spec.a);
    V(i, i) = 4.0 * spec.C * s * s;
  }
  return V;
}

Eigen::MatrixXd force_matrix(const LatticeSpec& spec, const Eigen::VectorXd& k) {
  Eigen::MatrixXd W = elastic_matrix(spec, k);
  const Eigen::MatrixXd inner = spec.tau_inv_k ? spec.tau_inv_k(k) : spec.tau_inv;
  if (inner.rows() != spec.dim || inner.cols() != spec.dim) {
    throw DomainError(kModule, "force_matrix", "tau_inv(k) must be dim x dim");
  }
  // weight_b = sum_a' inner(a', b) e_a' / e_b
  const Eigen::VectorXd weight = (inner.transpose() * spec.e).cwiseQuotient(spec.e);
  W.noalias() += spec.tau_inv * weight.asDiagonal();
  return W;
}

DispersionResult dispersion(const LatticeSpec& spec, const std::vector<Eigen::VectorXd>& kpath) {
  DispersionResult result;
  result.kpath = kpath;
  result.branches.reserve(kpath.size());
  for (const auto& k : kpath) {
    const Eigen::MatrixXd W = force_matrix(spec, k);
    const double scale = std::max(W.cwiseAbs().maxCoeff(), 4.0 * spec.C);
    const double tol = 1e-12 * scale;

    Eigen::VectorXd eig;
    if ((W - W.transpose()).cwiseAbs().maxCoeff() <= tol) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(W, Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success) {
        throw NumericalError(kModule, "dispersion", "eigensolver failed at k = " + describe(k));
      }
      eig = solver.eigenvalues();
    } else {
      Eigen::EigenSolver<Eigen::MatrixXd> solver(W, false);
      if (solver.info() != Eigen::Success) {
        throw NumericalError(kModule, "dispersion", "eigensolver failed at k = " + describe(k));
      }
      const Eigen::VectorXcd values = solver.eigenvalues();
      if (values.imag().cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw DomainError(kModule, "dispersion",
                          "force matrix has complex eigenvalues at k = " + describe(k));
      }
      eig = values.real();
      std::sort(eig.data(), eig.data() + eig.size());
    }

    Eigen::VectorXd omega(eig.size());
    for (Eigen::Index j = 0; j < eig.size(); ++j) {
      double lam = eig[j];
      if (lam < -tol) {
        throw DomainError(kModule, "dispersion",
                          "force matrix has negative eigenvalue " + format_number(lam) +
                              " at k = " + describe(k));
      }
      if (lam < 0.0) lam = 0.0;
      omega[j] = std::sqrt(lam / spec.m_atom);
    }
    result.branches.push_back(std::move(omega));
  }
  return result;
}

std::vector<Eigen::VectorXd> zone_path(const LatticeSpec& spec, const Eigen::VectorXd& direction,
                                       int points) {
  if (points < 2) throw DomainError(kModule, "zone_path", "need at least 2 points");
  if (direction.size() != spec.dim) {
    throw DomainError(kModule, "zone_path", "direction must have dim components");
  }
  std::vector<Eigen::VectorXd> path;
  path.reserve(points);
  const double edge = std::numbers::pi / spec.a;
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    path.push_back(f * edge * direction);
  }
  return path;
}

LatticeSpec lattice_spec_from_config(KeyValueConfig& config) {
  const auto dim = config.get_int("dim", 1);
  if (dim != 1 && dim != 3) throw ConfigError(kModule, "config", "dim must be 1 or 3");
  LatticeSpec spec = dim == 1 ? LatticeSpec::chain(1, 1, 1) : LatticeSpec::simple_cubic(1, 1, 1);
  spec.a = config.get_double("a", 1.0);
  spec.m_atom = config.get_double("m_atom", 1.0);
  spec.C = config.get_double("C", 1.0);

  const auto tau = config.get_double_list("tau_inv", {0.0});
  if (tau.size() == 1) {
    spec.tau_inv = tau[0] * Eigen::MatrixXd::Identity(dim, dim);
  } else if (tau.size() == static_cast<std::size_t>(dim * dim)) {
    spec.tau_inv = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                  Eigen::RowMajor>>(tau.data(), dim, dim);
  } else {
    throw ConfigError(kModule, "config", "tau_inv needs 1 or dim*dim entries");
  }
  const auto e = config.get_double_list("e", std::vector<double>(dim, 1.0));
  if (e.size() != static_cast<std::size_t>(dim)) {
    throw ConfigError(kModule, "config", "e needs dim entries");
  }
  spec.e = Eigen::Map<const Eigen::VectorXd>(e.data(), dim);
  spec.validate();
  return spec;
}

void write_dispersion_csv(std::ostream& out, const DispersionResult& result, int dim) {
  out << "k1,k2,k3";
  for (int j = 1; j <= dim; ++j) out << ",omega_" << j;
  out << '\n';
  for (std::size_t i = 0; i < result.kpath.size(); ++i) {
    const auto& k = result.kpath[i];
    for (int c = 0; c < 3; ++c) {
      if (c) out << ',';
      out << format_number(c < k.size() ? k[c] : 0.0);
    }
    for (Eigen::Index j = 0; j < result.branches[i].size(); ++j) {
      out << ',' << format_number(result.branches[i][j]);
    }
    out << '\n';
  }
}

}  // namespace inerton
