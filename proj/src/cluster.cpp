#include "inerton/cluster.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "inerton/config.hpp"

namespace inerton {

namespace {

constexpr const char* kModule = "cluster";

using Matrix = Eigen::MatrixXd;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

Eigen::VectorXd random_direction(std::mt19937_64& rng, int dim) {
  if (dim == 1) {
    Eigen::VectorXd d(1);
    d[0] = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    return d;
  }
  while (true) {
    Eigen::VectorXd d(dim);
    for (int k = 0; k < dim; ++k) d[k] = 2.0 * uniform01(rng) - 1.0;
    const double n = d.norm();
    if (n > 1e-3 && n <= 1.0) return d / n;
  }
}

// Non-overlapping random start. In 1D atoms are laid out with random gaps;
// in 3D they are rejection-sampled in a ball sized for liquid-like density.
Matrix random_start(int n, int dim, double g, std::mt19937_64& rng) {
  Matrix x = Matrix::Zero(dim, n);
  if (dim == 1) {
    double pos = 0.0;
    for (int i = 0; i < n; ++i) {
      x(0, i) = pos;
      pos += g * (0.95 + 0.6 * uniform01(rng));
    }
    return x;
  }
  const double radius = g * std::max(1.0, 0.9 * std::cbrt(static_cast<double>(n)));
  const double min_sep2 = 0.81 * g * g;
  for (int i = 0; i < n; ++i) {
    for (int attempt = 0;; ++attempt) {
      Eigen::VectorXd c(dim);
      do {
        for (int k = 0; k < dim; ++k) c[k] = radius * (2.0 * uniform01(rng) - 1.0);
      } while (c.squaredNorm() > radius * radius);
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = (x.col(j) - c).squaredNorm() >= min_sep2;
      if (ok || attempt > 10000) {
        x.col(i) = c;
        break;
      }
    }
  }
  return x;
}

struct LocalResult {
  Matrix x;
  double energy{0};
  bool converged{false};
  int iterations{0};
};

// L-BFGS directions with backtracking on the energy. Steps are capped so no
// atom moves more than 0.3 g at once. Near the minimum, energy differences
// fall below rounding, so steps within that noise floor are accepted.
LocalResult local_minimize(Matrix x, const ClusterPotentiald& p, ElasticMode mode,
                           const MinimizerSettings& settings) {
  constexpr int kHistory = 10;
  const Eigen::Index n = x.size();
  const double max_step = 0.3 * p.g;
  const double tol = settings.gradient_tolerance * p.epsilon / p.g;

  Matrix grad;
  double f = cluster_energy_gradient(x, p, mode, grad);

  std::vector<Eigen::VectorXd> s_hist, y_hist;
  std::vector<double> rho_hist;
  LocalResult out;

  for (int it = 0; it < settings.max_iterations; ++it) {
    out.iterations = it;
    const Eigen::Map<const Eigen::VectorXd> gv(grad.data(), n);
    if (gv.cwiseAbs().maxCoeff() <= tol) {
      out.converged = true;
      break;
    }

    Eigen::VectorXd q = gv;
    std::vector<double> alpha(s_hist.size());
    for (int k = static_cast<int>(s_hist.size()) - 1; k >= 0; --k) {
      alpha[k] = rho_hist[k] * s_hist[k].dot(q);
      q -= alpha[k] * y_hist[k];
    }
    if (!s_hist.empty()) {
      q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * y_hist[k].dot(q);
      q += (alpha[k] - beta) * s_hist[k];
    }
    Eigen::VectorXd dir = -q;
    double slope = dir.dot(gv);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      dir = -gv;
      slope = dir.dot(gv);
    }

    double step = 1.0;
    const double biggest = dir.cwiseAbs().maxCoeff();
    if (step * biggest > max_step) step = max_step / biggest;

    const double noise = 1e-13 * (std::abs(f) + p.epsilon);
    Matrix trial;
    Matrix trial_grad;
    double f_trial = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      trial = x + step * Eigen::Map<const Matrix>(dir.data(), x.rows(), x.cols());
      f_trial = cluster_energy_gradient(trial, p, mode, trial_grad);
      if (std::isfinite(f_trial) &&
          (f_trial <= f + 1e-4 * step * slope || f_trial <= f + noise)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (s_hist.empty()) break;  // steepest descent cannot progress either
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      continue;
    }

    Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(trial.data(), n) -
                        Eigen::Map<const Eigen::VectorXd>(x.data(), n);
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(trial_grad.data(), n) - gv;
    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm()) {
      if (static_cast<int>(s_hist.size()) == kHistory) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    }
    x = std::move(trial);
    grad = std::move(trial_grad);
    f = f_trial;
    out.iterations = it + 1;
  }
  if (!out.converged) {
    const Eigen::Map<const Eigen::VectorXd> gv(grad.data(), n);
    out.converged = gv.cwiseAbs().maxCoeff() <= tol;
  }
  out.x = std::move(x);
  out.energy = f;
  return out;
}

}  // namespace

double cluster_energy_gradient(const Matrix& x, const ClusterPotentiald& p, ElasticMode mode,
                               Matrix& gradient) {
  const Eigen::Index n = x.cols();
  gradient = Matrix::Zero(x.rows(), n);
  const double g6 = std::pow(p.g, 6);
  const double g12 = g6 * g6;
  double energy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::VectorXd d = x.col(i) - x.col(j);
      const double r2 = d.squaredNorm();
      if (!(r2 > 0.0)) {
        gradient.setConstant(std::numeric_limits<double>::quiet_NaN());
        return std::numeric_limits<double>::infinity();
      }
      const double inv6 = 1.0 / (r2 * r2 * r2);
      energy += p.epsilon * (g12 * inv6 * inv6 - g6 * inv6);
      // dV/dr / r
      const double dvr = p.epsilon * (-12.0 * g12 * inv6 * inv6 + 6.0 * g6 * inv6) / r2;
      gradient.col(i) += dvr * d;
      gradient.col(j) -= dvr * d;
    }
  }
  if (p.gamma > 0.0 && n > 1) {
    const Eigen::VectorXd centroid = x.rowwise().mean();
    const Matrix rel = x.colwise() - centroid;
    // sum_{i<j} r_ij^2 = N sum_i |x_i - centroid|^2
    const double weight = mode == ElasticMode::pairwise ? static_cast<double>(n) : 1.0;
    energy += 0.5 * p.gamma * weight * rel.squaredNorm();
    gradient += p.gamma * weight * rel;
  }
  return energy;
}

double cluster_energy(const ClusterConfiguration& config, const ClusterPotentiald& p,
                      ElasticMode mode) {
  Matrix grad;
  return cluster_energy_gradient(config.positions, p, mode, grad);
}

ClusterResult minimize_cluster_energy(int n_atoms, const ClusterPotentiald& p, int dim,
                                      std::uint64_t seed, const MinimizerSettings& settings,
                                      std::span<const ClusterConfiguration> extra_starts) {
  p.validate();
  if (n_atoms < 1 || n_atoms > 64) {
    throw DomainError(kModule, "minimize_cluster_energy", "N must lie in [1, 64]");
  }
  if (dim != 1 && dim != 3) {
    throw DomainError(kModule, "minimize_cluster_energy", "dim must be 1 or 3");
  }
  if (settings.restarts < 1 || settings.max_iterations < 1 ||
      !(settings.gradient_tolerance > 0.0)) {
    throw ConfigError(kModule, "minimize_cluster_energy", "invalid minimizer settings");
  }

  if (n_atoms == 1) {
    ClusterResult single;
    single.configuration.positions = Matrix::Zero(dim, 1);
    single.energy = 0.0;
    single.converged = true;
    single.start_energies = {0.0};
    return single;
  }

  std::vector<Matrix> starts;
  for (int r = 0; r < settings.restarts; ++r) {
    auto rng = stream(seed, static_cast<std::uint64_t>(n_atoms), static_cast<std::uint64_t>(r));
    starts.push_back(random_start(n_atoms, dim, p.g, rng));
  }
  for (const auto& extra : extra_starts) {
    if (extra.size() != n_atoms || extra.dim() != dim) {
      throw DomainError(kModule, "minimize_cluster_energy", "extra start has the wrong shape");
    }
    starts.push_back(extra.positions);
  }

  ClusterResult best;
  best.energy = std::numeric_limits<double>::infinity();
  ClusterResult best_any = best;
  for (const auto& start : starts) {
    Matrix grad;
    best.start_energies.push_back(cluster_energy_gradient(start, p, settings.elastic_mode, grad));
    LocalResult local = local_minimize(start, p, settings.elastic_mode, settings);
    if (local.energy < best_any.energy) {
      best_any.configuration.positions = local.x;
      best_any.energy = local.energy;
      best_any.converged = local.converged;
      best_any.iterations = local.iterations;
    }
    if (local.converged && local.energy < best.energy) {
      best.configuration.positions = std::move(local.x);
      best.energy = local.energy;
      best.converged = true;
      best.iterations = local.iterations;
    }
  }
  if (!best.converged) {
    best_any.start_energies = best.start_energies;
    throw ClusterConvergenceError("no restart converged within " +
                                      std::to_string(settings.max_iterations) + " iterations",
                                  std::move(best_any));
  }
  return best;
}

ClusterSweep optimal_cluster_size(const ClusterPotentiald& p, int n_max, int dim,
                                  std::uint64_t seed, const MinimizerSettings& settings) {
  if (n_max < 1 || n_max > 64) {
    throw DomainError(kModule, "optimal_cluster_size", "N_max must lie in [1, 64]");
  }
  constexpr int kGrowthStarts = 4;
  ClusterSweep sweep;
  double best_per_atom = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    std::vector<ClusterConfiguration> grown;
    if (n > 1) {
      const Matrix& prev = sweep.minima.back().positions;
      const Eigen::VectorXd centroid = prev.rowwise().mean();
      const double reach = (prev.colwise() - centroid).colwise().norm().maxCoeff();
      auto rng = stream(seed, static_cast<std::uint64_t>(n), 0xC1u);
      for (int k = 0; k < kGrowthStarts; ++k) {
        Matrix x(dim, n);
        x.leftCols(n - 1) = prev;
        x.col(n - 1) = centroid + (reach + 1.05 * p.g) * random_direction(rng, dim);
        grown.push_back({std::move(x)});
      }
    }
    ClusterResult r = minimize_cluster_energy(n, p, dim, seed, settings, grown);
    const double per_atom = r.energy / n;
    sweep.table.push_back({n, r.energy, per_atom});
    sweep.minima.push_back(std::move(r.configuration));
    if (per_atom < best_per_atom) {
      best_per_atom = per_atom;
      sweep.n_numeric = n;
    }
  }
  return sweep;
}

void write_cluster_csv(std::ostream& out, const ClusterSweep& sweep) {
  out << "N,E_total,E_per_atom\n";
  for (const auto& row : sweep.table) {
    out << row.N << ',' << format_number(row.energy) << ',' << format_number(row.energy_per_atom)
        << '\n';
  }
}

}  // namespace inerton
