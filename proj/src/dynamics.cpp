#include "inerton/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "inerton/config.hpp"

namespace inerton {

namespace {

constexpr const char* kModule = "dynamics";

bool symmetric_positive_definite(const Eigen::Matrix3d& m) {
  if (!m.isApprox(m.transpose(), 1e-12)) return false;
  Eigen::LLT<Eigen::Matrix3d> llt(m);
  return llt.info() == Eigen::Success;
}

// Momentum of the particle moving at speed v.
double particle_momentum(double v, const ExchangeSystem& s) {
  if (!s.relativistic) return s.M0 * v;
  if (!(v < s.consts.c)) {
    throw DomainError(kModule, "simulate_relativistic",
                      "instantaneous speed reached or exceeded c");
  }
  return lorentz_factor(v, s.consts.c) * s.M0 * v;
}

double kinetic_from_momentum(double p, const ExchangeSystem& s) {
  if (!s.relativistic) return p * p / (2.0 * s.M0);
  const double c = s.consts.c;
  const double rest = s.M0 * c * c;
  // sqrt(p^2 c^2 + M0^2 c^4) - M0 c^2 without cancellation.
  return p * p * c * c / (std::sqrt(p * p * c * c + rest * rest) + rest);
}

ExchangeState make_state(double t, double X, double a, double b, double v,
                         const ExchangeSystem& s) {
  ExchangeState st;
  st.t = t;
  st.X = X;
  st.a = a;
  st.b = b;
  st.v = v;
  st.p_particle = particle_momentum(v, s);
  st.p_cloud = s.mass() * s.v0 * (a * a + b * b) - st.p_particle;
  return st;
}

std::size_t step_count(double duration, double dt) {
  return static_cast<std::size_t>(std::ceil(duration / dt * (1.0 - 1e-12)));
}

void check_run(const ExchangeSystem& s, double duration, double dt, const char* op) {
  s.validate();
  const double T = s.half_period();
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError(kModule, op, "dt must be finite and > 0");
  }
  if (!(duration >= 2.0 * T * (1.0 - 1e-12))) {
    throw ConfigError(kModule, op, "duration is shorter than one full cycle (2T)");
  }
  if (!(duration >= 4.0 * T * (1.0 - 1e-12))) {
    throw ConfigError(kModule, op, "duration must cover at least two cycles (4T)");
  }
  if (s.mode == ExchangeMode::smooth && dt > T / 100.0 * (1.0 + 1e-12)) {
    throw ConfigError(kModule, op,
                      "dt exceeds T/100; cycle detection would alias in smooth mode");
  }
  if (s.mode == ExchangeMode::impulsive && dt > T * (1.0 + 1e-12)) {
    throw ConfigError(kModule, op, "dt exceeds T in impulsive mode");
  }
  if (step_count(duration, dt) > 50'000'000) {
    throw ConfigError(kModule, op, "duration / dt exceeds the sample budget");
  }
}

std::vector<ExchangeState> integrate_smooth(const ExchangeSystem& s, double duration,
                                            double dt) {
  const std::size_t n = step_count(duration, dt);
  const double h = duration / static_cast<double>(n);
  const double w = s.omega();
  const double v0 = s.v0;

  std::vector<ExchangeState> out;
  out.reserve(n + 1);

  Eigen::Vector3d y(1.0, 0.0, 0.0);  // (a, b, X)
  const auto rhs = [w, v0](const Eigen::Vector3d& q) {
    return Eigen::Vector3d(-w * q[1], w * q[0], v0 * q[0] * q[0]);
  };

  out.push_back(make_state(0.0, y[2], y[0], y[1], v0 * y[0] * y[0], s));
  for (std::size_t i = 1; i <= n; ++i) {
    const Eigen::Vector3d k1 = rhs(y);
    const Eigen::Vector3d k2 = rhs(y + 0.5 * h * k1);
    const Eigen::Vector3d k3 = rhs(y + 0.5 * h * k2);
    const Eigen::Vector3d k4 = rhs(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = static_cast<double>(i) * h;
    out.push_back(make_state(t, y[2], y[0], y[1], v0 * y[0] * y[0], s));
  }
  return out;
}

// Speed level after the n-th collision. Levels fall by v0/K per event over
// the first half-cycle, reach 0 at event K and climb back over the second.
double impulsive_level(long long n, int K, double v0) {
  const long long q = n % (2LL * K);
  if (q <= K) return v0 * static_cast<double>(K - q) / K;
  return v0 * static_cast<double>(q - K) / K;
}

std::vector<ExchangeState> integrate_impulsive(const ExchangeSystem& s, double duration,
                                               double dt) {
  const std::size_t n = step_count(duration, dt);
  const double h = duration / static_cast<double>(n);
  const double T = s.half_period();
  const int K = s.K;
  const double v0 = s.v0;
  const double snap = 1e-12 * T;

  const auto event_time = [&](long long e) { return static_cast<double>(e) * T / K; };
  const auto state_at = [&](double t, double X, double level) {
    const double frac = level / v0;
    return make_state(t, X, std::sqrt(frac), std::sqrt(1.0 - frac), level, s);
  };

  std::vector<ExchangeState> out;
  out.reserve(n + 1 + static_cast<std::size_t>(duration / T * K) + 2);

  long long next_event = 1;
  double level = v0;
  double X = 0.0;
  double t_prev = 0.0;
  out.push_back(state_at(0.0, 0.0, level));

  std::size_t i = 1;
  while (true) {
    const double t_grid = i <= n ? static_cast<double>(i) * h : INFINITY;
    const double t_event = event_time(next_event);
    const bool event_due = t_event <= duration + snap;
    if (!event_due && i > n) break;

    double t;
    bool fire = false;
    if (event_due && t_event <= t_grid + snap) {
      t = t_event;
      fire = true;
      if (std::abs(t_grid - t_event) <= snap) ++i;
    } else {
      t = t_grid;
      ++i;
    }
    X += level * (t - t_prev);
    t_prev = t;
    if (fire) {
      level = impulsive_level(next_event, K, v0);
      ++next_event;
    }
    out.push_back(state_at(t, X, level));
  }
  return out;
}

double parabola_vertex(double t0, double t1, double t2, double y0, double y1, double y2) {
  const double d0 = (y1 - y0) / (t1 - t0);
  const double d1 = (y2 - y1) / (t2 - t1);
  const double curvature = (d1 - d0) / (t2 - t0);
  if (curvature >= 0.0) return t1;
  return 0.5 * (t0 + t1) - d0 / (2.0 * curvature);
}

double lagrange3(double t, double t0, double t1, double t2, double y0, double y1, double y2) {
  const double l0 = (t - t1) * (t - t2) / ((t0 - t1) * (t0 - t2));
  const double l1 = (t - t0) * (t - t2) / ((t1 - t0) * (t1 - t2));
  const double l2 = (t - t0) * (t - t1) / ((t2 - t0) * (t2 - t1));
  return l0 * y0 + l1 * y1 + l2 * y2;
}

}  // namespace

double ExchangeSystem::mass() const {
  return relativistic ? relativistic_mass(M0, v0, consts.c) : M0;
}

double ExchangeSystem::wavelength() const { return de_broglie_wavelength(mass(), v0, consts.h); }

double ExchangeSystem::half_period() const { return T ? *T : wavelength() / v0; }

double ExchangeSystem::omega() const { return std::numbers::pi / (2.0 * half_period()); }

double ExchangeSystem::initial_energy() const {
  return kinetic_from_momentum(mass() * v0, *this);
}

void ExchangeSystem::validate() const {
  if (!(M0 > 0.0) || !std::isfinite(M0)) {
    throw DomainError(kModule, "validate", "M0 must be finite and > 0");
  }
  if (!(v0 > 0.0) || !std::isfinite(v0)) {
    throw DomainError(kModule, "validate", "v0 must be finite and > 0");
  }
  if (!(consts.h > 0.0) || !(consts.c > 0.0)) {
    throw DomainError(kModule, "validate", "h and c must be > 0");
  }
  if (relativistic && !(v0 < consts.c)) {
    throw DomainError(kModule, "validate", "relativistic mode requires v0 < c");
  }
  if (T && (!(*T > 0.0) || !std::isfinite(*T))) {
    throw DomainError(kModule, "validate", "T must be finite and > 0");
  }
  if (K < 1) throw ConfigError(kModule, "validate", "K must be >= 1");
  if (!symmetric_positive_definite(metric_g) || !symmetric_positive_definite(metric_gt)) {
    throw ConfigError(kModule, "validate", "metric matrices must be symmetric positive definite");
  }
}

Trajectory simulate(const ExchangeSystem& system, double duration, double dt) {
  const char* op = system.relativistic ? "simulate_relativistic" : "simulate";
  check_run(system, duration, dt, op);
  Trajectory traj;
  traj.samples = system.mode == ExchangeMode::smooth
                     ? integrate_smooth(system, duration, dt)
                     : integrate_impulsive(system, duration, dt);
  traj.cycles = measure_cycles(traj.samples);
  return traj;
}

Trajectory simulate_relativistic(ExchangeSystem system, double duration, double dt) {
  system.relativistic = true;
  return simulate(system, duration, dt);
}

CycleStats measure_cycles(std::span<const ExchangeState> samples) {
  const std::size_t n = samples.size();
  if (n < 3) throw NumericalError(kModule, "measure_cycles", "fewer than 3 samples");

  CycleStats stats;
  stats.vmin = samples[0].v;
  stats.vmax = samples[0].v;
  for (const auto& s : samples) {
    stats.vmin = std::min(stats.vmin, s.v);
    stats.vmax = std::max(stats.vmax, s.v);
  }

  // (time, position) of each speed maximum
  std::vector<std::pair<double, double>> peaks;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && samples[j + 1].v == samples[i].v) ++j;
    const double v = samples[i].v;
    const bool left_lower = i > 0 && samples[i - 1].v < v;
    const bool right_lower = j + 1 < n && samples[j + 1].v < v;
    // Series edges count only when they sit at the global maximum.
    const bool at_top = v >= stats.vmax * (1.0 - 1e-9);
    bool is_peak = false;
    if (i > 0 && j + 1 < n) {
      is_peak = left_lower && right_lower;
    } else if (i == 0 && j + 1 < n) {
      is_peak = right_lower && at_top;
    } else if (i > 0 && j + 1 == n) {
      is_peak = left_lower && at_top;
    }
    if (is_peak) {
      if (i == j && i > 0 && j + 1 < n) {
        const auto& p0 = samples[i - 1];
        const auto& p1 = samples[i];
        const auto& p2 = samples[i + 1];
        const double tv = parabola_vertex(p0.t, p1.t, p2.t, p0.v, p1.v, p2.v);
        peaks.emplace_back(tv, lagrange3(tv, p0.t, p1.t, p2.t, p0.X, p1.X, p2.X));
      } else {
        peaks.emplace_back(samples[i].t, samples[i].X);
      }
    }
    i = j + 1;
  }

  if (peaks.size() < 2) {
    throw NumericalError(kModule, "measure_cycles",
                         "cycle detection failed: fewer than 2 speed maxima found");
  }
  const double cycles = static_cast<double>(peaks.size() - 1);
  const double span_t = peaks.back().first - peaks.front().first;
  const double span_x = peaks.back().second - peaks.front().second;
  stats.peaks = static_cast<int>(peaks.size());
  stats.cycle_time = span_t / cycles;
  stats.distance_per_cycle = span_x / cycles;
  stats.mean_speed = span_x / span_t;
  return stats;
}

EnergyPartition energy_partition(const ExchangeState& state, const ExchangeSystem& system) {
  // Share of the initial momentum M v0 still held by particle + cloud; the
  // total energy scales with its square, so it tracks amplitude drift.
  const double share = (state.p_particle + state.p_cloud) / (system.mass() * system.v0);
  EnergyPartition e;
  e.total = system.initial_energy() * share * share;
  e.particle = kinetic_from_momentum(state.p_particle, system);
  e.cloud = e.total - e.particle;
  return e;
}

double relativistic_lagrangian(const ExchangeState& state, const ExchangeSystem& system) {
  const double c = system.consts.c;
  const double beta = state.v / c;
  if (!(beta < 1.0)) {
    throw DomainError(kModule, "relativistic_lagrangian", "speed reached or exceeded c");
  }
  return -system.M0 * c * c * std::sqrt((1.0 - beta) * (1.0 + beta));
}

ExchangeSystem exchange_system_from_config(KeyValueConfig& config) {
  ExchangeSystem s;
  s.consts = constants_from_config(config);
  s.M0 = config.get_double("M0", 1.0);
  s.v0 = config.get_double("v0", s.consts.units == UnitSystem::natural ? 0.5 : 1e6);
  if (config.contains("T")) s.T = config.get_double("T");
  const std::string mode = config.get_string("mode", "smooth");
  if (mode == "smooth") {
    s.mode = ExchangeMode::smooth;
  } else if (mode == "impulsive") {
    s.mode = ExchangeMode::impulsive;
  } else {
    throw ConfigError(kModule, "config", "mode must be 'smooth' or 'impulsive'");
  }
  s.K = static_cast<int>(config.get_int("K", 1));
  s.relativistic = config.get_bool("relativistic", false);
  s.validate();
  return s;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const ExchangeSystem& system) {
  out << "t,X,v,a,b,E_particle,E_cloud\n";
  for (const auto& s : trajectory.samples) {
    const EnergyPartition e = energy_partition(s, system);
    out << format_number(s.t) << ',' << format_number(s.X) << ',' << format_number(s.v) << ','
        << format_number(s.a) << ',' << format_number(s.b) << ','
        << format_number(e.particle) << ',' << format_number(e.cloud) << '\n';
  }
}

}  // namespace inerton
