#pragma once

// Particle / inerton-cloud exchange dynamics.
//
// The particle hands its momentum to an aggregate cloud coordinate and takes
// it back once per half-cycle T. Two realizations are provided:
//
//  * smooth exchange: amplitudes (a, b) rotate at omega = pi / (2T) and the
//    particle speed is v = v0 a^2, so v runs v0 -> 0 -> v0 over 2T;
//  * impulsive exchange: K equally spaced collisions per half-cycle, each
//    moving M v0 / K of momentum between particle and cloud.
//
// One full speed cycle lasts 2T and covers a distance v0 T, which equals the
// de Broglie wavelength when T takes its default value lambda / v0.

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "inerton/scales.hpp"

namespace inerton {

class KeyValueConfig;

enum class ExchangeMode { smooth, impulsive };

struct ExchangeSystem {
  double M0{1};
  double v0{1};
  /// Half-cycle exchange time; defaults to lambda / v0.
  std::optional<double> T;
  ExchangeMode mode{ExchangeMode::smooth};
  /// Collisions per half-cycle, impulsive mode only.
  int K{1};
  bool relativistic{false};
  Eigen::Matrix3d metric_g{Eigen::Matrix3d::Identity()};
  Eigen::Matrix3d metric_gt{Eigen::Matrix3d::Identity()};
  Constantsd consts{Constantsd::natural()};

  /// M0 in the nonrelativistic mode, M0 / sqrt(1 - v0^2/c^2) otherwise.
  double mass() const;
  double wavelength() const;
  double half_period() const;
  double omega() const;
  /// Kinetic energy at t = 0.
  double initial_energy() const;

  /// Throws DomainError / ConfigError when any invariant is violated.
  void validate() const;
};

struct ExchangeState {
  double t{0};
  double X{0};
  double v{0};  ///< particle speed
  double a{1};  ///< particle exchange amplitude
  double b{0};  ///< cloud exchange amplitude
  double p_particle{0};
  double p_cloud{0};
};

struct CycleStats {
  double cycle_time{0};
  double distance_per_cycle{0};
  double vmin{0};
  double vmax{0};
  double mean_speed{0};
  int peaks{0};
};

struct Trajectory {
  std::vector<ExchangeState> samples;
  CycleStats cycles;
};

struct EnergyPartition {
  double particle{0};
  double cloud{0};
  double total{0};
};

/// Integrates the exchange for `duration` with step (or sampling interval)
/// at most `dt`. Dispatches to the relativistic variant when
/// `system.relativistic` is set.
Trajectory simulate(const ExchangeSystem& system, double duration, double dt);

/// Relativistic variant: the squared speed entering
/// L = -M0 c^2 sqrt(1 - v^2/c^2) is driven by the exchange, with relativistic
/// mass in the energy and wavelength bookkeeping.
Trajectory simulate_relativistic(ExchangeSystem system, double duration, double dt);

/// Cycle observables from the speed series: maxima are located (parabolic
/// refinement for isolated samples, plateau start for flat tops) and their
/// spacing gives the cycle time and distance per cycle.
CycleStats measure_cycles(std::span<const ExchangeState> samples);

EnergyPartition energy_partition(const ExchangeState& state, const ExchangeSystem& system);

/// Instantaneous relativistic Lagrangian -M0 c^2 sqrt(1 - v^2/c^2).
double relativistic_lagrangian(const ExchangeState& state, const ExchangeSystem& system);

/// Builds a system from keys M0, v0, T, mode, K, relativistic plus the
/// unit keys read by constants_from_config.
ExchangeSystem exchange_system_from_config(KeyValueConfig& config);

/// CSV with header `t,X,v,a,b,E_particle,E_cloud`, ten significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const ExchangeSystem& system);

}  // namespace inerton
