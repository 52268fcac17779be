#pragma once

// Closed-form kinematic scales of a particle and its inerton cloud:
// relativistic mass, de Broglie and Compton wavelengths, cloud amplitude,
// oscillation period and frequency.

#include <cmath>
#include <string>

#include "inerton/errors.hpp"

namespace inerton {

class KeyValueConfig;

enum class UnitSystem { natural, si };

template <typename Scalar>
struct Constants {
  Scalar h{1};  ///< action quantum
  Scalar c{1};  ///< inerton (light) speed
  UnitSystem units{UnitSystem::natural};

  static Constants natural() { return {Scalar(1), Scalar(1), UnitSystem::natural}; }
  static Constants si() {
    return {Scalar(6.62607015e-34), Scalar(299792458.0), UnitSystem::si};
  }
};

using Constantsd = Constants<double>;

/// Reads `unit_system`, `h` and `c`. Unit system defaults to natural; the
/// explicit keys override the unit-system defaults.
Constantsd constants_from_config(KeyValueConfig& config);

namespace detail {

template <typename Scalar>
void require_positive(Scalar value, const char* what, const char* operation) {
  if (!(value > Scalar(0)) || !std::isfinite(value)) {
    throw DomainError("units-and-scales", operation,
                      std::string(what) + " must be finite and > 0");
  }
}

}  // namespace detail

template <typename Scalar>
Scalar lorentz_factor(Scalar v0, Scalar c) {
  detail::require_positive(c, "c", "lorentz_factor");
  if (!(v0 >= Scalar(0)) || !(v0 < c)) {
    throw DomainError("units-and-scales", "lorentz_factor",
                      "speed must satisfy 0 <= v0 < c");
  }
  const Scalar beta = v0 / c;
  return Scalar(1) / std::sqrt((Scalar(1) - beta) * (Scalar(1) + beta));
}

template <typename Scalar>
Scalar relativistic_mass(Scalar M0, Scalar v0, Scalar c) {
  detail::require_positive(M0, "M0", "relativistic_mass");
  if (!(v0 >= Scalar(0)) || !(v0 < c)) {
    throw DomainError("units-and-scales", "relativistic_mass",
                      "speed must satisfy 0 <= v0 < c");
  }
  return M0 * lorentz_factor(v0, c);
}

template <typename Scalar>
Scalar de_broglie_wavelength(Scalar M, Scalar v0, Scalar h) {
  detail::require_positive(M, "M", "de_broglie_wavelength");
  detail::require_positive(h, "h", "de_broglie_wavelength");
  if (!(v0 > Scalar(0))) {
    throw DomainError("units-and-scales", "de_broglie_wavelength",
                      "wavelength undefined for v0 <= 0");
  }
  return h / (M * v0);
}

/// Amplitude of the inerton cloud, lambda * c / v0.
template <typename Scalar>
Scalar cloud_amplitude(Scalar lambda, Scalar v0, Scalar c) {
  detail::require_positive(lambda, "lambda", "cloud_amplitude");
  detail::require_positive(c, "c", "cloud_amplitude");
  if (!(v0 > Scalar(0))) {
    throw DomainError("units-and-scales", "cloud_amplitude",
                      "cloud amplitude undefined for v0 <= 0");
  }
  return lambda * c / v0;
}

template <typename Scalar>
Scalar compton_wavelength(Scalar M, Scalar c, Scalar h) {
  detail::require_positive(M, "M", "compton_wavelength");
  detail::require_positive(c, "c", "compton_wavelength");
  detail::require_positive(h, "h", "compton_wavelength");
  return h / (M * c);
}

template <typename Scalar>
struct KinematicState {
  Scalar M0{1};
  Scalar v0{0};

  Scalar mass(Scalar c) const { return relativistic_mass(M0, v0, c); }
  /// Kinetic energy in the E = M v0^2 / 2 convention, with relativistic M.
  Scalar energy(Scalar c) const { return mass(c) * v0 * v0 / Scalar(2); }
};

using KinematicStated = KinematicState<double>;

template <typename Scalar>
struct ScaleReport {
  Scalar lambda{};      ///< de Broglie wavelength
  Scalar Lambda{};      ///< inerton-cloud amplitude
  Scalar lambda_com{};  ///< Compton wavelength
  Scalar T{};           ///< oscillation time period, lambda / v0
  Scalar nu{};          ///< frequency with E = h nu, E = M v0^2 / 2
};

using ScaleReportd = ScaleReport<double>;

template <typename Scalar>
ScaleReport<Scalar> scale_report(const KinematicState<Scalar>& state,
                                 const Constants<Scalar>& consts) {
  detail::require_positive(consts.h, "h", "scale_report");
  detail::require_positive(consts.c, "c", "scale_report");
  if (!(state.v0 > Scalar(0)) || !(state.v0 < consts.c)) {
    throw DomainError("units-and-scales", "scale_report",
                      "scale report requires 0 < v0 < c");
  }
  const Scalar M = state.mass(consts.c);
  ScaleReport<Scalar> r;
  r.lambda = de_broglie_wavelength(M, state.v0, consts.h);
  r.Lambda = cloud_amplitude(r.lambda, state.v0, consts.c);
  r.lambda_com = compton_wavelength(M, consts.c, consts.h);
  r.T = r.lambda / state.v0;
  // E = h nu with E = M v0^2 / 2, so one full speed cycle lasts 1/nu = 2T.
  r.nu = M * state.v0 * state.v0 / (Scalar(2) * consts.h);
  return r;
}

/// Serializes with the field names `lambda`, `Lambda`, `lambda_com`, `T`, `nu`.
std::string to_json(const ScaleReportd& report);

}  // namespace inerton
