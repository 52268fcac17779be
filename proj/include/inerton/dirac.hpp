#pragma once

// Total Hamiltonian with spin-pulsation momentum and the 4x4 Dirac
// Hamiltonian c alpha.p + beta M0 c^2 in the Dirac-Pauli representation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "inerton/errors.hpp"

namespace inerton {

enum class SpinLabel { up, down };

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Matrix4c = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

template <typename Scalar>
struct SpinKinematics {
  Vector3<Scalar> p{Vector3<Scalar>::Zero()};
  Vector3<Scalar> pi_spin{Vector3<Scalar>::Zero()};
  SpinLabel spin{SpinLabel::up};
  Scalar M0{1};
  Scalar c{1};
};

template <typename Scalar>
struct DiracOperator {
  Matrix4c<Scalar> matrix;
  Vector3<Scalar> p;
  Scalar M0;
  Scalar c;
};

/// sqrt(c^2 |p|^2 + c^2 |pi|^2 + M0^2 c^4)
template <typename Scalar>
Scalar total_hamiltonian(const SpinKinematics<Scalar>& k) {
  if (!(k.M0 > Scalar(0)) || !(k.c > Scalar(0))) {
    throw DomainError("spin-dirac", "total_hamiltonian", "M0 and c must be > 0");
  }
  const Scalar rest = k.M0 * k.c;
  return k.c * std::sqrt(k.p.squaredNorm() + k.pi_spin.squaredNorm() + rest * rest);
}

/// c^2 |p|^2 + M0^2 c^4, the value of H^2 for the Dirac operator.
template <typename Scalar>
Scalar dirac_dispersion(const Vector3<Scalar>& p, Scalar M0, Scalar c) {
  const Scalar rest = M0 * c * c;
  return c * c * p.squaredNorm() + rest * rest;
}

/// Dirac-Pauli representation: beta = diag(1, 1, -1, -1) and
/// alpha_i = [[0, sigma_i], [sigma_i, 0]]. M0 = 0 is accepted for the
/// massless limit.
template <typename Scalar>
DiracOperator<Scalar> build_dirac(const Vector3<Scalar>& p, Scalar M0, Scalar c) {
  if (!(M0 >= Scalar(0)) || !(c > Scalar(0))) {
    throw DomainError("spin-dirac", "build_dirac", "requires M0 >= 0 and c > 0");
  }
  using C = std::complex<Scalar>;
  const Scalar px = c * p.x();
  const Scalar py = c * p.y();
  const Scalar pz = c * p.z();
  const Scalar mc2 = M0 * c * c;

  // Upper-right block c sigma.p; the lower-left block is its adjoint, which
  // equals it because sigma.p is Hermitian.
  Eigen::Matrix<C, 2, 2> sp;
  sp << C(pz, 0), C(px, -py),
        C(px, py), C(-pz, 0);

  Matrix4c<Scalar> H = Matrix4c<Scalar>::Zero();
  H(0, 0) = C(mc2, 0);
  H(1, 1) = C(mc2, 0);
  H(2, 2) = C(-mc2, 0);
  H(3, 3) = C(-mc2, 0);
  H.template block<2, 2>(0, 2) = sp;
  H.template block<2, 2>(2, 0) = sp.adjoint();
  return {H, p, M0, c};
}

/// Eigenvalues of a Dirac operator, ascending.
///
/// The characteristic polynomial of a traceless Hermitian matrix with
/// tr(H^3) = 0 is biquadratic, so the squared eigenvalues are
/// s +- sqrt(tr(A^2)) / 2 with s = tr(H^2) / 4 and A = H^2 - s I. Both traces
/// are computed from entries, which keeps full relative precision in the
/// degenerate case A = 0. Throws NumericalError when the matrix is not of that
/// form or the two positive roots are not degenerate.
template <typename Scalar>
std::array<Scalar, 4> dirac_spectrum(const DiracOperator<Scalar>& op) {
  const auto& H = op.matrix;
  const Scalar scale = H.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) {
    throw NumericalError("spin-dirac", "dirac_spectrum", "operator has non-finite entries");
  }
  if (scale == Scalar(0)) return {Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
  const Scalar tol = Scalar(1e-10) * scale;
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw NumericalError("spin-dirac", "dirac_spectrum", "operator is not Hermitian");
  }
  const Matrix4c<Scalar> H2 = H * H;
  const Scalar s = H2.trace().real() / Scalar(4);
  if (std::abs(H.trace()) > tol ||
      std::abs((H2 * H).trace()) > Scalar(1e-10) * scale * scale * scale) {
    throw NumericalError("spin-dirac", "dirac_spectrum",
                         "characteristic polynomial is not biquadratic");
  }
  const Matrix4c<Scalar> A = H2 - Matrix4c<Scalar>::Identity() * s;
  const Scalar split = Scalar(0.5) * std::sqrt((A.adjoint() * A).trace().real());
  const Scalar upper = std::sqrt(s + split);
  const Scalar lower = std::sqrt(std::max(s - split, Scalar(0)));
  if (upper - lower > tol) {
    throw NumericalError("spin-dirac", "dirac_spectrum",
                         "positive eigenvalues are not twofold degenerate");
  }
  return {-upper, -lower, lower, upper};
}

}  // namespace inerton
