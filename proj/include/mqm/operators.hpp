#pragma once
#include "mqm/state.hpp"
#include "mqm/types.hpp"

#include <array>

namespace mqm {

//! Expectation record for Hermiticity-sensitive observables.
struct OperatorReport {
  Complex expectation{};
  double norm_used = 0.0;
  double hermiticity_residual = 0.0;
};

//! D^(1/2) = |k| nodewise (the Hamiltonian is hbar c D^(1/2)).
PhotonState apply_d_sqrt(const PhotonState &state);

//! Energy expectation hbar c <|k|> under the state's convention product.
double energy_expectation(const PhotonState &state);

//! Unitary time evolution: c_l^eps <- exp(-i eps omega_k tau) c_l^eps.
PhotonState evolve(const PhotonState &state, double tau);

//! Conjugate-field map: each frequency sector is multiplied by its eps.
PhotonState conjugate_field(const PhotonState &state);

/*!
 * Position operator x^(alpha) with commuting components. In the helicity
 * frame the operator acts sector-diagonally as
 *
 *   x^(alpha) = k^alpha (i d/dk) k^(-alpha) = i d/dk - i alpha k/|k|^2,
 *
 * the frame-connection terms (k x S/|k|^2 and the sigma a^(m) piece of the
 * Cartesian form) cancelling identically against the derivative of the
 * frame vectors. d/dk is a 4th-order central difference, one-sided on the
 * two outermost shells. Returns one state per Cartesian output component.
 *
 * `alpha` must match the state's stored convention. Coefficients must fall
 * below 1e-8 of peak within two nodes of the k-boundary; position
 * eigenvectors from localized_state (plane-wave modulus, benign under FD)
 * are exempt.
 */
std::array<PhotonState, 3> apply_position(const PhotonState &state, double alpha);

//! Same operator evaluated in the Cartesian 3-vector representation with
//! explicit spin matrices and the sigma a^(m) connection term; used as a
//! cross-check away from the frame's singular axis.
std::array<PhotonState, 3> apply_position_cartesian(const PhotonState &state, double alpha);

//! <x_i> and the normalized Hermiticity defect of x^(alpha) on `state`.
OperatorReport position_report(const PhotonState &state, int axis);

//! |(s1, x_i s2) - (x_i s1, s2)*| / (|s1| |s2| L) under the convention
//! product, L = 2 pi / dk the dual box size.
double position_hermiticity_asymmetry(const PhotonState &s1, const PhotonState &s2, int axis);

//! Helicity operator: +-1 on the transverse sectors, 0 elsewhere.
PhotonState helicity_op(const PhotonState &state);

//! Intrinsic angular momentum along axis 3 for a mode at k:
//! hbar lambda [((cos th - m)/sin th)(e_theta.e3) + e_k.e3] = hbar m lambda.
double intrinsic_j3(const PhysicalConstants &pc, const Vec3 &k, int lambda, int m);

//! <c e_k>: mean photon velocity; bounded by c. Normalizable states only.
Vec3 velocity_expectation(const PhotonState &state);

//! <hbar k>. Plane waves return their eigenvalue; zero states are rejected.
Vec3 momentum_expectation(const PhotonState &state);

} // namespace mqm
