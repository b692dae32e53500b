#pragma once
#include "mqm/state.hpp"
#include "mqm/types.hpp"

#include <map>

namespace mqm {

/*!
 * Configuration-space snapshot at a fixed time: four-potential A^mu,
 * transverse electric field E = -dt A, conjugate field pi^mu = -eps0 dt A^mu,
 * and the probability amplitude psi, all complex and eps-resolved (summed
 * over the sectors present in the state). Arrays are n^3 rows in the grid's
 * row-major layout.
 */
struct FieldSnapshot {
  double t = 0.0;
  Eigen::MatrixX4cd A;
  Eigen::MatrixX3cd E;
  Eigen::MatrixX4cd pi;
  VectorXcd psi;                     //!< sum over modes
  std::map<Mode, VectorXcd> psi_by_mode;
  bool reality = false;
};

//! Real-reduced fields Re sum_lambda of each quantity.
struct RealFields {
  double t = 0.0;
  Eigen::MatrixX4d A;
  Eigen::MatrixX3d E;
  Eigen::MatrixX4d pi;
  VectorXd psi;
};

//! Synthesize all fields of a state at time t. A uses the invariant-measure
//! bridge with prefactor i sqrt(hbar/eps0); E is the spectral -dt A of the
//! transverse sectors; pi^mu = -eps0 dt A^mu.
FieldSnapshot synthesize(const PhotonState &state, double t);

//! Probability amplitudes psi_lambda(x) = trivial-measure transform of
//! c_lambda^eps with the evolution phase, summed over frequency signs.
std::map<Mode, VectorXcd> synthesize_psi(const PhotonState &state, double t);

//! Re-reduction of a snapshot built from eps = + content only; rejects
//! snapshots with independent negative-frequency content. The source
//! state must carry the real-field flag.
RealFields reduce_real(const PhotonState &state, const FieldSnapshot &snapshot);

//! Real amplitude psi(x) = Re sum_lambda psi_lambda^+(x).
VectorXd reduce_real_psi(const PhotonState &state, double t);

//! Peak-relative imaginary remainder of a snapshot (reality diagnostic).
double imaginary_fraction(const FieldSnapshot &snapshot);

} // namespace mqm
