#pragma once
#include "mqm/state.hpp"
#include "mqm/types.hpp"

#include <map>

namespace mqm {

//! Result of an inner product, with per-(mode, eps) partial sums. The
//! scalar sector enters with weight zeta_0 = -1; sector sums are
//! accumulated in the order (scalar, longitudinal, +1, -1) so that
//! Lorenz-paired sectors cancel exactly.
struct InnerProductValue {
  enum class Convention { invariant, newton_wigner };
  Complex value{};
  Convention convention = Convention::invariant;
  std::map<PhotonState::SectorKey, Complex> sector_breakdown;
};

//! Invariant inner product sum_k dk^3/(2pi)^3 sum_{l,eps} zeta_l c1* c2.
//! Requires matching grids and the alpha = 0 convention on both states.
InnerProductValue inner_product(const PhotonState &s1, const PhotonState &s2);

//! Newton-Wigner product: as above with an extra nodewise 1/(2 omega_k).
//! Requires the alpha = 1/2 convention on both states.
InnerProductValue inner_product_nw(const PhotonState &s1, const PhotonState &s2);

//! Product matching the states' stored convention.
InnerProductValue convention_product(const PhotonState &s1, const PhotonState &s2);

//! Number four-current sample at an event.
struct CurrentSample {
  double j0 = 0.0;          //!< number density from the antisymmetric-derivative form
  double j0_dhalf = 0.0;    //!< same density from the D^(1/2) frequency-diagonal form
  Vec3 jvec = Vec3::Zero(); //!< current density
  double t = 0.0;
  Vec3 x = Vec3::Zero();
};

//! Number current J^mu on the whole dual lattice at time t, computed from
//! square-root-invariant-weighted mode fields so that sum_x J^0 dx^3
//! reproduces the invariant k-space norm.
struct CurrentField {
  VectorXd j0;        //!< antisymmetric-derivative route
  VectorXd j0_dhalf;  //!< D^(1/2) route
  Eigen::MatrixX3d jvec;
  double t = 0.0;
};
CurrentField current_field(const PhotonState &state, double t);

//! Single-event sample of the current (dual-lattice point x).
CurrentSample four_current(const PhotonState &state, double t, const Vec3 &x);

//! max_x |dt J0 + div j| with dt by centered differences at t +- dt
//! (dt = dx/(10 c)) and the divergence spectral, normalized by
//! max|J0| c k_max. A `dt_scale` below 1 shrinks the step for
//! convergence studies.
double continuity_residual(const PhotonState &state, double t, double dt_scale = 1.0);

//! Born-rule density rho = psi^2 for a real amplitude, plus its lattice sum.
struct BornDensity {
  VectorXd rho;
  double total = 0.0;
};
BornDensity born_density(const KGrid &grid, const VectorXd &psi);

//! Discrete Parseval check: zeta-weighted k-norm against the x-norm of the
//! trivial-measure complex amplitudes, sector by sector.
struct ParsevalReport {
  double knorm = 0.0;
  double xnorm = 0.0;
  double mismatch = 0.0; //!< |knorm - xnorm| / |knorm|
};
ParsevalReport parseval_report(const PhotonState &state);

//! Rescale a real-field state so the lattice sum of psi(x)^2 dx^3 equals 1
//! at t = 0, with psi = Re sum_l psi_l^+.
PhotonState normalize_real_field(const PhotonState &state);

} // namespace mqm
