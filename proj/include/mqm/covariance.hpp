#pragma once
#include "mqm/state.hpp"
#include "mqm/types.hpp"

#include <map>
#include <vector>

namespace mqm {

/*!
 * Spacelike integration surface: unit timelike normal n (n.n = 1, n0 > 0),
 * an origin event (ct, x), a half-width `extent` for the integration
 * window, and the midpoint-mesh resolution per tangent axis.
 */
struct Hyperplane {
  Vec4 normal{1, 0, 0, 0}; //!< contravariant components (n^0, n)
  Vec4 origin{0, 0, 0, 0}; //!< event (ct, x)
  double extent = 1.0;
  int resolution = 16;

  void validate() const;
};

//! Plane of simultaneity of an observer boosted along axis 3 with the
//! given rapidity, through the given event.
Hyperplane boosted_plane(double rapidity, const Vec4 &origin, double extent, int resolution);

//! Complex field values of a state at an arbitrary event, by direct
//! summation over all lattice modes (periodic in the dual box).
struct EventFields {
  CVec4 A = CVec4::Zero();
  std::map<Mode, Complex> psi;
};
EventFields evaluate_at_event(const PhotonState &state, double t, const Vec3 &x);

/*!
 * Covariant inner product -i (eps0 c/hbar) int dsigma n_mu A1*_nu d<->^mu A_c2^nu
 * by midpoint quadrature on the plane. Mode fields carry the square-root
 * invariant weight, so the t-plane value reproduces the invariant k-space
 * product. Both states must decay below 1e-6 of their peak at the window
 * boundary; the error reports the measured tail level.
 */
Complex hyperplane_inner_product(const PhotonState &s1, const PhotonState &s2,
                                 const Hyperplane &plane);

//! Radial profile of a band-limited quantity.
struct RadialProfile {
  std::vector<double> radii; //!< strictly increasing, positive
  std::vector<Complex> values;
  double t = 0.0;
  double cutoff = 0.0; //!< band limit K
};

//! Frequency-resolved equal-time correlator reduced to one radial integral:
//!   I+(t, r) = int_0^K dk k sin(kr) e^{-i k c t} / ((2 pi)^2 r).
//! Returns the positive-frequency part and the real total I+ + conj(I+).
struct HegerfeldtProfiles {
  RadialProfile positive_frequency;
  RadialProfile real_total;
};
HegerfeldtProfiles hegerfeldt_correlator(const PhysicalConstants &pc, double t,
                                         const std::vector<double> &radii, double band_limit);

//! Causal propagation of the Gaussian-regularized localized state
//! c(k) = e^{-k^2 s^2/2} e^{-i k.y}: radial profiles about y of the real
//! amplitude and of its positive-frequency-only part, with shell-mass
//! bookkeeping in the window |r - c|t|| < 5 s.
struct LocalizedPropagation {
  RadialProfile psi_real;
  RadialProfile psi_positive;
  double shell_fraction = 0.0; //!< in-window share of int psi^2 r^2 dr
  double out_mass_real = 0.0;
  double out_mass_positive = 0.0;
  double smoothing = 0.0;
};
LocalizedPropagation localized_propagation(const PhysicalConstants &pc, const Vec3 &y, double s,
                                           double t);

} // namespace mqm
