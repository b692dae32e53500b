#pragma once
#include "mqm/grid.hpp"
#include "mqm/polarization.hpp"
#include "mqm/types.hpp"

#include <map>
#include <optional>
#include <utility>

namespace mqm {

//! Raised by norm-dependent operations on plane-wave or localized states.
struct non_normalizable_error : std::domain_error {
  using std::domain_error::domain_error;
};

//! Axis label for linearly polarized constructions.
enum class LinearAxis { theta, phi };

/*!
 * Photon state: complex coefficient functions c_lambda^eps(k) per mode
 * lambda in {scalar, +1, -1, longitudinal} and frequency sign eps = +-.
 * Absent sectors are identically zero. Coefficients are scalar arrays;
 * the Cartesian four-vector content is recovered on demand by attaching
 * the polarization frame e_lambda(k) for the stored index m.
 */
class PhotonState {
public:
  using SectorKey = std::pair<Mode, FreqSign>;

  //! Construction family, used for normalizability bookkeeping.
  enum class Kind { generic, plane_wave, localized };

  explicit PhotonState(GridPtr grid, double alpha = 0.0, int m = 1);

  const GridPtr &grid_ptr() const { return grid_; }
  const KGrid &grid() const { return *grid_; }
  double alpha() const { return alpha_; }
  int frame_index() const { return m_; }
  Kind kind() const { return kind_; }

  bool real_field() const { return real_field_; }
  bool lorenz() const { return lorenz_; }
  bool normalizable() const { return kind_ == Kind::generic; }

  bool has(Mode mode, FreqSign eps) const { return coeffs_.count({mode, eps}) != 0; }
  //! Coefficient array of a sector; zero array if the sector is absent.
  const VectorXcd &coeff(Mode mode, FreqSign eps) const;
  void set_coeff(Mode mode, FreqSign eps, VectorXcd c);
  void scale(Complex factor);

  //! Sectors in deterministic order (scalar, +1, -1, longitudinal) x (+, -).
  const std::map<SectorKey, VectorXcd> &sectors() const { return coeffs_; }

  bool zero() const;

  // flag plumbing for constructors and ops
  PhotonState &tag_real_field(bool v = true) {
    real_field_ = v;
    return *this;
  }
  PhotonState &tag_lorenz(bool v = true) {
    lorenz_ = v;
    return *this;
  }
  PhotonState &tag_kind(Kind k) {
    kind_ = k;
    return *this;
  }
  PhotonState &set_alpha(double a) {
    alpha_ = a;
    return *this;
  }

private:
  GridPtr grid_;
  std::map<SectorKey, VectorXcd> coeffs_;
  double alpha_;
  int m_;
  Kind kind_ = Kind::generic;
  bool real_field_ = false;
  bool lorenz_ = false;
};

//! Plane wave of unit invariant normalization: the coefficient is
//! amp (2 pi)^3 2 omega_q delta_grid(k - q) with delta_grid = 1/dk^3 at the
//! node q and 0 elsewhere.
PhotonState plane_wave(const GridPtr &grid, const Vec3 &q, Mode mode, FreqSign eps, Complex amp);

//! Smooth normalizable test state c(k) = N exp(-|k - k0|^2 s^2 / 2) with N
//! fixing the invariant inner product to 1. The envelope must fall below
//! 1e-8 of peak on the outermost node shell.
PhotonState gaussian_packet(const GridPtr &grid, const Vec3 &k0, double s, Mode mode, FreqSign eps,
                            int m = 1);

//! Position eigenvector at a dual-lattice point y:
//! c(k) = omega_k^alpha exp(-i eps k.y) stored in the chosen mode sector
//! (the conjugate frame factor lives in the representation).
PhotonState localized_state(const GridPtr &grid, const Vec3 &y, Mode mode, FreqSign eps,
                            double alpha, int m = 1);

//! Single-helicity positive-frequency state with a real profile; the real
//! reduction of its fields rotates about k (circular polarization).
PhotonState circular_state(const GridPtr &grid, const VectorXd &profile, int lambda0, int m = 1);

//! Equal-weight helicity mix giving linear polarization along e_theta or
//! e_phi: c_+- = profile/sqrt2 (theta axis) or -+ i profile/sqrt2 (phi axis).
PhotonState linear_state(const GridPtr &grid, const VectorXd &profile, LinearAxis axis, int m = 1);

//! Impose the k-space Lorenz condition by setting c_0^eps <- c_3^eps
//! nodewise; idempotent.
PhotonState enforce_lorenz(const PhotonState &state);

//! Transverse initial data (A, E) at t0 = 0 on the dual lattice, stored as
//! n^3 x 3 real arrays.
struct BoundaryData {
  Eigen::MatrixX3d A0;
  Eigen::MatrixX3d E0;
};

//! Recover the positive-frequency coefficients whose real fields reproduce
//! the boundary data at t = 0. Rejects data with longitudinal content
//! above 1e-10 of its norm.
PhotonState from_boundary(const GridPtr &grid, const BoundaryData &data, int m = 1);

//! zeta-weighted invariant k-norm squared sum_k dk^3/(2pi)^3 zeta |c|^2
//! over all sectors (may be negative for scalar-dominated states).
double invariant_norm_squared(const PhotonState &state);

} // namespace mqm
