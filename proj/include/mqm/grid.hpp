#pragma once
#include "mqm/constants.hpp"
#include "mqm/types.hpp"

#include <memory>

namespace mqm {

//! Weight attached to each momentum node by the Fourier bridge:
//! `invariant` uses 1/(2 omega_k), `trivial` uses 1.
enum class MeasureKind { invariant, trivial };

/*!
 * Uniform Cartesian momentum lattice with its dual position lattice.
 *
 * Nodes per axis are k(i) = dk*(i - n/2 + offset/2), i in [0, n); with the
 * half-cell offset no node sits at |k| = 0, which keeps the invariant
 * measure 1/(2 omega_k) and the polarization frame finite everywhere.
 * The dual lattice has spacing dx = 2 pi/(n dk), period L = 2 pi/dk, and
 * points x(j) = dx*(j - n/2).
 *
 * Arrays on the grid are flat, row-major over (axis1, axis2, axis3):
 * flat = (i1*n + i2)*n + i3.
 */
class KGrid {
public:
  //! Build a grid covering [-k_max, k_max) per axis: dk = 2 k_max / n.
  //! Requires n even, n >= 4, k_max > 0.
  static std::shared_ptr<const KGrid> make(int n, double k_max, bool offset,
                                           PhysicalConstants pc = {});

  int n() const { return n_; }
  double dk() const { return dk_; }
  bool offset() const { return offset_; }
  double dx() const { return dx_; }
  double period() const { return 2.0 * M_PI / dk_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  const PhysicalConstants &constants() const { return pc_; }

  //! Node volume element over (2 pi)^3, the k-sum weight.
  double k_weight() const { return dk_ * dk_ * dk_ / std::pow(2.0 * M_PI, 3); }
  //! Dual cell volume dx^3, the x-sum weight.
  double x_weight() const { return dx_ * dx_ * dx_; }

  double axis_k(int i) const { return dk_ * (i - n_ / 2 + (offset_ ? 0.5 : 0.0)); }
  double axis_x(int j) const { return dx_ * (j - n_ / 2); }

  std::size_t flat(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n_ + i2) * n_ + i3;
  }
  Vec3i unflat(std::size_t f) const {
    const int i3 = static_cast<int>(f % n_);
    const int i2 = static_cast<int>((f / n_) % n_);
    const int i1 = static_cast<int>(f / (static_cast<std::size_t>(n_) * n_));
    return {i1, i2, i3};
  }

  Vec3 node_k(std::size_t f) const {
    const Vec3i i = unflat(f);
    return {axis_k(i[0]), axis_k(i[1]), axis_k(i[2])};
  }
  Vec3 node_x(std::size_t f) const {
    const Vec3i j = unflat(f);
    return {axis_x(j[0]), axis_x(j[1]), axis_x(j[2])};
  }

  //! Per-node frequency table omega_k = c |k|.
  const VectorXd &omega() const { return omega_; }
  double min_omega() const { return min_omega_; }

  //! Flat index of a wavevector that must lie on the lattice (1e-9*dk snap).
  std::size_t index_of_k(const Vec3 &k) const;
  //! Flat index of a position that must lie on the dual lattice.
  std::size_t index_of_x(const Vec3 &x) const;

  friend bool operator==(const KGrid &a, const KGrid &b) {
    return a.n_ == b.n_ && a.dk_ == b.dk_ && a.offset_ == b.offset_ && a.pc_ == b.pc_;
  }

private:
  KGrid(int n, double dk, bool offset, PhysicalConstants pc);

  int n_;
  double dk_;
  bool offset_;
  double dx_;
  PhysicalConstants pc_;
  VectorXd omega_;
  double min_omega_;
};

using GridPtr = std::shared_ptr<const KGrid>;

//! omega_k = c|k| for a lattice node; rejects off-lattice wavevectors.
double omega_at(const KGrid &grid, const Vec3 &k);

/*!
 * Momentum -> position bridge:
 *   psi(x) = sum_k [dk^3/(2 pi)^3] w(k) c(k) exp(-i eps (omega_k t - k.x))
 * with w = 1/(2 omega_k) (invariant) or 1 (trivial), evaluated on the whole
 * dual lattice by FFT. The time phase exp(-i eps omega_k t) is applied
 * nodewise before transforming.
 */
VectorXcd k_to_x(const KGrid &grid, const VectorXcd &coeff, MeasureKind measure, FreqSign eps,
                 double t);

//! Exact inverse of the trivial-measure bridge at t = 0:
//!   c(k) = dx^3 sum_x psi(x) exp(-i k.x).
VectorXcd x_to_k(const KGrid &grid, const VectorXcd &field);

} // namespace mqm
