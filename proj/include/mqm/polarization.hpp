#pragma once
#include "mqm/grid.hpp"
#include "mqm/types.hpp"

#include <array>
#include <memory>

namespace mqm {

//! Cartesian spin-1 matrices (S_j)_{lm} = -i eps_{jlm}.
//! They satisfy [S_i, S_j] = i eps_{ijk} S_k and S^2 = 2 I.
struct SpinMatrices {
  static const CMat3 &S(int j); // j in {1, 2, 3}
  //! Helicity operator khat.S acting on a spatial vector: (khat.S)v = i khat x v.
  static CVec3 helicity_apply(const Vec3 &khat, const CVec3 &v);
};

//! k-space spherical angles with atan2 conventions, phi in (-pi, pi],
//! theta in [0, pi]; phi = 0 on the polar axis.
struct SphericalAngles {
  double theta = 0.0;
  double phi = 0.0;
  Vec3 e_theta = Vec3::Zero();
  Vec3 e_phi = Vec3::Zero();
  Vec3 e_k = Vec3::Zero();
};
SphericalAngles spherical_axes(const Vec3 &k);

/*!
 * Transverse helicity unit four-vector for the chi = -m phi convention.
 * Time component 0; the spatial part is the Cartesian closed form
 *
 *   e_lambda = [ (cos th - l) e^{i(ml+1)phi} (e1 - i l e2)
 *                - sqrt2 sin th e^{i ml phi} e3
 *                + (cos th + l) e^{i(ml-1)phi} (e1 + i l e2) ] / (2 sqrt2),
 *
 * which at theta in {0, pi} reduces to its analytic limit with the
 * atan2 value phi = 0. Requires |k| > 0.
 */
CVec4 transverse_unit(const Vec3 &k, int lambda, int m);

//! Euler-angle connection a^(m) = ((cos th - m)/(|k| sin th)) e_phi.
//! At the poles the limit is finite (zero) only when m matches the sign of
//! cos theta; otherwise the pole is singular and rejected.
Vec3 euler_connection(const Vec3 &k, int m);

/*!
 * Immutable per-node tetrad {e_0, e_+1, e_-1, e_k} for every lattice node.
 *
 * e_0 = (1,0,0,0) everywhere; e_k is purely spatial along the node
 * direction; the transverse pair carries the chi = -m phi phase. The
 * metric relations e*_{l mu} e_{l'}^mu = -zeta_l delta_{ll'} hold with
 * zeta = (-1,1,1,1).
 */
class PolarizationFrame {
public:
  static PolarizationFrame build(const GridPtr &grid, int m);

  int m() const { return m_; }
  const KGrid &grid() const { return *grid_; }

  const CVec4 &unit(Mode mode, std::size_t node) const {
    return table_[static_cast<std::size_t>(mode)][node];
  }
  //! Spatial part of a mode vector (zero vector for the scalar mode).
  CVec3 spatial(Mode mode, std::size_t node) const {
    const CVec4 &e = unit(mode, node);
    return {e[1], e[2], e[3]};
  }

private:
  PolarizationFrame(GridPtr grid, int m) : grid_(std::move(grid)), m_(m) {}
  GridPtr grid_;
  int m_;
  std::array<std::vector<CVec4>, 4> table_;
};

} // namespace mqm
