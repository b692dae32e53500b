#include "mqm/polarization.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mqm {

const CMat3 &SpinMatrices::S(int j) {
  static const CMat3 s1 = [] {
    CMat3 m = CMat3::Zero();
    m(1, 2) = Complex(0, -1);
    m(2, 1) = Complex(0, 1);
    return m;
  }();
  static const CMat3 s2 = [] {
    CMat3 m = CMat3::Zero();
    m(2, 0) = Complex(0, -1);
    m(0, 2) = Complex(0, 1);
    return m;
  }();
  static const CMat3 s3 = [] {
    CMat3 m = CMat3::Zero();
    m(0, 1) = Complex(0, -1);
    m(1, 0) = Complex(0, 1);
    return m;
  }();
  switch (j) {
  case 1:
    return s1;
  case 2:
    return s2;
  case 3:
    return s3;
  }
  throw std::invalid_argument("SpinMatrices::S: j must be 1, 2, or 3");
}

CVec3 SpinMatrices::helicity_apply(const Vec3 &khat, const CVec3 &v) {
  // (khat.S)v = i khat x v
  const Complex I(0, 1);
  return I * CVec3(khat[1] * v[2] - khat[2] * v[1], khat[2] * v[0] - khat[0] * v[2],
                   khat[0] * v[1] - khat[1] * v[0]);
}

SphericalAngles spherical_axes(const Vec3 &k) {
  const double kn = k.norm();
  if (kn == 0.0)
    throw std::domain_error("spherical_axes: direction undefined at |k| = 0");
  SphericalAngles a;
  const double rho = std::hypot(k[0], k[1]);
  a.theta = std::atan2(rho, k[2]);
  a.phi = std::atan2(k[1], k[0]); // 0 on the polar axis by atan2 convention
  const double ct = std::cos(a.theta), st = std::sin(a.theta);
  const double cp = std::cos(a.phi), sp = std::sin(a.phi);
  a.e_theta = {ct * cp, ct * sp, -st};
  a.e_phi = {-sp, cp, 0.0};
  a.e_k = k / kn;
  return a;
}

CVec4 transverse_unit(const Vec3 &k, int lambda, int m) {
  if (lambda != 1 && lambda != -1)
    throw std::invalid_argument("transverse_unit: lambda must be +1 or -1");
  if (k.norm() == 0.0)
    throw std::domain_error("transverse_unit: direction undefined at |k| = 0");
  const SphericalAngles a = spherical_axes(k);
  const double l = lambda;
  const Complex I(0, 1);
  const double ml = m * l;

  // Cartesian expansion of (e_theta + i l e_phi) e^{i l m phi} / sqrt2 into
  // the three definite-(L3, S3) terms: spin vectors (e1 -+ i e2) with
  // orbital phases e^{i(ml +- 1) phi}, plus e3 with e^{i ml phi}.
  const Complex f1 = (std::cos(a.theta) - l) * std::exp(I * ((ml + 1) * a.phi));
  const Complex f2 = -2.0 * std::sin(a.theta) * std::exp(I * (ml * a.phi));
  const Complex f3 = (std::cos(a.theta) + l) * std::exp(I * ((ml - 1) * a.phi));
  const double norm = 1.0 / (2.0 * std::sqrt(2.0));

  CVec3 e = CVec3::Zero();
  e[0] = norm * (f1 + f3);
  e[1] = norm * (-I * f1 + I * f3);
  e[2] = norm * f2;
  return {Complex(0, 0), e[0], e[1], e[2]};
}

Vec3 euler_connection(const Vec3 &k, int m) {
  const double kn = k.norm();
  if (kn == 0.0)
    throw std::domain_error("euler_connection: |k| = 0");
  const SphericalAngles a = spherical_axes(k);
  const double st = std::sin(a.theta);
  const double ct = std::cos(a.theta);
  if (st < 1e-14) {
    // the pole limit of (cos th - m)/sin th is finite only when m = cos th
    const int pole = ct > 0 ? 1 : -1;
    if (m != pole)
      throw std::domain_error("euler_connection: pole singularity for this m");
    return Vec3::Zero();
  }
  return ((ct - m) / (kn * st)) * a.e_phi;
}

PolarizationFrame PolarizationFrame::build(const GridPtr &grid, int m) {
  if (!grid)
    throw std::invalid_argument("PolarizationFrame: null grid");
  if (grid->min_omega() == 0.0)
    throw std::domain_error("PolarizationFrame: grid contains a |k| = 0 node; "
                            "use an offset grid");
  PolarizationFrame frame(grid, m);
  const std::size_t size = grid->size();
  for (auto &tab : frame.table_)
    tab.resize(size);
  for (std::size_t f = 0; f < size; ++f) {
    const Vec3 k = grid->node_k(f);
    const Vec3 ek = k / k.norm();
    frame.table_[static_cast<std::size_t>(Mode::scalar)][f] = CVec4(1, 0, 0, 0);
    frame.table_[static_cast<std::size_t>(Mode::plus)][f] = transverse_unit(k, +1, m);
    frame.table_[static_cast<std::size_t>(Mode::minus)][f] = transverse_unit(k, -1, m);
    frame.table_[static_cast<std::size_t>(Mode::longitudinal)][f] =
        CVec4(0, ek[0], ek[1], ek[2]);
  }
  return frame;
}

} // namespace mqm
