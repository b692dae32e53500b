#include "mqm/operators.hpp"

#include "mqm/numerics.hpp"
#include "mqm/polarization.hpp"
#include "mqm/products.hpp"

#include <cmath>
#include <stdexcept>

namespace mqm {

namespace {

constexpr Mode kSectorOrder[4] = {Mode::scalar, Mode::longitudinal, Mode::plus, Mode::minus};
constexpr FreqSign kFreqOrder[2] = {FreqSign::positive, FreqSign::negative};

//! 4th-order d/dk along one axis of a flat n^3 array; one-sided stencils on
//! the two outermost shells.
VectorXcd derivative_axis(const KGrid &grid, const VectorXcd &c, int axis) {
  const int n = grid.n();
  const double h = grid.dk();
  VectorXcd out(c.size());

  const std::size_t stride = axis == 0 ? static_cast<std::size_t>(n) * n
                             : axis == 1 ? static_cast<std::size_t>(n)
                                         : 1;
  const std::size_t plane1 = axis == 0 ? 1 : static_cast<std::size_t>(n) * n;
  const std::size_t plane2 = axis == 2 ? static_cast<std::size_t>(n) : 1;
  // enumerate lines along `axis`: outer indices (a, b) cover the other axes
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::size_t base;
      if (axis == 0)
        base = static_cast<std::size_t>(a) * n + b;
      else if (axis == 1)
        base = static_cast<std::size_t>(a) * n * n + b;
      else
        base = (static_cast<std::size_t>(a) * n + b) * n;
      (void)plane1;
      (void)plane2;
      auto at = [&](int i) { return c[static_cast<Eigen::Index>(base + stride * i)]; };
      auto put = [&](int i, Complex v) {
        out[static_cast<Eigen::Index>(base + stride * i)] = v;
      };
      const double inv12h = 1.0 / (12.0 * h);
      put(0, (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) * inv12h);
      put(1, (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) * inv12h);
      for (int i = 2; i < n - 2; ++i)
        put(i, (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) * inv12h);
      put(n - 2, (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) + 6.0 * at(n - 4) -
                  at(n - 5)) *
                     inv12h);
      put(n - 1, (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) - 16.0 * at(n - 4) +
                  3.0 * at(n - 5)) *
                     inv12h);
    }
  return out;
}

void check_boundary_support(const PhotonState &state) {
  if (state.kind() == PhotonState::Kind::localized)
    return; // plane-wave modulus everywhere; FD is uniformly accurate
  const KGrid &grid = state.grid();
  const int n = grid.n();
  for (const auto &[key, c] : state.sectors()) {
    const double peak = c.cwiseAbs().maxCoeff();
    if (peak == 0.0)
      continue;
    double edge = 0.0;
    std::size_t f = 0;
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int i3 = 0; i3 < n; ++i3, ++f) {
          const bool near = i1 < 2 || i1 >= n - 2 || i2 < 2 || i2 >= n - 2 || i3 < 2 ||
                            i3 >= n - 2;
          if (near)
            edge = std::max(edge, std::abs(c[static_cast<Eigen::Index>(f)]));
        }
    if (edge > 1e-8 * peak)
      throw std::domain_error("apply_position: coefficients exceed 1e-8 of peak within two "
                              "nodes of the k-boundary");
  }
}

PhotonState nodewise_scaled(const PhotonState &state,
                            const std::function<Complex(std::size_t, Mode, FreqSign)> &factor) {
  PhotonState out(state.grid_ptr(), state.alpha(), state.frame_index());
  out.tag_kind(state.kind());
  out.tag_real_field(state.real_field());
  out.tag_lorenz(state.lorenz());
  for (const auto &[key, c] : state.sectors()) {
    VectorXcd scaled(c.size());
    for (Eigen::Index f = 0; f < c.size(); ++f)
      scaled[f] = c[f] * factor(static_cast<std::size_t>(f), key.first, key.second);
    out.set_coeff(key.first, key.second, std::move(scaled));
  }
  return out;
}

double norm_for(const PhotonState &s) {
  const Complex n2 = convention_product(s, s).value;
  return std::sqrt(std::abs(n2));
}

} // namespace

PhotonState apply_d_sqrt(const PhotonState &state) {
  const KGrid &grid = state.grid();
  return nodewise_scaled(state, [&](std::size_t f, Mode, FreqSign) {
    return Complex(grid.node_k(f).norm(), 0.0);
  });
}

double energy_expectation(const PhotonState &state) {
  if (!state.normalizable() || state.zero())
    throw non_normalizable_error("energy_expectation: state is not normalizable");
  const PhotonState ds = apply_d_sqrt(state);
  const Complex num = convention_product(state, ds).value;
  const Complex den = convention_product(state, state).value;
  const PhysicalConstants &pc = state.grid().constants();
  return pc.hbar * pc.c * std::real(num / den);
}

PhotonState evolve(const PhotonState &state, double tau) {
  const KGrid &grid = state.grid();
  const Complex I(0, 1);
  return nodewise_scaled(state, [&](std::size_t f, Mode, FreqSign eps) {
    return std::exp(-I * (sign_of(eps) * grid.omega()[static_cast<Eigen::Index>(f)] * tau));
  });
}

PhotonState conjugate_field(const PhotonState &state) {
  return nodewise_scaled(state,
                         [](std::size_t, Mode, FreqSign eps) { return Complex(sign_of(eps), 0); });
}

std::array<PhotonState, 3> apply_position(const PhotonState &state, double alpha) {
  if (alpha != state.alpha())
    throw std::invalid_argument("apply_position: alpha does not match the state's convention");
  check_boundary_support(state);
  const KGrid &grid = state.grid();
  const Complex I(0, 1);

  std::array<PhotonState, 3> out{PhotonState(state.grid_ptr(), alpha, state.frame_index()),
                                 PhotonState(state.grid_ptr(), alpha, state.frame_index()),
                                 PhotonState(state.grid_ptr(), alpha, state.frame_index())};
  for (const auto &[key, c] : state.sectors()) {
    for (int axis = 0; axis < 3; ++axis) {
      VectorXcd d = I * derivative_axis(grid, c, axis);
      if (alpha != 0.0)
        for (Eigen::Index f = 0; f < d.size(); ++f) {
          const Vec3 k = grid.node_k(static_cast<std::size_t>(f));
          d[f] -= I * (alpha * k[axis] / k.squaredNorm()) * c[f];
        }
      out[static_cast<std::size_t>(axis)].set_coeff(key.first, key.second, std::move(d));
    }
  }
  return out;
}

std::array<PhotonState, 3> apply_position_cartesian(const PhotonState &state, double alpha) {
  if (alpha != state.alpha())
    throw std::invalid_argument("apply_position_cartesian: alpha mismatch");
  check_boundary_support(state);
  const KGrid &grid = state.grid();
  const Eigen::Index size = static_cast<Eigen::Index>(grid.size());
  const PolarizationFrame frame = PolarizationFrame::build(state.grid_ptr(), state.frame_index());
  const Complex I(0, 1);

  std::array<PhotonState, 3> out{PhotonState(state.grid_ptr(), alpha, state.frame_index()),
                                 PhotonState(state.grid_ptr(), alpha, state.frame_index()),
                                 PhotonState(state.grid_ptr(), alpha, state.frame_index())};

  for (FreqSign eps : kFreqOrder) {
    bool any = false;
    for (Mode mode : kSectorOrder)
      any = any || state.has(mode, eps);
    if (!any)
      continue;

    // Cartesian 3-vector view v(k) = sum_l c_l(k) e_l(k) (spatial modes)
    std::array<VectorXcd, 3> v;
    for (auto &comp : v)
      comp = VectorXcd::Zero(size);
    for (Mode mode : {Mode::plus, Mode::minus, Mode::longitudinal}) {
      if (!state.has(mode, eps))
        continue;
      const VectorXcd &c = state.coeff(mode, eps);
      for (Eigen::Index f = 0; f < size; ++f) {
        const CVec3 e = frame.spatial(mode, static_cast<std::size_t>(f));
        for (int d = 0; d < 3; ++d)
          v[static_cast<std::size_t>(d)][f] += c[f] * e[d];
      }
    }

    for (int axis = 0; axis < 3; ++axis) {
      // i d/dk of every Cartesian component
      std::array<VectorXcd, 3> res;
      for (int d = 0; d < 3; ++d)
        res[static_cast<std::size_t>(d)] =
            I * derivative_axis(grid, v[static_cast<std::size_t>(d)], axis);
      for (Eigen::Index f = 0; f < size; ++f) {
        const Vec3 k = grid.node_k(static_cast<std::size_t>(f));
        const double k2 = k.squaredNorm();
        const Vec3 khat = k / k.norm();
        CVec3 vf(v[0][f], v[1][f], v[2][f]);
        // -i alpha k/|k|^2
        CVec3 add = (-I * (alpha * k[axis] / k2)) * vf;
        // (k x S)/|k|^2: component-axis output, [(k x S) v]_a = -i (delta_{axis,a} k.v - k_axis v_a)
        const Complex kdotv = Complex(k[0]) * vf[0] + Complex(k[1]) * vf[1] + Complex(k[2]) * vf[2];
        for (int a = 0; a < 3; ++a) {
          Complex t = -I * ((a == axis ? kdotv : Complex(0)) - k[axis] * vf[a]);
          add[a] += t / k2;
        }
        // - sigma_hat a^(m): sigma_hat v = i khat x v
        const Vec3 am = euler_connection(k, state.frame_index());
        const CVec3 sv = SpinMatrices::helicity_apply(khat, vf);
        add -= am[axis] * sv;
        for (int d = 0; d < 3; ++d)
          res[static_cast<std::size_t>(d)][f] += add[d];
      }
      // project back onto the frame: s_l = e_l^dagger . v
      for (Mode mode : {Mode::plus, Mode::minus, Mode::longitudinal}) {
        VectorXcd proj(size);
        for (Eigen::Index f = 0; f < size; ++f) {
          const CVec3 e = frame.spatial(mode, static_cast<std::size_t>(f));
          proj[f] = std::conj(e[0]) * res[0][f] + std::conj(e[1]) * res[1][f] +
                    std::conj(e[2]) * res[2][f];
        }
        out[static_cast<std::size_t>(axis)].set_coeff(mode, eps, std::move(proj));
      }
    }
    // scalar sector: orbital part only
    if (state.has(Mode::scalar, eps)) {
      const VectorXcd &c = state.coeff(Mode::scalar, eps);
      for (int axis = 0; axis < 3; ++axis) {
        VectorXcd d = I * derivative_axis(grid, c, axis);
        if (alpha != 0.0)
          for (Eigen::Index f = 0; f < size; ++f) {
            const Vec3 k = grid.node_k(static_cast<std::size_t>(f));
            d[f] -= I * (alpha * k[axis] / k.squaredNorm()) * c[f];
          }
        out[static_cast<std::size_t>(axis)].set_coeff(Mode::scalar, eps, std::move(d));
      }
    }
  }
  return out;
}

double position_hermiticity_asymmetry(const PhotonState &s1, const PhotonState &s2, int axis) {
  const auto x2 = apply_position(s2, s2.alpha());
  const auto x1 = apply_position(s1, s1.alpha());
  const Complex fwd = convention_product(s1, x2[static_cast<std::size_t>(axis)]).value;
  const Complex rev = convention_product(x1[static_cast<std::size_t>(axis)], s2).value;
  const double box = s1.grid().period();
  return std::abs(fwd - std::conj(rev)) / (norm_for(s1) * norm_for(s2) * box);
}

OperatorReport position_report(const PhotonState &state, int axis) {
  OperatorReport rep;
  const auto xs = apply_position(state, state.alpha());
  const Complex num = convention_product(state, xs[static_cast<std::size_t>(axis)]).value;
  const Complex den = convention_product(state, state).value;
  rep.norm_used = std::abs(den);
  rep.expectation = num / den;
  rep.hermiticity_residual = position_hermiticity_asymmetry(state, state, axis);
  return rep;
}

PhotonState helicity_op(const PhotonState &state) {
  return nodewise_scaled(state, [](std::size_t, Mode mode, FreqSign) {
    return Complex(helicity_of(mode), 0.0);
  });
}

double intrinsic_j3(const PhysicalConstants &pc, const Vec3 &k, int lambda, int m) {
  if (lambda != 1 && lambda != -1)
    throw std::invalid_argument("intrinsic_j3: lambda must be +1 or -1");
  if (k.norm() == 0.0)
    throw std::domain_error("intrinsic_j3: |k| = 0");
  const SphericalAngles a = spherical_axes(k);
  const double st = std::sin(a.theta), ct = std::cos(a.theta);
  if (st < 1e-14) {
    const int pole = ct > 0 ? 1 : -1;
    if (m != pole)
      throw std::domain_error("intrinsic_j3: divergent connection at the pole for this m");
    return pc.hbar * m * lambda; // finite limit
  }
  const Vec3 e3{0, 0, 1};
  return pc.hbar * lambda * (((ct - m) / st) * a.e_theta.dot(e3) + a.e_k.dot(e3));
}

Vec3 velocity_expectation(const PhotonState &state) {
  if (!state.normalizable() || state.zero())
    throw non_normalizable_error("velocity_expectation: state is not normalizable");
  const KGrid &grid = state.grid();
  const double w = grid.k_weight();
  Vec3 num = Vec3::Zero();
  double den = 0.0;
  for (const auto &[key, c] : state.sectors()) {
    const double zeta = zeta_of(key.first);
    for (Eigen::Index f = 0; f < c.size(); ++f) {
      const double p = zeta * w * std::norm(c[f]);
      const Vec3 k = grid.node_k(static_cast<std::size_t>(f));
      num += p * (k / k.norm());
      den += p;
    }
  }
  return grid.constants().c * (num / den);
}

Vec3 momentum_expectation(const PhotonState &state) {
  if (state.zero())
    throw non_normalizable_error("momentum_expectation: zero state");
  const KGrid &grid = state.grid();
  const double w = grid.k_weight();
  Vec3 num = Vec3::Zero();
  double den = 0.0;
  for (const auto &[key, c] : state.sectors()) {
    const double zeta = zeta_of(key.first);
    for (Eigen::Index f = 0; f < c.size(); ++f) {
      const double p = zeta * w * std::norm(c[f]);
      num += p * grid.node_k(static_cast<std::size_t>(f));
      den += p;
    }
  }
  return grid.constants().hbar * (num / den);
}

} // namespace mqm
