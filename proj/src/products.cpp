#include "mqm/products.hpp"

#include "mqm/numerics.hpp"
#include "mqm/polarization.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mqm {

namespace {

constexpr Mode kSectorOrder[4] = {Mode::scalar, Mode::longitudinal, Mode::plus, Mode::minus};
constexpr FreqSign kFreqOrder[2] = {FreqSign::positive, FreqSign::negative};

void check_pair(const PhotonState &s1, const PhotonState &s2, double alpha, const char *name) {
  if (!(s1.grid() == s2.grid()))
    throw std::invalid_argument(std::string(name) + ": states live on different grids");
  if (s1.alpha() != alpha || s2.alpha() != alpha)
    throw std::invalid_argument(std::string(name) + ": states must use the alpha = " +
                                (alpha == 0.0 ? "0" : "1/2") + " convention");
}

InnerProductValue product_impl(const PhotonState &s1, const PhotonState &s2, bool newton_wigner) {
  InnerProductValue out;
  out.convention = newton_wigner ? InnerProductValue::Convention::newton_wigner
                                 : InnerProductValue::Convention::invariant;
  const KGrid &grid = s1.grid();
  const double w = grid.k_weight();
  std::vector<Complex> terms(grid.size());

  Complex total{};
  for (Mode mode : kSectorOrder)
    for (FreqSign eps : kFreqOrder) {
      if (!s1.has(mode, eps) && !s2.has(mode, eps))
        continue;
      const VectorXcd &c1 = s1.coeff(mode, eps);
      const VectorXcd &c2 = s2.coeff(mode, eps);
      for (Eigen::Index i = 0; i < c1.size(); ++i) {
        Complex t = std::conj(c1[i]) * c2[i];
        if (newton_wigner)
          t /= 2.0 * grid.omega()[i];
        terms[static_cast<std::size_t>(i)] = t;
      }
      const Complex partial =
          zeta_of(mode) * w * pairwise_sum(std::span<const Complex>(terms));
      out.sector_breakdown[{mode, eps}] = partial;
      total += partial;
    }
  out.value = total;
  return out;
}

//! Positive-frequency amplitude per sector, trivial measure, at t = 0.
VectorXcd trivial_psi(const PhotonState &state, Mode mode, FreqSign eps, double t = 0.0) {
  return k_to_x(state.grid(), state.coeff(mode, eps), MeasureKind::trivial, eps, t);
}

//! Real-field amplitude psi = Re sum_lambda psi_lambda^+ at t = 0.
VectorXd real_psi0(const PhotonState &state) {
  const Eigen::Index size = static_cast<Eigen::Index>(state.grid().size());
  VectorXcd acc = VectorXcd::Zero(size);
  for (Mode mode : kSectorOrder)
    if (state.has(mode, FreqSign::positive))
      acc += trivial_psi(state, mode, FreqSign::positive);
  return acc.real();
}

//! Mode fields entering the number current: for each frequency sign and
//! four-vector component, Phi^nu = i sigma * trivial transform of
//! c_lambda e_lambda^nu / sqrt(2 omega), optionally with an extra nodewise
//! spectral multiplier.
struct CurrentModeFields {
  // [eps][nu] -> x-space field; absent eps marked by empty arrays
  std::array<std::array<VectorXcd, 4>, 2> phi;      // fields
  std::array<std::array<std::array<VectorXcd, 4>, 4>, 2> dphi; // d^mu fields
  std::array<bool, 2> present{false, false};
};

std::size_t eps_slot(FreqSign eps) { return eps == FreqSign::positive ? 0 : 1; }

CurrentModeFields build_current_fields(const PhotonState &state, const PolarizationFrame &frame,
                                       double t) {
  const KGrid &grid = state.grid();
  const Eigen::Index size = static_cast<Eigen::Index>(grid.size());
  const double sigma = grid.constants().field_scale();
  const double c_light = grid.constants().c;
  const Complex I(0, 1);

  CurrentModeFields out;
  for (FreqSign eps : kFreqOrder) {
    // lambda-summed four-vector coefficients with the sqrt-invariant weight
    std::array<VectorXcd, 4> comp;
    bool any = false;
    for (int nu = 0; nu < 4; ++nu)
      comp[static_cast<std::size_t>(nu)] = VectorXcd::Zero(size);
    for (Mode mode : kSectorOrder) {
      if (!state.has(mode, eps))
        continue;
      any = true;
      const VectorXcd &c = state.coeff(mode, eps);
      for (Eigen::Index f = 0; f < size; ++f) {
        const Complex v = c[f] / std::sqrt(2.0 * grid.omega()[f]);
        if (v == 0.0)
          continue;
        const CVec4 &e = frame.unit(mode, static_cast<std::size_t>(f));
        for (int nu = 0; nu < 4; ++nu)
          comp[static_cast<std::size_t>(nu)][f] += v * e[nu];
      }
    }
    if (!any)
      continue;
    out.present[eps_slot(eps)] = true;
    const int e = sign_of(eps);
    for (int nu = 0; nu < 4; ++nu) {
      const VectorXcd &base = comp[static_cast<std::size_t>(nu)];
      out.phi[eps_slot(eps)][static_cast<std::size_t>(nu)] =
          (I * sigma) * k_to_x(grid, base, MeasureKind::trivial, eps, t);
      for (int mu = 0; mu < 4; ++mu) {
        // d^mu multiplier: -i eps K^mu with K = (omega/c, k)
        VectorXcd scaled(size);
        for (Eigen::Index f = 0; f < size; ++f) {
          const double kmu = (mu == 0) ? grid.omega()[f] / c_light : grid.node_k(static_cast<std::size_t>(f))[mu - 1];
          scaled[f] = base[f] * (-I * (e * kmu));
        }
        out.dphi[eps_slot(eps)][static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)] =
            (I * sigma) * k_to_x(grid, scaled, MeasureKind::trivial, eps, t);
      }
    }
  }
  return out;
}

} // namespace

InnerProductValue inner_product(const PhotonState &s1, const PhotonState &s2) {
  check_pair(s1, s2, 0.0, "inner_product");
  return product_impl(s1, s2, false);
}

InnerProductValue inner_product_nw(const PhotonState &s1, const PhotonState &s2) {
  check_pair(s1, s2, 0.5, "inner_product_nw");
  return product_impl(s1, s2, true);
}

InnerProductValue convention_product(const PhotonState &s1, const PhotonState &s2) {
  return s1.alpha() == 0.5 ? inner_product_nw(s1, s2) : inner_product(s1, s2);
}

CurrentField current_field(const PhotonState &state, double t) {
  if (state.alpha() != 0.0)
    throw std::invalid_argument("current_field: requires the alpha = 0 convention");
  const KGrid &grid = state.grid();
  const Eigen::Index size = static_cast<Eigen::Index>(grid.size());
  const double g = grid.constants().current_scale();
  const PolarizationFrame frame = PolarizationFrame::build(state.grid_ptr(), state.frame_index());
  const CurrentModeFields mf = build_current_fields(state, frame, t);
  const Complex I(0, 1);

  CurrentField out;
  out.t = t;
  out.j0 = VectorXd::Zero(size);
  out.j0_dhalf = VectorXd::Zero(size);
  out.jvec = Eigen::MatrixX3d::Zero(size, 3);

  // route 1: J^mu = -i g [A*_nu d^mu A_c^nu - (d^mu A*_nu) A_c^nu]
  for (Eigen::Index f = 0; f < size; ++f) {
    CVec4 A = CVec4::Zero(), Ac = CVec4::Zero();
    std::array<CVec4, 4> dA, dAc;
    dA.fill(CVec4::Zero());
    dAc.fill(CVec4::Zero());
    for (FreqSign eps : kFreqOrder) {
      const std::size_t s = eps_slot(eps);
      if (!mf.present[s])
        continue;
      const double e = sign_of(eps);
      for (int nu = 0; nu < 4; ++nu) {
        const Complex v = mf.phi[s][static_cast<std::size_t>(nu)][f];
        A[nu] += v;
        Ac[nu] += e * v;
        for (int mu = 0; mu < 4; ++mu) {
          const Complex dv = mf.dphi[s][static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)][f];
          dA[static_cast<std::size_t>(mu)][nu] += dv;
          dAc[static_cast<std::size_t>(mu)][nu] += e * dv;
        }
      }
    }
    for (int mu = 0; mu < 4; ++mu) {
      const Complex bracket = minkowski_dot(A.conjugate(), dAc[static_cast<std::size_t>(mu)]) -
                              minkowski_dot(dA[static_cast<std::size_t>(mu)].conjugate(), Ac);
      const double jmu = std::real(-I * g * bracket);
      if (mu == 0)
        out.j0[f] = jmu;
      else
        out.jvec(f, mu - 1) = jmu;
    }
  }

  // route 2: J^0 = -2 g sum_{lambda, eps} Psi*_nu D^(1/2) Psi^nu, diagonal in
  // the sector labels (equal to route 1 for single-sector states)
  for (FreqSign eps : kFreqOrder)
    for (Mode mode : kSectorOrder) {
      if (!state.has(mode, eps))
        continue;
      const VectorXcd &c = state.coeff(mode, eps);
      std::array<VectorXcd, 4> psi, dpsi;
      for (int nu = 0; nu < 4; ++nu) {
        VectorXcd base(size), scaled(size);
        for (Eigen::Index f = 0; f < size; ++f) {
          const CVec4 &e = frame.unit(mode, static_cast<std::size_t>(f));
          const Complex v = c[f] * e[nu] / std::sqrt(2.0 * grid.omega()[f]);
          base[f] = v;
          scaled[f] = v * grid.node_k(static_cast<std::size_t>(f)).norm();
        }
        psi[static_cast<std::size_t>(nu)] = k_to_x(grid, base, MeasureKind::trivial, eps, t);
        dpsi[static_cast<std::size_t>(nu)] = k_to_x(grid, scaled, MeasureKind::trivial, eps, t);
      }
      for (Eigen::Index f = 0; f < size; ++f) {
        CVec4 a, b;
        for (int nu = 0; nu < 4; ++nu) {
          a[nu] = psi[static_cast<std::size_t>(nu)][f];
          b[nu] = dpsi[static_cast<std::size_t>(nu)][f];
        }
        out.j0_dhalf[f] += std::real(-2.0 * g * minkowski_dot(a.conjugate(), b));
      }
    }
  // field prefactors i sigma appear in psi via build path only for route 1;
  // route 2 carries sigma^2 = hbar/eps0 explicitly
  const double sigma2 = grid.constants().field_scale() * grid.constants().field_scale();
  out.j0_dhalf *= sigma2;
  return out;
}

CurrentSample four_current(const PhotonState &state, double t, const Vec3 &x) {
  const CurrentField field = current_field(state, t);
  const std::size_t f = state.grid().index_of_x(x);
  CurrentSample s;
  s.t = t;
  s.x = x;
  s.j0 = field.j0[static_cast<Eigen::Index>(f)];
  s.j0_dhalf = field.j0_dhalf[static_cast<Eigen::Index>(f)];
  s.jvec = field.jvec.row(static_cast<Eigen::Index>(f));
  return s;
}

double continuity_residual(const PhotonState &state, double t, double dt_scale) {
  if (!state.normalizable())
    throw non_normalizable_error("continuity_residual: state is not normalizable");
  const KGrid &grid = state.grid();
  const double c_light = grid.constants().c;
  const double dt = dt_scale * grid.dx() / (10.0 * c_light);

  const CurrentField fwd = current_field(state, t + dt);
  const CurrentField bwd = current_field(state, t - dt);
  const CurrentField mid = current_field(state, t);

  // Spectral divergence of the current. J is a product of mode fields, so
  // its spatial frequencies are mode differences k - k', which live on the
  // unshifted integer lattice; the derivative must be taken there even when
  // the state's grid carries the half-cell offset.
  const GridPtr plain = KGrid::make(grid.n(), grid.dk() * grid.n() / 2.0, false,
                                    grid.constants());
  const Eigen::Index size = static_cast<Eigen::Index>(grid.size());
  VectorXd div = VectorXd::Zero(size);
  const Complex I(0, 1);
  for (int d = 0; d < 3; ++d) {
    VectorXcd spec = x_to_k(*plain, mid.jvec.col(d).cast<Complex>());
    for (Eigen::Index f = 0; f < size; ++f)
      spec[f] *= I * plain->node_k(static_cast<std::size_t>(f))[d];
    div += k_to_x(*plain, spec, MeasureKind::trivial, FreqSign::positive, 0.0).real();
  }

  double max_res = 0.0, max_j0 = 0.0;
  for (Eigen::Index f = 0; f < size; ++f) {
    const double dtj0 = (fwd.j0[f] - bwd.j0[f]) / (2.0 * dt);
    max_res = std::max(max_res, std::abs(dtj0 + c_light * div[f]));
    max_j0 = std::max(max_j0, std::abs(mid.j0[f]));
  }
  if (max_j0 == 0.0)
    return 0.0;
  const double k_max = grid.dk() * grid.n() / 2.0;
  return max_res / (max_j0 * c_light * k_max);
}

BornDensity born_density(const KGrid &grid, const VectorXd &psi) {
  if (psi.size() != static_cast<Eigen::Index>(grid.size()))
    throw std::invalid_argument("born_density: psi does not match the dual lattice");
  BornDensity out;
  out.rho = psi.array().square();
  std::vector<double> terms(out.rho.data(), out.rho.data() + out.rho.size());
  out.total = grid.x_weight() * pairwise_sum(std::span<const double>(terms));
  return out;
}

ParsevalReport parseval_report(const PhotonState &state) {
  if (!state.normalizable() || state.zero())
    throw non_normalizable_error("parseval_report: state is not normalizable");
  ParsevalReport rep;
  rep.knorm = invariant_norm_squared(state);

  const KGrid &grid = state.grid();
  std::vector<double> terms(grid.size());
  double xnorm = 0.0;
  for (Mode mode : kSectorOrder)
    for (FreqSign eps : kFreqOrder) {
      if (!state.has(mode, eps))
        continue;
      const VectorXcd psi = trivial_psi(state, mode, eps);
      for (Eigen::Index i = 0; i < psi.size(); ++i)
        terms[static_cast<std::size_t>(i)] = std::norm(psi[i]);
      xnorm += zeta_of(mode) * grid.x_weight() * pairwise_sum(std::span<const double>(terms));
    }
  rep.xnorm = xnorm;
  rep.mismatch = std::abs(rep.knorm - rep.xnorm) / std::abs(rep.knorm);
  return rep;
}

PhotonState normalize_real_field(const PhotonState &state) {
  if (!state.real_field())
    throw std::invalid_argument("normalize_real_field: state is not flagged real-field");
  const VectorXd psi = real_psi0(state);
  const BornDensity d = born_density(state.grid(), psi);
  if (d.total <= 0.0)
    throw non_normalizable_error("normalize_real_field: zero amplitude");
  PhotonState out = state;
  out.scale(1.0 / std::sqrt(d.total));
  return out;
}

} // namespace mqm
