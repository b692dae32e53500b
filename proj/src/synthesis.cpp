#include "mqm/synthesis.hpp"

#include "mqm/polarization.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace mqm {

namespace {

constexpr Mode kSectorOrder[4] = {Mode::scalar, Mode::longitudinal, Mode::plus, Mode::minus};
constexpr FreqSign kFreqOrder[2] = {FreqSign::positive, FreqSign::negative};

bool has_negative_content(const PhotonState &state) {
  for (Mode mode : kSectorOrder)
    if (state.has(mode, FreqSign::negative) &&
        state.coeff(mode, FreqSign::negative).cwiseAbs().maxCoeff() != 0.0)
      return true;
  return false;
}

} // namespace

FieldSnapshot synthesize(const PhotonState &state, double t) {
  const KGrid &grid = state.grid();
  const Eigen::Index size = static_cast<Eigen::Index>(grid.size());
  const PolarizationFrame frame = PolarizationFrame::build(state.grid_ptr(), state.frame_index());
  const double sigma = grid.constants().field_scale();
  const double eps0 = grid.constants().eps0;
  const Complex I(0, 1);

  FieldSnapshot snap;
  snap.t = t;
  snap.A = Eigen::MatrixX4cd::Zero(size, 4);
  snap.E = Eigen::MatrixX3cd::Zero(size, 3);
  snap.pi = Eigen::MatrixX4cd::Zero(size, 4);
  snap.psi = VectorXcd::Zero(size);

  for (FreqSign eps : kFreqOrder) {
    bool any = false;
    for (Mode mode : kSectorOrder)
      any = any || state.has(mode, eps);
    if (!any)
      continue;
    const int e = sign_of(eps);

    // four-vector coefficients C^nu(k) = sum_l c_l(k) e_l^nu(k)
    std::array<VectorXcd, 4> comp;
    for (auto &c : comp)
      c = VectorXcd::Zero(size);
    std::array<VectorXcd, 3> comp_perp; // transverse sectors only, for E
    for (auto &c : comp_perp)
      c = VectorXcd::Zero(size);
    for (Mode mode : kSectorOrder) {
      if (!state.has(mode, eps))
        continue;
      const VectorXcd &c = state.coeff(mode, eps);
      const bool transverse = mode == Mode::plus || mode == Mode::minus;
      for (Eigen::Index f = 0; f < size; ++f) {
        if (c[f] == 0.0)
          continue;
        const CVec4 &ev = frame.unit(mode, static_cast<std::size_t>(f));
        for (int nu = 0; nu < 4; ++nu)
          comp[static_cast<std::size_t>(nu)][f] += c[f] * ev[nu];
        if (transverse)
          for (int d = 0; d < 3; ++d)
            comp_perp[static_cast<std::size_t>(d)][f] += c[f] * ev[d + 1];
      }
    }

    // A^nu: invariant measure, prefactor i sigma
    for (int nu = 0; nu < 4; ++nu)
      snap.A.col(nu) += (I * sigma) *
                        k_to_x(grid, comp[static_cast<std::size_t>(nu)], MeasureKind::invariant,
                               eps, t);

    // pi^nu = -eps0 dt A^nu, spectrally: extra nodewise factor -i eps omega
    for (int nu = 0; nu < 4; ++nu) {
      VectorXcd scaled(size);
      for (Eigen::Index f = 0; f < size; ++f)
        scaled[f] = comp[static_cast<std::size_t>(nu)][f] * (-I * (e * grid.omega()[f]));
      snap.pi.col(nu) += (-eps0) * (I * sigma) *
                         k_to_x(grid, scaled, MeasureKind::invariant, eps, t);
    }

    // E = -dt A for the transverse content: trivial measure with weight 1/2
    for (int d = 0; d < 3; ++d)
      snap.E.col(d) += (-0.5 * e * sigma) *
                       k_to_x(grid, comp_perp[static_cast<std::size_t>(d)], MeasureKind::trivial,
                              eps, t);
  }

  snap.psi_by_mode = synthesize_psi(state, t);
  for (const auto &[mode, arr] : snap.psi_by_mode)
    snap.psi += arr;
  return snap;
}

std::map<Mode, VectorXcd> synthesize_psi(const PhotonState &state, double t) {
  const KGrid &grid = state.grid();
  std::map<Mode, VectorXcd> out;
  for (Mode mode : kSectorOrder)
    for (FreqSign eps : kFreqOrder) {
      if (!state.has(mode, eps))
        continue;
      VectorXcd part = k_to_x(grid, state.coeff(mode, eps), MeasureKind::trivial, eps, t);
      auto it = out.find(mode);
      if (it == out.end())
        out.emplace(mode, std::move(part));
      else
        it->second += part;
    }
  return out;
}

RealFields reduce_real(const PhotonState &state, const FieldSnapshot &snapshot) {
  if (!state.real_field())
    throw std::invalid_argument("reduce_real: state is not flagged real-field");
  if (has_negative_content(state))
    throw std::invalid_argument("reduce_real: state carries independent negative-frequency "
                                "content; the eps = - sector is redundant for real fields");
  RealFields out;
  out.t = snapshot.t;
  out.A = snapshot.A.real();
  out.E = snapshot.E.real();
  out.pi = snapshot.pi.real();
  out.psi = snapshot.psi.real();
  return out;
}

VectorXd reduce_real_psi(const PhotonState &state, double t) {
  if (!state.real_field())
    throw std::invalid_argument("reduce_real_psi: state is not flagged real-field");
  if (has_negative_content(state))
    throw std::invalid_argument("reduce_real_psi: independent negative-frequency content");
  const auto psi = synthesize_psi(state, t);
  VectorXd out = VectorXd::Zero(static_cast<Eigen::Index>(state.grid().size()));
  for (const auto &[mode, arr] : psi)
    out += arr.real();
  return out;
}

double imaginary_fraction(const FieldSnapshot &snapshot) {
  double peak = 0.0, imag = 0.0;
  auto scan = [&](const VectorXcd &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      peak = std::max(peak, std::abs(v[i]));
      imag = std::max(imag, std::abs(v[i].imag()));
    }
  };
  for (int nu = 0; nu < 4; ++nu)
    scan(snapshot.A.col(nu));
  for (int d = 0; d < 3; ++d)
    scan(snapshot.E.col(d));
  for (int nu = 0; nu < 4; ++nu)
    scan(snapshot.pi.col(nu));
  scan(snapshot.psi);
  return peak == 0.0 ? 0.0 : imag / peak;
}

} // namespace mqm
