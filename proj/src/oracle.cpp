#include "mqm/oracle.hpp"

#include "mqm/polarization.hpp"

#include <chrono>
#include <cmath>

namespace mqm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

OracleResult oracle_inner_product(const PhotonState &s1, const PhotonState &s2) {
  if (!(s1.grid() == s2.grid()))
    throw std::invalid_argument("oracle_inner_product: grid mismatch");
  const auto t0 = Clock::now();
  const KGrid &grid = s1.grid();
  const double w = grid.dk() * grid.dk() * grid.dk() / std::pow(2.0 * M_PI, 3);

  OracleResult out;
  Complex total = 0.0;
  for (Mode mode : {Mode::scalar, Mode::longitudinal, Mode::plus, Mode::minus})
    for (FreqSign eps : {FreqSign::positive, FreqSign::negative}) {
      if (!s1.has(mode, eps) && !s2.has(mode, eps))
        continue;
      const VectorXcd &c1 = s1.coeff(mode, eps);
      const VectorXcd &c2 = s2.coeff(mode, eps);
      Complex sector = 0.0;
      for (Eigen::Index i = 0; i < c1.size(); ++i)
        sector += std::conj(c1[i]) * c2[i];
      total += zeta_of(mode) * w * sector;
      out.node_count += static_cast<std::size_t>(c1.size());
    }
  out.value = total;
  out.elapsed_seconds = seconds_since(t0);
  return out;
}

OracleResult oracle_field_component(const PhotonState &state, double t, const Vec3 &x, int mu) {
  const auto t0 = Clock::now();
  const KGrid &grid = state.grid();
  const double sigma = grid.constants().field_scale();
  const double w = grid.dk() * grid.dk() * grid.dk() / std::pow(2.0 * M_PI, 3);
  const Complex I(0, 1);

  OracleResult out;
  Complex total = 0.0;
  for (const auto &[key, c] : state.sectors()) {
    const int e = sign_of(key.second);
    for (Eigen::Index f = 0; f < c.size(); ++f) {
      if (c[f] == 0.0)
        continue;
      const Vec3 k = grid.node_k(static_cast<std::size_t>(f));
      const double omega = grid.constants().c * k.norm();
      CVec4 ev;
      if (key.first == Mode::scalar)
        ev = CVec4(1, 0, 0, 0);
      else if (key.first == Mode::longitudinal) {
        const Vec3 ek = k / k.norm();
        ev = CVec4(0, ek[0], ek[1], ek[2]);
      } else
        ev = transverse_unit(k, helicity_of(key.first), state.frame_index());
      total += I * sigma * (w / (2.0 * omega)) * c[f] * ev[mu] *
               std::exp(-I * (e * (omega * t - k.dot(x))));
      ++out.node_count;
    }
  }
  out.value = total;
  out.elapsed_seconds = seconds_since(t0);
  return out;
}

OracleResult oracle_psi(const PhotonState &state, double t, const Vec3 &x, Mode mode) {
  const auto t0 = Clock::now();
  const KGrid &grid = state.grid();
  const double w = grid.dk() * grid.dk() * grid.dk() / std::pow(2.0 * M_PI, 3);
  const Complex I(0, 1);

  OracleResult out;
  Complex total = 0.0;
  for (FreqSign eps : {FreqSign::positive, FreqSign::negative}) {
    if (!state.has(mode, eps))
      continue;
    const VectorXcd &c = state.coeff(mode, eps);
    const int e = sign_of(eps);
    for (Eigen::Index f = 0; f < c.size(); ++f) {
      if (c[f] == 0.0)
        continue;
      const Vec3 k = grid.node_k(static_cast<std::size_t>(f));
      const double omega = grid.constants().c * k.norm();
      total += w * c[f] * std::exp(-I * (e * (omega * t - k.dot(x))));
      ++out.node_count;
    }
  }
  out.value = total;
  out.elapsed_seconds = seconds_since(t0);
  return out;
}

OracleResult oracle_k_to_x(const KGrid &grid, const VectorXcd &coeff, MeasureKind measure,
                           FreqSign eps, double t, const Vec3 &x) {
  const auto t0 = Clock::now();
  const double w0 = grid.dk() * grid.dk() * grid.dk() / std::pow(2.0 * M_PI, 3);
  const Complex I(0, 1);
  const int e = sign_of(eps);

  OracleResult out;
  Complex total = 0.0;
  for (Eigen::Index f = 0; f < coeff.size(); ++f) {
    if (coeff[f] == 0.0)
      continue;
    const Vec3 k = grid.node_k(static_cast<std::size_t>(f));
    const double omega = grid.constants().c * k.norm();
    const double w = measure == MeasureKind::invariant ? w0 / (2.0 * omega) : w0;
    total += w * coeff[f] * std::exp(-I * (e * (omega * t - k.dot(x))));
    ++out.node_count;
  }
  out.value = total;
  out.elapsed_seconds = seconds_since(t0);
  return out;
}

} // namespace mqm
