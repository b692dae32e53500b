#include "mqm/covariance.hpp"

#include "mqm/numerics.hpp"
#include "mqm/polarization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mqm {

namespace {

constexpr Mode kSectorOrder[4] = {Mode::scalar, Mode::longitudinal, Mode::plus, Mode::minus};
constexpr FreqSign kFreqOrder[2] = {FreqSign::positive, FreqSign::negative};

//! Per-node mode data for the covariant product: four-vector amplitudes
//! with the square-root invariant weight, per frequency sign.
struct PlaneModes {
  // v[eps][node][nu], already multiplied by i sigma and any eps factor
  std::array<std::vector<CVec4>, 2> v;
  std::array<bool, 2> present{false, false};
};

std::size_t eps_slot(FreqSign eps) { return eps == FreqSign::positive ? 0 : 1; }

PlaneModes plane_modes(const PhotonState &state, const PolarizationFrame &frame,
                       bool conjugate_field_factor) {
  const KGrid &grid = state.grid();
  const std::size_t size = grid.size();
  const double sigma = grid.constants().field_scale();
  const Complex I(0, 1);
  PlaneModes out;
  for (FreqSign eps : kFreqOrder) {
    bool any = false;
    for (Mode mode : kSectorOrder)
      any = any || state.has(mode, eps);
    if (!any)
      continue;
    out.present[eps_slot(eps)] = true;
    auto &tab = out.v[eps_slot(eps)];
    tab.assign(size, CVec4::Zero());
    const double efac = conjugate_field_factor ? sign_of(eps) : 1.0;
    for (Mode mode : kSectorOrder) {
      if (!state.has(mode, eps))
        continue;
      const VectorXcd &c = state.coeff(mode, eps);
      for (std::size_t f = 0; f < size; ++f) {
        const Complex cf = c[static_cast<Eigen::Index>(f)];
        if (cf == 0.0)
          continue;
        const double w =
            grid.k_weight() / std::sqrt(2.0 * grid.omega()[static_cast<Eigen::Index>(f)]);
        const Complex amp = I * sigma * efac * w * cf;
        const CVec4 &e = frame.unit(mode, f);
        for (int nu = 0; nu < 4; ++nu)
          tab[f][nu] += amp * e[nu];
      }
    }
  }
  return out;
}

//! Oscillation-adapted composite quadrature of k -> k sin(kr) e^{-i k c t}
//! over [0, K].
Complex radial_kernel_integral(double r, double ct, double K) {
  const int panels = std::max(24, static_cast<int>(std::ceil(K * (r + std::abs(ct)) / M_PI)));
  return gauss_legendre(
      [&](double k) {
        return k * std::sin(k * r) * std::exp(Complex(0, -k * ct));
      },
      0.0, K, panels);
}

//! Same kernel with a Gaussian band profile e^{-k^2 s^2 / 2}, cut at 10/s.
Complex gaussian_kernel_integral(double r, double ct, double s) {
  const double K = 10.0 / s;
  const int panels = std::max(24, static_cast<int>(std::ceil(K * (r + std::abs(ct)) / M_PI)));
  return gauss_legendre(
      [&](double k) {
        return k * std::sin(k * r) * std::exp(-0.5 * k * k * s * s) *
               std::exp(Complex(0, -k * ct));
      },
      0.0, K, panels);
}

} // namespace

void Hyperplane::validate() const {
  const double nn = minkowski_dot(normal, normal);
  if (std::abs(nn - 1.0) > 1e-12)
    throw std::invalid_argument("Hyperplane: normal must be unit timelike (n.n = 1)");
  if (!(normal[0] > 0.0))
    throw std::invalid_argument("Hyperplane: normal must be future-pointing");
  if (!(extent > 0.0) || resolution < 2)
    throw std::invalid_argument("Hyperplane: bad extent or resolution");
}

Hyperplane boosted_plane(double rapidity, const Vec4 &origin, double extent, int resolution) {
  Hyperplane p;
  p.normal = Vec4{std::cosh(rapidity), 0.0, 0.0, std::sinh(rapidity)};
  p.origin = origin;
  p.extent = extent;
  p.resolution = resolution;
  return p;
}

EventFields evaluate_at_event(const PhotonState &state, double t, const Vec3 &x) {
  const KGrid &grid = state.grid();
  const std::size_t size = grid.size();
  const PolarizationFrame frame = PolarizationFrame::build(state.grid_ptr(), state.frame_index());
  const double sigma = grid.constants().field_scale();
  const Complex I(0, 1);

  EventFields out;
  for (Mode mode : kSectorOrder)
    for (FreqSign eps : kFreqOrder) {
      if (!state.has(mode, eps))
        continue;
      const VectorXcd &c = state.coeff(mode, eps);
      const int e = sign_of(eps);
      CVec4 acc_a = CVec4::Zero();
      Complex acc_psi = 0.0;
      for (std::size_t f = 0; f < size; ++f) {
        const Complex cf = c[static_cast<Eigen::Index>(f)];
        if (cf == 0.0)
          continue;
        const Vec3 k = grid.node_k(f);
        const double omega = grid.omega()[static_cast<Eigen::Index>(f)];
        const Complex phase = std::exp(-I * (e * (omega * t - k.dot(x))));
        acc_psi += grid.k_weight() * cf * phase;
        const Complex amp = I * sigma * grid.k_weight() / (2.0 * omega) * cf * phase;
        const CVec4 &ev = frame.unit(mode, f);
        for (int nu = 0; nu < 4; ++nu)
          acc_a[nu] += amp * ev[nu];
      }
      out.A += acc_a;
      out.psi[mode] += acc_psi;
    }
  return out;
}

Complex hyperplane_inner_product(const PhotonState &s1, const PhotonState &s2,
                                 const Hyperplane &plane) {
  plane.validate();
  if (!(s1.grid() == s2.grid()))
    throw std::invalid_argument("hyperplane_inner_product: grid mismatch");
  if (!s1.normalizable() || !s2.normalizable())
    throw non_normalizable_error("hyperplane_inner_product: packet states required");

  const KGrid &grid = s1.grid();
  const std::size_t size = grid.size();
  const double c_light = grid.constants().c;
  const double g = grid.constants().current_scale();

  // Minkowski-orthonormal tangent triad spanning the plane
  std::array<Vec4, 3> tangent;
  {
    int have = 0;
    for (int d = 0; d < 3 && have < 3; ++d) {
      Vec4 v = Vec4::Zero();
      v[d + 1] = 1.0;
      v -= minkowski_dot(plane.normal, v) * plane.normal; // project out n
      for (int j = 0; j < have; ++j)
        v -= (minkowski_dot(tangent[static_cast<std::size_t>(j)], v) /
              minkowski_dot(tangent[static_cast<std::size_t>(j)],
                            tangent[static_cast<std::size_t>(j)])) *
             tangent[static_cast<std::size_t>(j)];
      const double vv = -minkowski_dot(v, v);
      if (vv > 1e-12)
        tangent[static_cast<std::size_t>(have++)] = v / std::sqrt(vv);
    }
    if (have != 3)
      throw std::invalid_argument("hyperplane_inner_product: degenerate tangent frame");
  }

  const PolarizationFrame frame = PolarizationFrame::build(s1.grid_ptr(), s1.frame_index());
  const PolarizationFrame frame2 = PolarizationFrame::build(s2.grid_ptr(), s2.frame_index());
  const PlaneModes m1 = plane_modes(s1, frame, false);
  const PlaneModes m2 = plane_modes(s2, frame2, true);

  // per-node kinematics
  std::vector<Vec4> K(size);
  std::vector<double> nK(size);
  for (std::size_t f = 0; f < size; ++f) {
    const Vec3 k = grid.node_k(f);
    K[f] = Vec4{grid.omega()[static_cast<Eigen::Index>(f)] / c_light, k[0], k[1], k[2]};
    nK[f] = minkowski_dot(plane.normal, K[f]);
  }

  const int R = plane.resolution;
  const double du = 2.0 * plane.extent / R;
  const std::size_t npoints = static_cast<std::size_t>(R) * R * R;

  std::vector<Complex> point_integrand(npoints);
  std::vector<double> mag1(npoints), mag2(npoints);

  parallel_chunks(npoints, [&](std::size_t begin, std::size_t end) {
    const Complex I(0, 1);
    for (std::size_t p = begin; p < end; ++p) {
      const int m3 = static_cast<int>(p % R);
      const int mm2 = static_cast<int>((p / R) % R);
      const int mm1 = static_cast<int>(p / (static_cast<std::size_t>(R) * R));
      const double u1 = (mm1 + 0.5) * du - plane.extent;
      const double u2 = (mm2 + 0.5) * du - plane.extent;
      const double u3 = (m3 + 0.5) * du - plane.extent;
      Vec4 X = plane.origin;
      X += u1 * tangent[0] + u2 * tangent[1] + u3 * tangent[2];

      CVec4 phi1 = CVec4::Zero(), g1 = CVec4::Zero();
      CVec4 phi2 = CVec4::Zero(), g2 = CVec4::Zero();
      for (std::size_t f = 0; f < size; ++f) {
        const double arg = minkowski_dot(K[f], X); // K.X = omega t - k.x
        const double ca = std::cos(arg), sa = std::sin(arg);
        const Complex phase_p(ca, -sa); // e^{-i K.X}
        const Complex phase_m(ca, sa);
        for (int slot = 0; slot < 2; ++slot) {
          const Complex phase = slot == 0 ? phase_p : phase_m;
          const Complex dfac = (slot == 0 ? -I : I) * nK[f]; // -i eps (n.K)
          if (m1.present[static_cast<std::size_t>(slot)]) {
            const CVec4 &v = m1.v[static_cast<std::size_t>(slot)][f];
            for (int nu = 0; nu < 4; ++nu) {
              const Complex t = v[nu] * phase;
              phi1[nu] += t;
              g1[nu] += dfac * t;
            }
          }
          if (m2.present[static_cast<std::size_t>(slot)]) {
            const CVec4 &v = m2.v[static_cast<std::size_t>(slot)][f];
            for (int nu = 0; nu < 4; ++nu) {
              const Complex t = v[nu] * phase;
              phi2[nu] += t;
              g2[nu] += dfac * t;
            }
          }
        }
      }
      point_integrand[p] = minkowski_dot(phi1.conjugate(), g2) -
                           minkowski_dot(g1.conjugate(), phi2);
      mag1[p] = phi1.norm();
      mag2[p] = phi2.norm();
    }
  });

  // window tail check: boundary-layer peak against the global peak
  auto tail_ratio = [&](const std::vector<double> &mag) {
    double peak = 0.0, edge = 0.0;
    for (std::size_t p = 0; p < npoints; ++p) {
      const int m3 = static_cast<int>(p % R);
      const int mm2 = static_cast<int>((p / R) % R);
      const int mm1 = static_cast<int>(p / (static_cast<std::size_t>(R) * R));
      peak = std::max(peak, mag[p]);
      if (m3 == 0 || m3 == R - 1 || mm2 == 0 || mm2 == R - 1 || mm1 == 0 || mm1 == R - 1)
        edge = std::max(edge, mag[p]);
    }
    return peak > 0.0 ? edge / peak : 0.0;
  };
  const double tail1 = tail_ratio(mag1), tail2 = tail_ratio(mag2);
  if (tail1 > 1e-6 || tail2 > 1e-6) {
    std::ostringstream os;
    os << "hyperplane_inner_product: window too small; boundary tail levels " << tail1 << " and "
       << tail2 << " exceed 1e-6 of peak";
    throw std::domain_error(os.str());
  }

  const Complex I(0, 1);
  const Complex sum = pairwise_sum(std::span<const Complex>(point_integrand));
  return -I * g * sum * (du * du * du);
}

HegerfeldtProfiles hegerfeldt_correlator(const PhysicalConstants &pc, double t,
                                         const std::vector<double> &radii, double band_limit) {
  if (!(band_limit > 0.0))
    throw std::invalid_argument("hegerfeldt_correlator: band limit must be positive");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && radii[i] <= radii[i - 1]))
      throw std::invalid_argument("hegerfeldt_correlator: radii must be positive and increasing");
  }
  const double ct = pc.c * t;
  HegerfeldtProfiles out;
  out.positive_frequency.radii = radii;
  out.positive_frequency.t = t;
  out.positive_frequency.cutoff = band_limit;
  out.real_total = out.positive_frequency;
  out.positive_frequency.values.resize(radii.size());
  out.real_total.values.resize(radii.size());
  const double norm = 1.0 / (4.0 * M_PI * M_PI);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const Complex ip = norm / r * radial_kernel_integral(r, ct, band_limit);
    out.positive_frequency.values[i] = ip;
    out.real_total.values[i] = ip + std::conj(ip);
  }
  return out;
}

LocalizedPropagation localized_propagation(const PhysicalConstants &pc, const Vec3 &y, double s,
                                           double t) {
  (void)y; // profiles are radial about y
  if (!(s > 0.0))
    throw std::invalid_argument("localized_propagation: smoothing s must be positive");
  const double ct = pc.c * std::abs(t);
  if (ct / s > 2e4)
    throw std::invalid_argument("localized_propagation: smoothing under-resolved for this "
                                "propagation time");
  const double signed_ct = pc.c * t;
  const double r_max = ct + 40.0 * s;
  const double dr = s / 6.0;
  const std::size_t count = static_cast<std::size_t>(std::ceil(r_max / dr));

  LocalizedPropagation out;
  out.smoothing = s;
  out.psi_real.t = t;
  out.psi_real.cutoff = 10.0 / s;
  out.psi_positive = out.psi_real;
  out.psi_real.radii.resize(count);
  out.psi_real.values.resize(count);
  out.psi_positive.radii.resize(count);
  out.psi_positive.values.resize(count);

  const double norm = 1.0 / (2.0 * M_PI * M_PI);
  std::vector<double> mass_real(count), mass_pos(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = dr * (static_cast<double>(i) + 1.0);
    const Complex pos = norm / r * gaussian_kernel_integral(r, signed_ct, s);
    out.psi_real.radii[i] = r;
    out.psi_positive.radii[i] = r;
    out.psi_positive.values[i] = pos;
    out.psi_real.values[i] = Complex(pos.real(), 0.0);
    mass_real[i] = pos.real() * pos.real() * r * r * dr;
    mass_pos[i] = std::norm(pos) * r * r * dr;
  }

  double total_real = 0.0, in_real = 0.0, out_real = 0.0, out_pos = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = out.psi_real.radii[i];
    const bool in_shell = std::abs(r - ct) < 5.0 * s;
    total_real += mass_real[i];
    if (in_shell)
      in_real += mass_real[i];
    else {
      out_real += mass_real[i];
      out_pos += mass_pos[i];
    }
  }
  out.shell_fraction = total_real > 0.0 ? in_real / total_real : 0.0;
  out.out_mass_real = out_real;
  out.out_mass_positive = out_pos;
  return out;
}

} // namespace mqm
