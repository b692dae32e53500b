#include "mqm/grid.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mqm {

namespace {

//! Unnormalized 1-D DFT along each axis of a flat n^3 array, in place.
//! sign = -1 applies the kernel exp(-2 pi i i j / n), sign = +1 its inverse
//! kernel (no 1/n scaling either way).
void dft3(VectorXcd &a, int n, int sign) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  VectorXcd in(n), out(n);
  const std::size_t n2 = static_cast<std::size_t>(n) * n;

  // axis 3: contiguous runs
  for (std::size_t base = 0; base < n2 * n; base += n) {
    Eigen::Map<VectorXcd> seg(a.data() + base, n);
    in = seg;
    if (sign < 0)
      fft.fwd(out, in);
    else
      fft.inv(out, in);
    seg = out;
  }
  // axis 2: stride n
  for (std::size_t i1 = 0; i1 < static_cast<std::size_t>(n); ++i1)
    for (std::size_t i3 = 0; i3 < static_cast<std::size_t>(n); ++i3) {
      const std::size_t base = i1 * n2 + i3;
      for (int i2 = 0; i2 < n; ++i2)
        in[i2] = a[base + static_cast<std::size_t>(i2) * n];
      if (sign < 0)
        fft.fwd(out, in);
      else
        fft.inv(out, in);
      for (int i2 = 0; i2 < n; ++i2)
        a[base + static_cast<std::size_t>(i2) * n] = out[i2];
    }
  // axis 1: stride n^2
  for (std::size_t rest = 0; rest < n2; ++rest) {
    for (int i1 = 0; i1 < n; ++i1)
      in[i1] = a[static_cast<std::size_t>(i1) * n2 + rest];
    if (sign < 0)
      fft.fwd(out, in);
    else
      fft.inv(out, in);
    for (int i1 = 0; i1 < n; ++i1)
      a[static_cast<std::size_t>(i1) * n2 + rest] = out[i1];
  }
}

int snap_index(double value, double spacing, double first, int n, const char *what) {
  const double u = (value - first) / spacing;
  const int i = static_cast<int>(std::lround(u));
  if (i < 0 || i >= n || std::abs(u - i) > 1e-9) {
    std::ostringstream os;
    os << what << " component " << value << " is not on the lattice";
    throw std::invalid_argument(os.str());
  }
  return i;
}

} // namespace

KGrid::KGrid(int n, double dk, bool offset, PhysicalConstants pc)
    : n_(n), dk_(dk), offset_(offset), dx_(2.0 * M_PI / (n * dk)), pc_(pc) {
  omega_.resize(static_cast<Eigen::Index>(size()));
  min_omega_ = std::numeric_limits<double>::infinity();
  std::size_t f = 0;
  for (int i1 = 0; i1 < n_; ++i1)
    for (int i2 = 0; i2 < n_; ++i2)
      for (int i3 = 0; i3 < n_; ++i3, ++f) {
        const Vec3 k{axis_k(i1), axis_k(i2), axis_k(i3)};
        omega_[static_cast<Eigen::Index>(f)] = pc_.c * k.norm();
        min_omega_ = std::min(min_omega_, omega_[static_cast<Eigen::Index>(f)]);
      }
}

std::shared_ptr<const KGrid> KGrid::make(int n, double k_max, bool offset, PhysicalConstants pc) {
  pc.validate();
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("KGrid: n must be even and >= 4");
  if (!(k_max > 0.0))
    throw std::invalid_argument("KGrid: k_max must be positive");
  const double dk = 2.0 * k_max / n;
  return std::shared_ptr<const KGrid>(new KGrid(n, dk, offset, pc));
}

std::size_t KGrid::index_of_k(const Vec3 &k) const {
  const double first = axis_k(0);
  const int i1 = snap_index(k[0], dk_, first, n_, "wavevector");
  const int i2 = snap_index(k[1], dk_, first, n_, "wavevector");
  const int i3 = snap_index(k[2], dk_, first, n_, "wavevector");
  return flat(i1, i2, i3);
}

std::size_t KGrid::index_of_x(const Vec3 &x) const {
  const double first = axis_x(0);
  const int j1 = snap_index(x[0], dx_, first, n_, "position");
  const int j2 = snap_index(x[1], dx_, first, n_, "position");
  const int j3 = snap_index(x[2], dx_, first, n_, "position");
  return flat(j1, j2, j3);
}

double omega_at(const KGrid &grid, const Vec3 &k) {
  const std::size_t f = grid.index_of_k(k);
  return grid.omega()[static_cast<Eigen::Index>(f)];
}

VectorXcd k_to_x(const KGrid &grid, const VectorXcd &coeff, MeasureKind measure, FreqSign eps,
                 double t) {
  if (coeff.size() != static_cast<Eigen::Index>(grid.size()))
    throw std::invalid_argument("k_to_x: coefficient array does not match the grid");
  if (measure == MeasureKind::invariant && grid.min_omega() == 0.0)
    throw std::domain_error(
        "k_to_x: invariant measure is singular on a grid with an omega = 0 node; "
        "use an offset (half-cell shifted) grid");

  const int n = grid.n();
  const int e = sign_of(eps);
  const Complex I(0.0, 1.0);

  // nodewise weight, time phase, and the (-1)^(i1+i2+i3) DFT centering
  VectorXcd work(coeff.size());
  std::size_t f = 0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3, ++f) {
        const Eigen::Index fi = static_cast<Eigen::Index>(f);
        Complex v = coeff[fi];
        if (v != 0.0) {
          const double w =
              (measure == MeasureKind::invariant) ? 1.0 / (2.0 * grid.omega()[fi]) : 1.0;
          v *= w * std::exp(-I * (e * grid.omega()[fi] * t));
        }
        if ((i1 + i2 + i3) % 2 != 0)
          v = -v;
        work[fi] = v;
      }

  dft3(work, n, e);

  // post phases: (-1)^(3h), (-1)^(j1+j2+j3), and the half-cell chirp
  const int h = n / 2;
  const double base = (h % 2 == 0) ? 1.0 : -1.0; // (-1)^h per axis, cubed = (-1)^(3h) = (-1)^h
  const double chirp = grid.offset() ? e * M_PI / n : 0.0;
  f = 0;
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3, ++f) {
        const Eigen::Index fi = static_cast<Eigen::Index>(f);
        Complex v = work[fi] * (grid.k_weight() * base);
        if ((j1 + j2 + j3) % 2 != 0)
          v = -v;
        if (chirp != 0.0)
          v *= std::exp(I * (chirp * ((j1 - h) + (j2 - h) + (j3 - h))));
        work[fi] = v;
      }
  return work;
}

VectorXcd x_to_k(const KGrid &grid, const VectorXcd &field) {
  if (field.size() != static_cast<Eigen::Index>(grid.size()))
    throw std::invalid_argument("x_to_k: field array does not match the dual lattice");

  const int n = grid.n();
  const int h = n / 2;
  const Complex I(0.0, 1.0);
  const double chirp = grid.offset() ? M_PI / n : 0.0;

  VectorXcd work(field.size());
  std::size_t f = 0;
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3, ++f) {
        const Eigen::Index fi = static_cast<Eigen::Index>(f);
        Complex v = field[fi];
        if ((j1 + j2 + j3) % 2 != 0)
          v = -v;
        if (chirp != 0.0)
          v *= std::exp(-I * (chirp * ((j1 - h) + (j2 - h) + (j3 - h))));
        work[fi] = v;
      }

  dft3(work, n, -1);

  const double base = (h % 2 == 0) ? 1.0 : -1.0;
  f = 0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3, ++f) {
        const Eigen::Index fi = static_cast<Eigen::Index>(f);
        Complex v = work[fi] * (grid.x_weight() * base);
        if ((i1 + i2 + i3) % 2 != 0)
          v = -v;
        work[fi] = v;
      }
  return work;
}

} // namespace mqm
