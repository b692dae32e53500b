#include "mqm/state.hpp"

#include "mqm/numerics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace mqm {

namespace {

const VectorXcd &zero_array(const KGrid &grid) {
  static std::map<std::size_t, VectorXcd> cache;
  auto it = cache.find(grid.size());
  if (it == cache.end())
    it = cache.emplace(grid.size(), VectorXcd::Zero(static_cast<Eigen::Index>(grid.size()))).first;
  return it->second;
}

//! Largest |c| over nodes whose index lies within `shells` of any axis edge.
double boundary_peak(const KGrid &grid, const VectorXcd &c, int shells) {
  const int n = grid.n();
  double peak = 0.0;
  std::size_t f = 0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3, ++f) {
        const bool edge = i1 < shells || i1 >= n - shells || i2 < shells || i2 >= n - shells ||
                          i3 < shells || i3 >= n - shells;
        if (edge)
          peak = std::max(peak, std::abs(c[static_cast<Eigen::Index>(f)]));
      }
  return peak;
}

} // namespace

PhotonState::PhotonState(GridPtr grid, double alpha, int m)
    : grid_(std::move(grid)), alpha_(alpha), m_(m) {
  if (!grid_)
    throw std::invalid_argument("PhotonState: null grid");
  if (alpha_ != 0.0 && alpha_ != 0.5)
    throw std::invalid_argument("PhotonState: alpha must be 0 or 1/2");
}

const VectorXcd &PhotonState::coeff(Mode mode, FreqSign eps) const {
  const auto it = coeffs_.find({mode, eps});
  if (it == coeffs_.end())
    return zero_array(*grid_);
  return it->second;
}

void PhotonState::set_coeff(Mode mode, FreqSign eps, VectorXcd c) {
  if (c.size() != static_cast<Eigen::Index>(grid_->size()))
    throw std::invalid_argument("PhotonState::set_coeff: array does not match the grid");
  coeffs_[{mode, eps}] = std::move(c);
}

void PhotonState::scale(Complex factor) {
  for (auto &[key, c] : coeffs_)
    c *= factor;
}

bool PhotonState::zero() const {
  for (const auto &[key, c] : coeffs_)
    if (c.cwiseAbs().maxCoeff() != 0.0)
      return false;
  return true;
}

double invariant_norm_squared(const PhotonState &state) {
  const double w = state.grid().k_weight();
  std::vector<double> terms;
  // fixed sector order: scalar, longitudinal first so Lorenz pairs cancel
  // exactly, then the transverse sectors
  const Mode order[4] = {Mode::scalar, Mode::longitudinal, Mode::plus, Mode::minus};
  double total = 0.0;
  for (Mode mode : order)
    for (FreqSign eps : {FreqSign::positive, FreqSign::negative}) {
      if (!state.has(mode, eps))
        continue;
      const VectorXcd &c = state.coeff(mode, eps);
      terms.assign(static_cast<std::size_t>(c.size()), 0.0);
      for (Eigen::Index i = 0; i < c.size(); ++i)
        terms[static_cast<std::size_t>(i)] = std::norm(c[i]);
      total += zeta_of(mode) * w * pairwise_sum(std::span<const double>(terms));
    }
  return total;
}

PhotonState plane_wave(const GridPtr &grid, const Vec3 &q, Mode mode, FreqSign eps, Complex amp) {
  PhotonState s(grid);
  s.tag_kind(PhotonState::Kind::plane_wave);
  const std::size_t node = grid->index_of_k(q);
  VectorXcd c = VectorXcd::Zero(static_cast<Eigen::Index>(grid->size()));
  const double omega_q = grid->omega()[static_cast<Eigen::Index>(node)];
  const double dk3 = std::pow(grid->dk(), 3);
  c[static_cast<Eigen::Index>(node)] =
      amp * std::pow(2.0 * M_PI, 3) * 2.0 * omega_q / dk3;
  s.set_coeff(mode, eps, std::move(c));
  return s;
}

PhotonState gaussian_packet(const GridPtr &grid, const Vec3 &k0, double s, Mode mode, FreqSign eps,
                            int m) {
  if (!(s > 0.0))
    throw std::invalid_argument("gaussian_packet: width s must be positive");
  PhotonState state(grid, 0.0, m);
  VectorXcd c(static_cast<Eigen::Index>(grid->size()));
  for (std::size_t f = 0; f < grid->size(); ++f)
    c[static_cast<Eigen::Index>(f)] = std::exp(-0.5 * (grid->node_k(f) - k0).squaredNorm() * s * s);
  if (boundary_peak(*grid, c, 1) >= 1e-8)
    throw std::domain_error("gaussian_packet: envelope exceeds 1e-8 of peak at the grid "
                            "boundary; enlarge k_max or shrink s");
  state.set_coeff(mode, eps, std::move(c));
  state.scale(1.0 / std::sqrt(invariant_norm_squared(state)));
  return state;
}

PhotonState localized_state(const GridPtr &grid, const Vec3 &y, Mode mode, FreqSign eps,
                            double alpha, int m) {
  (void)grid->index_of_x(y); // rejects off-lattice y
  PhotonState state(grid, alpha, m);
  state.tag_kind(PhotonState::Kind::localized);
  const Complex I(0, 1);
  const int e = sign_of(eps);
  VectorXcd c(static_cast<Eigen::Index>(grid->size()));
  for (std::size_t f = 0; f < grid->size(); ++f) {
    const Vec3 k = grid->node_k(f);
    const double w = grid->omega()[static_cast<Eigen::Index>(f)];
    c[static_cast<Eigen::Index>(f)] = std::pow(w, alpha) * std::exp(-I * (e * k.dot(y)));
  }
  state.set_coeff(mode, eps, std::move(c));
  return state;
}

PhotonState circular_state(const GridPtr &grid, const VectorXd &profile, int lambda0, int m) {
  if (lambda0 != 1 && lambda0 != -1)
    throw std::invalid_argument("circular_state: lambda0 must be +1 or -1");
  if (profile.size() != static_cast<Eigen::Index>(grid->size()))
    throw std::invalid_argument("circular_state: profile does not match the grid");
  PhotonState state(grid, 0.0, m);
  state.set_coeff(lambda0 > 0 ? Mode::plus : Mode::minus, FreqSign::positive,
                  profile.cast<Complex>());
  state.tag_real_field();
  return state;
}

PhotonState linear_state(const GridPtr &grid, const VectorXd &profile, LinearAxis axis, int m) {
  if (profile.size() != static_cast<Eigen::Index>(grid->size()))
    throw std::invalid_argument("linear_state: profile does not match the grid");
  PhotonState state(grid, 0.0, m);
  const VectorXcd p = profile.cast<Complex>();
  const Complex I(0, 1);
  const double r2 = std::sqrt(2.0);
  if (axis == LinearAxis::theta) {
    state.set_coeff(Mode::plus, FreqSign::positive, p / r2);
    state.set_coeff(Mode::minus, FreqSign::positive, p / r2);
  } else {
    state.set_coeff(Mode::plus, FreqSign::positive, (-I / r2) * p);
    state.set_coeff(Mode::minus, FreqSign::positive, (I / r2) * p);
  }
  state.tag_real_field();
  return state;
}

PhotonState enforce_lorenz(const PhotonState &state) {
  PhotonState out = state;
  for (FreqSign eps : {FreqSign::positive, FreqSign::negative}) {
    if (state.has(Mode::longitudinal, eps))
      out.set_coeff(Mode::scalar, eps, state.coeff(Mode::longitudinal, eps));
    else if (state.has(Mode::scalar, eps))
      out.set_coeff(Mode::scalar, eps,
                    VectorXcd::Zero(static_cast<Eigen::Index>(state.grid().size())));
  }
  out.tag_lorenz();
  return out;
}

PhotonState from_boundary(const GridPtr &grid, const BoundaryData &data, int m) {
  const Eigen::Index size = static_cast<Eigen::Index>(grid->size());
  if (data.A0.rows() != size || data.E0.rows() != size)
    throw std::invalid_argument("from_boundary: data does not match the dual lattice");

  // spectra of the real data under the trivial bridge
  std::array<VectorXcd, 3> Ak, Ek;
  for (int d = 0; d < 3; ++d) {
    Ak[d] = x_to_k(*grid, data.A0.col(d).cast<Complex>());
    Ek[d] = x_to_k(*grid, data.E0.col(d).cast<Complex>());
  }

  const PolarizationFrame frame = PolarizationFrame::build(grid, m);
  const double sigma = grid->constants().field_scale();
  const Complex I(0, 1);

  // Matching Re A+ and Re E+ = -Re dt A+ against the data spectra gives
  // u(k) = sum_l c_l e_l = -(2/sigma) [E0(k) + i omega A0(k)].
  VectorXcd cplus(size), cminus(size);
  double longitudinal2 = 0.0, total2 = 0.0;
  for (Eigen::Index f = 0; f < size; ++f) {
    const double omega = grid->omega()[f];
    CVec3 u;
    for (int d = 0; d < 3; ++d)
      u[d] = -(2.0 / sigma) * (Ek[d][f] + I * (omega * Ak[d][f]));
    cplus[f] = frame.spatial(Mode::plus, static_cast<std::size_t>(f)).dot(u);
    cminus[f] = frame.spatial(Mode::minus, static_cast<std::size_t>(f)).dot(u);
    longitudinal2 += std::norm(frame.spatial(Mode::longitudinal, static_cast<std::size_t>(f)).dot(u));
    total2 += u.squaredNorm();
  }
  if (total2 > 0.0 && std::sqrt(longitudinal2 / total2) > 1e-10)
    throw std::invalid_argument("from_boundary: data has longitudinal content above 1e-10 "
                                "of its norm");

  PhotonState state(grid, 0.0, m);
  state.set_coeff(Mode::plus, FreqSign::positive, std::move(cplus));
  state.set_coeff(Mode::minus, FreqSign::positive, std::move(cminus));
  state.tag_real_field();
  return state;
}

} // namespace mqm
