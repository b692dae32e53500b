#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqm/oracle.hpp"
#include "mqm/products.hpp"
#include "mqm/state.hpp"

#include <random>

using namespace mqm;

namespace {

PhotonState random_state(const GridPtr &grid, Mode mode, FreqSign eps, unsigned seed,
                         double alpha = 0.0) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  PhotonState s(grid, alpha, 1);
  VectorXcd c(static_cast<Eigen::Index>(grid->size()));
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c[i] = Complex(dist(gen), dist(gen));
  s.set_coeff(mode, eps, std::move(c));
  return s;
}

PhotonState packet(const GridPtr &grid, const Vec3 &k0, double s, Mode mode, FreqSign eps) {
  return gaussian_packet(grid, k0, s, mode, eps, 1);
}

} // namespace

TEST_CASE("inner product: sector structure") {
  const auto grid = KGrid::make(12, 6.0, true);

  SUBCASE("frequency-sign orthogonality") {
    const PhotonState a = random_state(grid, Mode::plus, FreqSign::positive, 1);
    const PhotonState b = random_state(grid, Mode::plus, FreqSign::negative, 2);
    CHECK(std::abs(inner_product(a, b).value) == 0.0);
  }

  SUBCASE("Lorenz-flagged scalar+longitudinal state has vanishing norm") {
    PhotonState s(grid);
    std::mt19937 gen(5);
    std::normal_distribution<double> dist;
    VectorXcd f(static_cast<Eigen::Index>(grid->size()));
    for (Eigen::Index i = 0; i < f.size(); ++i)
      f[i] = Complex(dist(gen), dist(gen));
    s.set_coeff(Mode::longitudinal, FreqSign::positive, f);
    const PhotonState lz = enforce_lorenz(s);
    const InnerProductValue ip = inner_product(lz, lz);
    const double sector =
        std::abs(ip.sector_breakdown.at({Mode::longitudinal, FreqSign::positive}));
    CHECK(std::abs(ip.value) < 1e-12 * sector);
    // the value equals the (empty) transverse partial sum exactly
    CHECK(ip.value == Complex(0, 0));
  }

  SUBCASE("normalized transverse packet has unit norm") {
    const PhotonState s = packet(grid, Vec3{0, 0, 0.8}, 1.8, Mode::plus, FreqSign::positive);
    CHECK(std::abs(inner_product(s, s).value - 1.0) < 1e-10);
  }

  SUBCASE("scalar sector alone is negative") {
    const PhotonState s = random_state(grid, Mode::scalar, FreqSign::positive, 9);
    CHECK(inner_product(s, s).value.real() < 0.0);
  }

  SUBCASE("conjugate symmetry and sesquilinearity") {
    const PhotonState a = random_state(grid, Mode::plus, FreqSign::positive, 11);
    const PhotonState b = random_state(grid, Mode::plus, FreqSign::positive, 12);
    const Complex ab = inner_product(a, b).value;
    const Complex ba = inner_product(b, a).value;
    CHECK(std::abs(ab - std::conj(ba)) < 1e-12 * std::abs(ab));

    PhotonState scaled = b;
    const Complex z(0.7, -1.1);
    scaled.scale(z);
    CHECK(std::abs(inner_product(a, scaled).value - z * ab) < 1e-12 * std::abs(z * ab));
    PhotonState scaled1 = a;
    scaled1.scale(z);
    CHECK(std::abs(inner_product(scaled1, b).value - std::conj(z) * ab) <
          1e-12 * std::abs(z * ab));
  }

  SUBCASE("grid and convention mismatches are rejected") {
    const auto other = KGrid::make(8, 6.0, true);
    const PhotonState a = random_state(grid, Mode::plus, FreqSign::positive, 1);
    const PhotonState b = random_state(other, Mode::plus, FreqSign::positive, 1);
    CHECK_THROWS_AS((void)inner_product(a, b), std::invalid_argument);
    const PhotonState h = random_state(grid, Mode::plus, FreqSign::positive, 1, 0.5);
    CHECK_THROWS_AS((void)inner_product(a, h), std::invalid_argument);
    CHECK_THROWS_AS((void)inner_product_nw(a, a), std::invalid_argument);
  }
}

TEST_CASE("positivity of both frequency sectors") {
  const auto grid = KGrid::make(12, 6.0, true);
  std::mt19937 gen(77);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int trial = 0; trial < 10; ++trial)
    for (FreqSign eps : {FreqSign::positive, FreqSign::negative}) {
      const Mode mode = trial % 2 == 0 ? Mode::plus : Mode::minus;
      const PhotonState s = packet(grid, Vec3{u(gen), u(gen), u(gen)}, 1.9, mode, eps);
      CHECK(inner_product(s, s).value.real() > 0.0);
    }
}

TEST_CASE("Newton-Wigner product relations") {
  const auto grid = KGrid::make(10, 5.0, true);
  const PhotonState a0 = random_state(grid, Mode::plus, FreqSign::positive, 21);
  const PhotonState b0 = random_state(grid, Mode::plus, FreqSign::positive, 22);

  // NW product of alpha=1/2 states equals the invariant product of the same
  // coefficients divided nodewise by 2 omega
  PhotonState ah = a0, bh = b0;
  ah.set_alpha(0.5);
  bh.set_alpha(0.5);
  const Complex nw = inner_product_nw(ah, bh).value;

  PhotonState b_scaled(grid);
  VectorXcd c = b0.coeff(Mode::plus, FreqSign::positive);
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c[i] /= 2.0 * grid->omega()[i];
  b_scaled.set_coeff(Mode::plus, FreqSign::positive, std::move(c));
  const Complex ref = inner_product(a0, b_scaled).value;
  CHECK(std::abs(nw - ref) < 1e-12 * std::abs(ref));

  // NW-normalized packet: alpha=1/2 packet built by hand
  PhotonState pk(grid, 0.5, 1);
  VectorXcd g(static_cast<Eigen::Index>(grid->size()));
  for (std::size_t f = 0; f < grid->size(); ++f)
    g[static_cast<Eigen::Index>(f)] =
        std::exp(-0.5 * grid->node_k(f).squaredNorm() * 1.8 * 1.8);
  pk.set_coeff(Mode::plus, FreqSign::positive, std::move(g));
  const double n2 = inner_product_nw(pk, pk).value.real();
  pk.scale(1.0 / std::sqrt(n2));
  CHECK(std::abs(inner_product_nw(pk, pk).value - 1.0) < 1e-10);
}

TEST_CASE("four current: positivity, two paths, norm integral") {
  const auto grid = KGrid::make(12, 6.0, true);

  for (FreqSign eps : {FreqSign::positive, FreqSign::negative}) {
    const PhotonState s = packet(grid, Vec3{0, 0, 1.5}, 2.2, Mode::plus, eps);
    const CurrentField cf = current_field(s, 0.3);
    const double peak = cf.j0.cwiseAbs().maxCoeff();

    // narrowband packet: density nonnegative everywhere sampled
    CHECK(cf.j0.minCoeff() > -1e-12 * peak);

    // the antisymmetric-derivative and D^(1/2) routes agree pointwise
    CHECK((cf.j0 - cf.j0_dhalf).cwiseAbs().maxCoeff() < 1e-10 * peak);

    // the lattice integral reproduces the invariant norm
    const double total = cf.j0.sum() * grid->x_weight();
    const double knorm = inner_product(s, s).value.real();
    CHECK(std::abs(total - knorm) < 1e-10 * knorm);
  }

  SUBCASE("single-event sample matches the field") {
    const PhotonState s = packet(grid, Vec3{0, 0, 1.5}, 2.2, Mode::plus, FreqSign::positive);
    const CurrentField cf = current_field(s, 0.0);
    const Vec3 x = grid->node_x(grid->flat(6, 6, 6));
    const CurrentSample sample = four_current(s, 0.0, x);
    CHECK(sample.j0 ==
          cf.j0[static_cast<Eigen::Index>(grid->index_of_x(x))]);
  }
}

TEST_CASE("continuity residual") {
  const auto grid = KGrid::make(10, 5.0, true);

  SUBCASE("stationary single-node mix is time independent") {
    // a plane-wave-like single-node generic state: J0 static
    PhotonState s(grid);
    VectorXcd c = VectorXcd::Zero(static_cast<Eigen::Index>(grid->size()));
    c[static_cast<Eigen::Index>(grid->flat(6, 5, 5))] = 1.0;
    s.set_coeff(Mode::plus, FreqSign::positive, c);
    CHECK(continuity_residual(s, 0.0) < 1e-10);
  }

  SUBCASE("second-order convergence in the time step") {
    const PhotonState s = packet(grid, Vec3{0, 0, 1.0}, 2.2, Mode::plus, FreqSign::positive);
    const double r1 = continuity_residual(s, 0.1, 1.0);
    const double r2 = continuity_residual(s, 0.1, 0.5);
    CHECK(r1 / r2 > 3.5);
  }

  SUBCASE("zero state gives zero residual") {
    PhotonState s(grid);
    s.set_coeff(Mode::plus, FreqSign::positive,
                VectorXcd::Zero(static_cast<Eigen::Index>(grid->size())));
    CHECK(continuity_residual(s, 0.0) == 0.0);
  }
}

TEST_CASE("born density") {
  const auto grid = KGrid::make(12, 6.0, true);

  SUBCASE("zero and positivity") {
    const VectorXd zero = VectorXd::Zero(static_cast<Eigen::Index>(grid->size()));
    const BornDensity d = born_density(*grid, zero);
    CHECK(d.total == 0.0);
    CHECK(d.rho.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("normalized real-field packet integrates to one") {
    VectorXd profile(static_cast<Eigen::Index>(grid->size()));
    for (std::size_t f = 0; f < grid->size(); ++f)
      profile[static_cast<Eigen::Index>(f)] =
          std::exp(-0.5 * (grid->node_k(f) - Vec3{0, 0, 2.4}).squaredNorm() * 2.4 * 2.4);
    const PhotonState st = normalize_real_field(circular_state(grid, profile, +1, 1));
    const VectorXcd psi_plus =
        k_to_x(*grid, st.coeff(Mode::plus, FreqSign::positive), MeasureKind::trivial,
               FreqSign::positive, 0.0);
    const BornDensity d = born_density(*grid, psi_plus.real());
    CHECK(std::abs(d.total - 1.0) < 1e-8);
    CHECK(d.rho.minCoeff() >= 0.0);
  }
}

TEST_CASE("parseval report") {
  const auto grid = KGrid::make(12, 6.0, true);
  const PhotonState s = packet(grid, Vec3{0, 0, 0.6}, 1.9, Mode::plus, FreqSign::positive);
  const ParsevalReport rep = parseval_report(s);
  CHECK(rep.mismatch < 1e-12);
  CHECK(rep.knorm == doctest::Approx(1.0).epsilon(1e-10));

  PhotonState zero(grid);
  CHECK_THROWS_AS((void)parseval_report(zero), non_normalizable_error);
  const PhotonState pw =
      plane_wave(grid, grid->node_k(grid->flat(3, 4, 5)), Mode::plus, FreqSign::positive, 1.0);
  CHECK_THROWS_AS((void)parseval_report(pw), non_normalizable_error);
}

TEST_CASE("oracle and main inner products agree") {
  const auto grid = KGrid::make(16, 8.0, true);
  const PhotonState a = packet(grid, Vec3{0, 0, 1.0}, 1.4, Mode::plus, FreqSign::positive);
  const PhotonState b = packet(grid, Vec3{0.5, 0, 0.5}, 1.4, Mode::plus, FreqSign::positive);
  const Complex main = inner_product(a, b).value;
  const OracleResult ref = oracle_inner_product(a, b);
  CHECK(std::abs(main - ref.value) < 1e-12 * std::abs(ref.value));

  // conjugate symmetry holds exactly term by term in the oracle
  const Complex rev = oracle_inner_product(b, a).value;
  CHECK(std::abs(ref.value - std::conj(rev)) < 1e-14 * std::abs(ref.value));

  PhotonState zero(grid);
  CHECK(oracle_inner_product(zero, zero).value == Complex(0, 0));
}
