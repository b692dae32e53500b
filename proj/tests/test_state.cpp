#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqm/oracle.hpp"
#include "mqm/polarization.hpp"
#include "mqm/products.hpp"
#include "mqm/state.hpp"

#include <random>

using namespace mqm;

TEST_CASE("plane wave: coefficient, orthogonality, self product") {
  const auto grid = KGrid::make(8, 4.0, true);
  const Vec3 q1 = grid->node_k(grid->flat(2, 3, 4));
  const Vec3 q2 = grid->node_k(grid->flat(5, 5, 1));
  const Complex amp(0.8, -0.3);

  const PhotonState s1 = plane_wave(grid, q1, Mode::plus, FreqSign::positive, amp);
  const PhotonState s2 = plane_wave(grid, q2, Mode::plus, FreqSign::positive, 1.0);

  CHECK_FALSE(s1.normalizable());

  SUBCASE("distinct nodes are orthogonal") {
    CHECK(std::abs(inner_product(s1, s2).value) == 0.0);
  }

  SUBCASE("zero amplitude gives the zero state") {
    CHECK(plane_wave(grid, q1, Mode::plus, FreqSign::positive, 0.0).zero());
  }

  SUBCASE("self product carries the discrete delta weight") {
    // c = amp (2 pi)^3 2 omega_q / dk^3 at the node, so the direct sum is
    // dk^3/(2 pi)^3 |c|^2 = (2 pi)^3 (2 omega_q)^2 |amp|^2 / dk^3
    const double omega_q = omega_at(*grid, q1);
    const double dk3 = std::pow(grid->dk(), 3);
    const double expected =
        std::pow(2.0 * M_PI, 3) * std::pow(2.0 * omega_q, 2) * std::norm(amp) / dk3;
    const Complex got = inner_product(s1, s1).value;
    CHECK(got.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(got.imag()) < 1e-12 * expected);
    // scalar-mode variant flips the sign through zeta
    const PhotonState sc = plane_wave(grid, q1, Mode::scalar, FreqSign::positive, amp);
    CHECK(inner_product(sc, sc).value.real() == doctest::Approx(-expected).epsilon(1e-12));
  }

  SUBCASE("off-lattice wavevector is rejected") {
    CHECK_THROWS_AS((void)plane_wave(grid, Vec3{0.123, 0, 0}, Mode::plus, FreqSign::positive, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("gaussian packet: unit norm against the oracle") {
  const auto grid = KGrid::make(16, 8.0, true);
  const PhotonState s = gaussian_packet(grid, Vec3{0, 0, 1.0}, 1.2, Mode::plus,
                                        FreqSign::positive, 1);
  CHECK(s.normalizable());
  const Complex n2 = oracle_inner_product(s, s).value;
  CHECK(std::abs(n2 - 1.0) < 1e-10);
}

TEST_CASE("gaussian packets: separation and mode orthogonality") {
  const auto grid = KGrid::make(16, 8.0, true);
  const double s = 2.0;
  const PhotonState a = gaussian_packet(grid, Vec3{3.0, 0, 0}, s, Mode::plus,
                                        FreqSign::positive, 1);
  const PhotonState b = gaussian_packet(grid, Vec3{-3.0, 0, 0}, s, Mode::plus,
                                        FreqSign::positive, 1);
  // centers separated by 12 s-widths: overlap below 1e-12
  CHECK(std::abs(inner_product(a, b).value) < 1e-12);

  const PhotonState c = gaussian_packet(grid, Vec3{3.0, 0, 0}, s, Mode::minus,
                                        FreqSign::positive, 1);
  CHECK(std::abs(inner_product(a, c).value) == 0.0); // different sectors never mix
}

TEST_CASE("gaussian packet rejects boundary leakage") {
  const auto grid = KGrid::make(8, 4.0, true);
  CHECK_THROWS_AS(
      (void)gaussian_packet(grid, Vec3::Zero(), 0.1, Mode::plus, FreqSign::positive, 1),
      std::domain_error);
}

TEST_CASE("localized state: delta amplitude and orthogonality") {
  const auto grid = KGrid::make(12, 6.0, true);
  const Vec3 y = grid->node_x(grid->flat(7, 4, 6));
  const PhotonState s = localized_state(grid, y, Mode::plus, FreqSign::positive, 0.0, 1);
  CHECK_FALSE(s.normalizable());

  SUBCASE("trivial-measure synthesis at t = 0 is a lattice delta at y") {
    const VectorXcd psi =
        k_to_x(*grid, s.coeff(Mode::plus, FreqSign::positive), MeasureKind::trivial,
               FreqSign::positive, 0.0);
    const double weight = 1.0 / grid->x_weight();
    for (std::size_t f = 0; f < grid->size(); ++f) {
      const Complex v = psi[static_cast<Eigen::Index>(f)];
      if (f == grid->index_of_x(y))
        CHECK(std::abs(v - weight) < 1e-9 * weight);
      else
        CHECK(std::abs(v) < 1e-10 * weight);
    }
  }

  SUBCASE("position eigenvectors at distinct lattice points are orthogonal") {
    const Vec3 x = grid->node_x(grid->flat(2, 9, 6));
    const PhotonState sx = localized_state(grid, x, Mode::plus, FreqSign::positive, 0.0, 1);
    const double self = inner_product(s, s).value.real();
    CHECK(std::abs(inner_product(sx, s).value) < 1e-12 * self);
  }

  SUBCASE("alpha = 1/2 variant is the alpha = 0 variant times sqrt(omega)") {
    const PhotonState h = localized_state(grid, y, Mode::plus, FreqSign::positive, 0.5, 1);
    const VectorXcd &c0 = s.coeff(Mode::plus, FreqSign::positive);
    const VectorXcd &ch = h.coeff(Mode::plus, FreqSign::positive);
    double worst = 0.0;
    for (Eigen::Index f = 0; f < c0.size(); ++f)
      worst = std::max(worst,
                       std::abs(ch[f] - c0[f] * std::sqrt(grid->omega()[f])));
    CHECK(worst < 1e-13);
  }

  SUBCASE("off-lattice positions are rejected") {
    CHECK_THROWS_AS(
        (void)localized_state(grid, y + Vec3{0.01, 0, 0}, Mode::plus, FreqSign::positive, 0.0, 1),
        std::invalid_argument);
  }
}

TEST_CASE("circular and linear constructions") {
  const auto grid = KGrid::make(8, 4.0, true);
  VectorXd profile = VectorXd::Zero(static_cast<Eigen::Index>(grid->size()));
  const std::size_t node = grid->flat(4, 4, 6);
  profile[static_cast<Eigen::Index>(node)] = 2.0;

  SUBCASE("circular: single-helicity positive-frequency, real-field flagged") {
    const PhotonState s = circular_state(grid, profile, +1, 1);
    CHECK(s.real_field());
    CHECK(s.has(Mode::plus, FreqSign::positive));
    CHECK_FALSE(s.has(Mode::minus, FreqSign::positive));
    CHECK_FALSE(s.has(Mode::plus, FreqSign::negative));
    CHECK(s.coeff(Mode::plus, FreqSign::positive)[static_cast<Eigen::Index>(node)] ==
          Complex(2.0, 0.0));
    CHECK(circular_state(grid, VectorXd::Zero(profile.size()), +1, 1).zero());
    CHECK_THROWS_AS((void)circular_state(grid, profile, 2, 1), std::invalid_argument);
  }

  SUBCASE("linear: theta axis splits the profile evenly") {
    const PhotonState s = linear_state(grid, profile, LinearAxis::theta, 1);
    const double r = 2.0 / std::sqrt(2.0);
    CHECK(std::abs(s.coeff(Mode::plus, FreqSign::positive)[static_cast<Eigen::Index>(node)] -
                   Complex(r, 0)) < 1e-15);
    CHECK(std::abs(s.coeff(Mode::minus, FreqSign::positive)[static_cast<Eigen::Index>(node)] -
                   Complex(r, 0)) < 1e-15);
  }

  SUBCASE("linear: phi axis carries the -+i weights") {
    const PhotonState s = linear_state(grid, profile, LinearAxis::phi, 1);
    const double r = 2.0 / std::sqrt(2.0);
    CHECK(std::abs(s.coeff(Mode::plus, FreqSign::positive)[static_cast<Eigen::Index>(node)] -
                   Complex(0, -r)) < 1e-15);
    CHECK(std::abs(s.coeff(Mode::minus, FreqSign::positive)[static_cast<Eigen::Index>(node)] -
                   Complex(0, r)) < 1e-15);
  }
}

TEST_CASE("enforce_lorenz") {
  const auto grid = KGrid::make(8, 4.0, true);
  std::mt19937 gen(3);
  std::normal_distribution<double> dist;
  VectorXcd f(static_cast<Eigen::Index>(grid->size()));
  for (Eigen::Index i = 0; i < f.size(); ++i)
    f[i] = Complex(dist(gen), dist(gen));

  SUBCASE("projection direction: c0 <- c3") {
    PhotonState s(grid);
    s.set_coeff(Mode::scalar, FreqSign::positive, f);
    const PhotonState out = enforce_lorenz(s);
    CHECK(out.lorenz());
    CHECK(out.coeff(Mode::scalar, FreqSign::positive).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("idempotence and the k-space Lorenz identity") {
    PhotonState s(grid);
    s.set_coeff(Mode::longitudinal, FreqSign::positive, f);
    const PhotonState once = enforce_lorenz(s);
    const PhotonState twice = enforce_lorenz(once);
    CHECK((once.coeff(Mode::scalar, FreqSign::positive) -
           twice.coeff(Mode::scalar, FreqSign::positive))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    // |k| c3 = (omega/c) c0 nodewise
    const PhysicalConstants &pc = grid->constants();
    double worst = 0.0;
    for (std::size_t n = 0; n < grid->size(); ++n) {
      const Eigen::Index i = static_cast<Eigen::Index>(n);
      const Complex lhs = grid->node_k(n).norm() *
                          once.coeff(Mode::longitudinal, FreqSign::positive)[i];
      const Complex rhs = grid->omega()[i] / pc.c *
                          once.coeff(Mode::scalar, FreqSign::positive)[i];
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("from_boundary recovers a known transverse state") {
  const auto grid = KGrid::make(12, 6.0, true);
  VectorXd profile(static_cast<Eigen::Index>(grid->size()));
  for (std::size_t f = 0; f < grid->size(); ++f)
    profile[static_cast<Eigen::Index>(f)] =
        std::exp(-0.5 * (grid->node_k(f) - Vec3{0, 0, 1.2}).squaredNorm() * 2.4 * 2.4);
  const PhotonState original = circular_state(grid, profile, +1, 1);

  // boundary data from the real fields at t = 0
  const auto build_data = [&](const PhotonState &st) {
    const PolarizationFrame frame = PolarizationFrame::build(grid, 1);
    const Eigen::Index size = static_cast<Eigen::Index>(grid->size());
    BoundaryData data;
    data.A0.resize(size, 3);
    data.E0.resize(size, 3);
    const double sigma = grid->constants().field_scale();
    const Complex I(0, 1);
    for (int d = 0; d < 3; ++d) {
      VectorXcd compA = VectorXcd::Zero(size), compE = VectorXcd::Zero(size);
      for (Mode mode : {Mode::plus, Mode::minus}) {
        if (!st.has(mode, FreqSign::positive))
          continue;
        const VectorXcd &c = st.coeff(mode, FreqSign::positive);
        for (Eigen::Index f = 0; f < size; ++f) {
          const Complex ed = frame.spatial(mode, static_cast<std::size_t>(f))[d];
          compA[f] += c[f] * ed;
          compE[f] += c[f] * ed * (-I * grid->omega()[f]); // dt phase factor
        }
      }
      data.A0.col(d) =
          (I * sigma * k_to_x(*grid, compA, MeasureKind::invariant, FreqSign::positive, 0.0))
              .real();
      data.E0.col(d) =
          (-I * sigma * k_to_x(*grid, compE, MeasureKind::invariant, FreqSign::positive, 0.0))
              .real();
    }
    return data;
  };

  const BoundaryData data = build_data(original);
  const PhotonState recovered = from_boundary(grid, data, 1);
  CHECK(recovered.real_field());

  const VectorXcd &c_in = original.coeff(Mode::plus, FreqSign::positive);
  const VectorXcd &c_out = recovered.coeff(Mode::plus, FreqSign::positive);
  CHECK((c_out - c_in).norm() / c_in.norm() < 1e-10);
  CHECK(recovered.coeff(Mode::minus, FreqSign::positive).norm() < 1e-10 * c_in.norm());

  SUBCASE("zero data gives the zero state") {
    BoundaryData zero;
    zero.A0 = Eigen::MatrixX3d::Zero(static_cast<Eigen::Index>(grid->size()), 3);
    zero.E0 = zero.A0;
    CHECK(from_boundary(grid, zero, 1).zero());
  }

  SUBCASE("longitudinal contamination is rejected") {
    const PolarizationFrame frame = PolarizationFrame::build(grid, 1);
    BoundaryData bad = data;
    const Eigen::Index size = static_cast<Eigen::Index>(grid->size());
    for (int d = 0; d < 3; ++d) {
      VectorXcd comp = VectorXcd::Zero(size);
      for (Eigen::Index f = 0; f < size; ++f)
        comp[f] = profile[f] * frame.spatial(Mode::longitudinal, static_cast<std::size_t>(f))[d];
      bad.A0.col(d) +=
          k_to_x(*grid, comp, MeasureKind::trivial, FreqSign::positive, 0.0).real();
    }
    CHECK_THROWS_AS((void)from_boundary(grid, bad, 1), std::invalid_argument);
  }
}

TEST_CASE("state bookkeeping") {
  const auto grid = KGrid::make(8, 4.0, true);
  PhotonState s(grid);
  CHECK(s.zero());
  CHECK_THROWS_AS((void)PhotonState(grid, 0.3, 1), std::invalid_argument);
  VectorXcd wrong = VectorXcd::Zero(5);
  CHECK_THROWS_AS(s.set_coeff(Mode::plus, FreqSign::positive, wrong), std::invalid_argument);
}
