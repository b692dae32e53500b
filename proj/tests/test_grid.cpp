#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqm/grid.hpp"
#include "mqm/numerics.hpp"
#include "mqm/oracle.hpp"

#include <random>

using namespace mqm;

namespace {

VectorXcd random_coeff(const KGrid &grid, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  VectorXcd c(static_cast<Eigen::Index>(grid.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c[i] = Complex(dist(gen), dist(gen));
  return c;
}

} // namespace

TEST_CASE("make_grid node layout") {
  const auto grid = KGrid::make(8, 4.0, false);
  CHECK(grid->dk() == doctest::Approx(1.0).epsilon(1e-15));
  // per-axis nodes {-4, -3, ..., 3}
  CHECK(grid->axis_k(0) == doctest::Approx(-4.0));
  CHECK(grid->axis_k(7) == doctest::Approx(3.0));
  CHECK(grid->dx() == doctest::Approx(2.0 * M_PI / 8.0));
  CHECK(grid->period() == doctest::Approx(2.0 * M_PI));

  const auto shifted = KGrid::make(8, 4.0, true);
  CHECK(shifted->axis_k(0) == doctest::Approx(-3.5));
  CHECK(shifted->axis_k(7) == doctest::Approx(3.5));
  // minimum |k| = sqrt(3) * 0.5 on the shifted grid
  CHECK(shifted->min_omega() == doctest::Approx(std::sqrt(3.0) * 0.5).epsilon(1e-14));
  CHECK(grid->min_omega() == 0.0);
}

TEST_CASE("make_grid rejects bad parameters") {
  CHECK_THROWS_AS((void)KGrid::make(3, 4.0, false), std::invalid_argument);
  CHECK_THROWS_AS((void)KGrid::make(7, 4.0, false), std::invalid_argument);
  CHECK_THROWS_AS((void)KGrid::make(2, 4.0, false), std::invalid_argument);
  CHECK_THROWS_AS((void)KGrid::make(8, 0.0, false), std::invalid_argument);
  CHECK_THROWS_AS((void)KGrid::make(8, -1.0, false), std::invalid_argument);
  PhysicalConstants bad;
  bad.c = 0.0;
  CHECK_THROWS_AS((void)KGrid::make(8, 4.0, false, bad), std::invalid_argument);
}

TEST_CASE("omega_at on lattice nodes") {
  const auto grid = KGrid::make(16, 8.0, false);
  CHECK(omega_at(*grid, Vec3{0, 0, 0}) == doctest::Approx(0.0));
  CHECK(omega_at(*grid, Vec3{3, 4, 0}) == doctest::Approx(5.0).epsilon(1e-15));

  PhysicalConstants pc;
  pc.c = 2.0;
  const auto grid2 = KGrid::make(16, 8.0, false, pc);
  CHECK(omega_at(*grid2, Vec3{1, 1, 1}) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-15));

  CHECK_THROWS_AS(omega_at(*grid, Vec3{0.5, 0, 0}), std::invalid_argument);
}

TEST_CASE("omega table matches omega_at exactly") {
  const auto grid = KGrid::make(8, 4.0, true);
  for (std::size_t f = 0; f < grid->size(); f += 7) {
    const Vec3 k = grid->node_k(f);
    CHECK(grid->omega()[static_cast<Eigen::Index>(f)] == omega_at(*grid, k));
  }
}

TEST_CASE("k_to_x: zero, single-node delta, oracle agreement") {
  const auto grid = KGrid::make(8, 4.0, true);

  SUBCASE("zero coefficients give a zero field") {
    const VectorXcd zero = VectorXcd::Zero(static_cast<Eigen::Index>(grid->size()));
    const VectorXcd psi = k_to_x(*grid, zero, MeasureKind::trivial, FreqSign::positive, 0.0);
    CHECK(psi.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("single-node delta reproduces the plane-wave sample") {
    const std::size_t node = grid->flat(5, 2, 6);
    const Vec3 q = grid->node_k(node);
    VectorXcd c = VectorXcd::Zero(static_cast<Eigen::Index>(grid->size()));
    c[static_cast<Eigen::Index>(node)] = 1.0;
    const VectorXcd psi = k_to_x(*grid, c, MeasureKind::trivial, FreqSign::positive, 0.0);
    for (std::size_t f = 0; f < grid->size(); f += 11) {
      const Vec3 x = grid->node_x(f);
      const Complex expected = grid->k_weight() * std::exp(Complex(0, q.dot(x)));
      CHECK(std::abs(psi[static_cast<Eigen::Index>(f)] - expected) < 1e-14);
    }
  }

  SUBCASE("gaussian coefficients match the direct quadrature oracle") {
    VectorXcd c(static_cast<Eigen::Index>(grid->size()));
    const Vec3 k0{0.5, -0.5, 1.5};
    for (std::size_t f = 0; f < grid->size(); ++f)
      c[static_cast<Eigen::Index>(f)] =
          std::exp(-0.5 * (grid->node_k(f) - k0).squaredNorm() * 1.2 * 1.2);
    for (MeasureKind measure : {MeasureKind::invariant, MeasureKind::trivial})
      for (FreqSign eps : {FreqSign::positive, FreqSign::negative}) {
        const VectorXcd psi = k_to_x(*grid, c, measure, eps, 0.3);
        std::mt19937 gen(99);
        std::uniform_int_distribution<int> pick(0, grid->n() - 1);
        for (int trial = 0; trial < 10; ++trial) {
          const std::size_t f = grid->flat(pick(gen), pick(gen), pick(gen));
          const Complex ref = oracle_k_to_x(*grid, c, measure, eps, 0.3, grid->node_x(f)).value;
          CHECK(std::abs(psi[static_cast<Eigen::Index>(f)] - ref) <= 1e-10 * std::abs(ref));
        }
      }
  }
}

TEST_CASE("invariant measure rejects a grid with an omega = 0 node") {
  const auto grid = KGrid::make(8, 4.0, false);
  const VectorXcd c = VectorXcd::Ones(static_cast<Eigen::Index>(grid->size()));
  CHECK_THROWS_AS((void)k_to_x(*grid, c, MeasureKind::invariant, FreqSign::positive, 0.0),
                  std::domain_error);
  CHECK_NOTHROW((void)k_to_x(*grid, c, MeasureKind::trivial, FreqSign::positive, 0.0));
}

TEST_CASE("x_to_k inverts the trivial bridge") {
  for (bool offset : {false, true}) {
    const auto grid = KGrid::make(10, 5.0, offset);
    const VectorXcd c = random_coeff(*grid, offset ? 1u : 2u);
    const VectorXcd back =
        x_to_k(*grid, k_to_x(*grid, c, MeasureKind::trivial, FreqSign::positive, 0.0));
    CHECK((back - c).norm() / c.norm() < 1e-12);

    const VectorXcd zero = VectorXcd::Zero(static_cast<Eigen::Index>(grid->size()));
    CHECK(x_to_k(*grid, zero).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("x_to_k rejects mismatched shapes") {
  const auto grid = KGrid::make(8, 4.0, true);
  VectorXcd wrong = VectorXcd::Zero(10);
  CHECK_THROWS_AS((void)x_to_k(*grid, wrong), std::invalid_argument);
  CHECK_THROWS_AS((void)k_to_x(*grid, wrong, MeasureKind::trivial, FreqSign::positive, 0.0),
                  std::invalid_argument);
}

TEST_CASE("discrete Parseval identity") {
  const auto grid = KGrid::make(12, 6.0, true);
  for (unsigned seed : {11u, 12u, 13u}) {
    const VectorXcd c = random_coeff(*grid, seed);
    const VectorXcd psi = k_to_x(*grid, c, MeasureKind::trivial, FreqSign::positive, 0.0);
    const double knorm = c.squaredNorm() * grid->k_weight();
    const double xnorm = psi.squaredNorm() * grid->x_weight();
    CHECK(std::abs(knorm - xnorm) / knorm < 1e-12);
  }
}

TEST_CASE("node and position lookup") {
  const auto grid = KGrid::make(8, 4.0, true);
  const std::size_t f = grid->flat(1, 2, 3);
  CHECK(grid->index_of_k(grid->node_k(f)) == f);
  CHECK(grid->index_of_x(grid->node_x(f)) == f);
  CHECK_THROWS_AS((void)grid->index_of_k(Vec3{0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)grid->index_of_x(Vec3{1e9, 0.0, 0.0}), std::invalid_argument);
}
