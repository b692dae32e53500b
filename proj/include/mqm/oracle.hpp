#pragma once
#include "mqm/state.hpp"
#include "mqm/types.hpp"

namespace mqm {

//! Result of a brute-force reference computation.
struct OracleResult {
  Complex value{};
  std::size_t node_count = 0;
  double elapsed_seconds = 0.0;
};

//! Invariant inner product by a plain double loop over nodes and sectors
//! with zeta weights; sequential accumulation, no transform code shared
//! with the main path.
OracleResult oracle_inner_product(const PhotonState &s1, const PhotonState &s2);

//! One component of A^mu at an arbitrary event by direct summation.
OracleResult oracle_field_component(const PhotonState &state, double t, const Vec3 &x, int mu);

//! psi for one mode at an arbitrary event by direct summation.
OracleResult oracle_psi(const PhotonState &state, double t, const Vec3 &x, Mode mode);

//! The k_to_x integrand summed directly at a single point.
OracleResult oracle_k_to_x(const KGrid &grid, const VectorXcd &coeff, MeasureKind measure,
                           FreqSign eps, double t, const Vec3 &x);

} // namespace mqm
