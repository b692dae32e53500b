#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>

namespace mqm {

using Complex = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Vec3i = Eigen::Vector3i;
using Vec4 = Eigen::Vector4d;
using CVec3 = Eigen::Vector3cd;
using CVec4 = Eigen::Vector4cd;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;

using ArrayXd = Eigen::ArrayXd;
using VectorXd = Eigen::VectorXd;
using VectorXcd = Eigen::VectorXcd;

//! Polarization mode index: scalar (time-like), helicity +-1, longitudinal.
enum class Mode : std::uint8_t { scalar = 0, plus = 1, minus = 2, longitudinal = 3 };

//! Frequency sign epsilon = +-1 (absorption / emission branch).
enum class FreqSign : std::int8_t { positive = +1, negative = -1 };

inline constexpr int sign_of(FreqSign eps) { return static_cast<int>(eps); }

//! Helicity eigenvalue carried by a mode (0 for scalar and longitudinal).
inline constexpr int helicity_of(Mode m) {
  switch (m) {
  case Mode::plus:
    return +1;
  case Mode::minus:
    return -1;
  default:
    return 0;
  }
}

//! Metric signs zeta = (-1, 1, 1, 1): the scalar mode enters inner
//! products with opposite sign so gauge pairs can cancel.
inline constexpr double zeta_of(Mode m) { return m == Mode::scalar ? -1.0 : 1.0; }

inline constexpr const char *mode_label(Mode m) {
  switch (m) {
  case Mode::scalar:
    return "scalar";
  case Mode::plus:
    return "plus";
  case Mode::minus:
    return "minus";
  case Mode::longitudinal:
    return "longitudinal";
  }
  return "?";
}

inline constexpr const char *freq_label(FreqSign e) {
  return e == FreqSign::positive ? "+" : "-";
}

//! Minkowski product a_mu b^mu with signature (+,-,-,-).
inline Complex minkowski_dot(const CVec4 &a, const CVec4 &b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

inline double minkowski_dot(const Vec4 &a, const Vec4 &b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

} // namespace mqm
