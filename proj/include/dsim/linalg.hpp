#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace dsim {

using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4d = Eigen::Vector4d;
using Matrix4d = Eigen::Matrix4d;
using Vector15d = Eigen::Matrix<double, 15, 1>;

// Reduced units: time dimensionless, amplitudes and detuning in inverse
// reduced time, hbar fixed to one.
inline constexpr double kHBar = 1.0;

// Invalid argument, malformed input, failed validation. Maps to process
// exit code 2 at the CLI boundary.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mid-run breach of a physical invariant (trace loss where none is
// modeled, negative eigenvalue beyond tolerance). Maps to exit code 3.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double max_abs(const MatrixC& m) { return m.cwiseAbs().maxCoeff(); }

inline double hermiticity_deviation(const MatrixC& m) {
  return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const MatrixC& m, double tol) {
  return m.rows() == m.cols() && hermiticity_deviation(m) <= tol;
}

}  // namespace dsim
