// linalg.hpp: dense complex matrix aliases and small Hermitian helpers.

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace aqrm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-12;

// Largest entrywise deviation |A - A^dagger|.
double hermiticity_defect(const Matrix& a);

// (A + A^dagger) / 2.
Matrix hermitian_part(const Matrix& a);

// exp(factor * H) for Hermitian H via its spectral decomposition.
Matrix exp_hermitian(const Matrix& h, Complex factor);

// Largest entrywise modulus.
double max_abs(const Matrix& a);

}  // namespace aqrm
