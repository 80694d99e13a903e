// reduction.hpp: partial traces of pure boson-qubit states.

#pragma once

#include "aqrm/linalg.hpp"
#include "aqrm/model.hpp"

namespace aqrm {

// 2x2 density matrix in the (Up, Down) basis. Construction validates
// Hermiticity, unit trace and positivity (eigenvalues >= -tol); it never
// repairs a matrix.
class QubitDensity {
public:
    explicit QubitDensity(const Eigen::Matrix2cd& rho, double tol = 1e-12);

    const Eigen::Matrix2cd& matrix() const { return rho_; }
    Eigen::Vector2d eigenvalues() const;

private:
    Eigen::Matrix2cd rho_;
};

class BosonDensity {
public:
    explicit BosonDensity(Matrix rho, double tol = 1e-10);

    const Matrix& matrix() const { return rho_; }
    int n_max() const { return static_cast<int>(rho_.rows()) - 1; }
    RealVector eigenvalues() const;

private:
    Matrix rho_;
};

// rho = (1 + s.sigma)/2.
struct BlochVector {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    double norm() const;
    double polar() const;    // theta, angle from +z
    double azimuth() const;  // phi, atan2(y, x)
};

// Both traces reject states whose norm differs from 1 by more than 1e-8 and
// renormalize within that window.
QubitDensity trace_out_boson(const Vector& state, const TruncatedBasis& basis);
BosonDensity trace_out_qubit(const Vector& state, const TruncatedBasis& basis);

BlochVector bloch_vector(const QubitDensity& rho);
Eigen::Matrix2cd density_from_bloch(const BlochVector& s);

double mean_boson_number(const BosonDensity& rho);

}  // namespace aqrm
