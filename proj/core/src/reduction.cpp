#include "aqrm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aqrm {

namespace {

constexpr double kNormTol = 1e-8;

template <typename M>
void validate_density(const M& rho, double tol, const char* what) {
    const Matrix m = rho;
    if (hermiticity_defect(m) > tol) {
        throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
    }
    if (std::abs(m.trace() - 1.0) > tol) {
        throw std::invalid_argument(std::string(what) + ": trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw std::invalid_argument(std::string(what) + ": matrix has a negative eigenvalue");
    }
}

Eigen::Map<const Eigen::Matrix<Complex, 2, Eigen::Dynamic>> as_coefficients(const Vector& state) {
    // Interleaved ordering: column n holds (C[n,Up], C[n,Down]).
    return {state.data(), 2, state.size() / 2};
}

Vector normalized(const Vector& state, const TruncatedBasis& basis) {
    if (state.size() != basis.dim()) {
        throw std::invalid_argument("partial trace: state dimension does not match basis");
    }
    const double norm = state.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw std::invalid_argument("partial trace: state is not normalized");
    }
    return state / norm;
}

}  // namespace

QubitDensity::QubitDensity(const Eigen::Matrix2cd& rho, double tol) : rho_(rho) {
    validate_density(rho_, tol, "QubitDensity");
}

Eigen::Vector2d QubitDensity::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

BosonDensity::BosonDensity(Matrix rho, double tol) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
        throw std::invalid_argument("BosonDensity: matrix must be square and non-empty");
    }
    validate_density(rho_, tol, "BosonDensity");
}

RealVector BosonDensity::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double BlochVector::polar() const {
    const double r = norm();
    return r == 0.0 ? 0.0 : std::acos(std::clamp(z / r, -1.0, 1.0));
}

double BlochVector::azimuth() const { return std::atan2(y, x); }

QubitDensity trace_out_boson(const Vector& state, const TruncatedBasis& basis) {
    const Vector v = normalized(state, basis);
    const auto c = as_coefficients(v);
    // rho_S[s, s'] = sum_n C[n,s] conj(C[n,s'])
    Eigen::Matrix2cd rho = c * c.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return QubitDensity(rho);
}

BosonDensity trace_out_qubit(const Vector& state, const TruncatedBasis& basis) {
    const Vector v = normalized(state, basis);
    const auto c = as_coefficients(v);
    // rho_B[n, n'] = sum_s C[n,s] conj(C[n',s])
    Matrix rho = c.transpose() * c.conjugate();
    return BosonDensity(hermitian_part(rho));
}

BlochVector bloch_vector(const QubitDensity& rho) {
    const Eigen::Matrix2cd& m = rho.matrix();
    const Complex c = m(0, 1);
    return {2.0 * c.real(), -2.0 * c.imag(), (m(0, 0) - m(1, 1)).real()};
}

Eigen::Matrix2cd density_from_bloch(const BlochVector& s) {
    return 0.5 * (pauli(Pauli::I) + s.x * pauli(Pauli::X) + s.y * pauli(Pauli::Y) +
                  s.z * pauli(Pauli::Z));
}

double mean_boson_number(const BosonDensity& rho) {
    const Matrix& m = rho.matrix();
    double n_bar = 0.0;
    for (Index n = 0; n < m.rows(); ++n) {
        n_bar += static_cast<double>(n) * m(n, n).real();
    }
    return n_bar;
}

}  // namespace aqrm
