#include "aqrm/linalg.hpp"

#include <stdexcept>

namespace aqrm {

double hermiticity_defect(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("hermiticity_defect: matrix must be square");
    }
    return max_abs(a - a.adjoint());
}

Matrix hermitian_part(const Matrix& a) {
    return 0.5 * (a + a.adjoint());
}

Matrix exp_hermitian(const Matrix& h, Complex factor) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("exp_hermitian: eigendecomposition failed");
    }
    const RealVector& values = solver.eigenvalues();
    Vector phases(values.size());
    for (Index i = 0; i < values.size(); ++i) {
        phases(i) = std::exp(factor * values(i));
    }
    const Matrix& v = solver.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace aqrm
