#include "aqrm/qudit_magic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aqrm {

namespace {

constexpr double kNegativeFloor = -1e-14;

void check_indices(int d, int k, int l) {
    if (d < 2) throw std::invalid_argument("heisenberg_weyl: d must be >= 2");
    if (k < 0 || k >= d || l < 0 || l >= d) {
        throw std::out_of_range("heisenberg_weyl: index outside Z_d");
    }
}

bool is_odd_prime(int d) {
    if (d < 3 || d % 2 == 0) return false;
    for (int f = 3; f * f <= d; f += 2) {
        if (d % f == 0) return false;
    }
    return true;
}

Complex tau_power(int d, long long e) {
    // tau^e with tau = exp(i pi (d+1)/d).
    const double angle = std::numbers::pi * static_cast<double>(e % (2LL * d)) * (d + 1) / d;
    return std::polar(1.0, angle);
}

}  // namespace

DiscreteWignerTable::DiscreteWignerTable(RealMatrix values, WignerKernel kernel)
    : values_(std::move(values)), kernel_(kernel) {
    if (values_.rows() != values_.cols() || values_.rows() < 2) {
        throw std::invalid_argument("DiscreteWignerTable: table must be d x d with d >= 2");
    }
}

Matrix clock_operator(int d) {
    Matrix z = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        z(j, j) = tau_power(d, 2LL * j);
    }
    return z;
}

Matrix shift_operator(int d) {
    Matrix x = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        x((j + 1) % d, j) = 1.0;
    }
    return x;
}

Matrix heisenberg_weyl(int d, int k, int l) {
    check_indices(d, k, l);
    const Matrix x = shift_operator(d);
    const Matrix z = clock_operator(d);
    Matrix out = Matrix::Identity(d, d);
    for (int i = 0; i < k; ++i) out = out * x;
    for (int i = 0; i < l; ++i) out = out * z;
    return tau_power(d, static_cast<long long>(k) * l) * out;
}

Matrix discrete_parity(int d) {
    Matrix p = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            p += heisenberg_weyl(d, k, l);
        }
    }
    return p / static_cast<double>(d);
}

DiscreteWignerTable discrete_wigner_qubit(const QubitDensity& rho, WignerKernel kernel) {
    if (kernel == WignerKernel::PhasePointOperator) {
        throw std::invalid_argument("discrete_wigner_qubit: phase-point kernel needs odd prime d");
    }
    const BlochVector s = bloch_vector(rho);
    const int y_offset = kernel == WignerKernel::Marchiolli ? 1 : 0;
    RealMatrix values(2, 2);
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            const double sign_x = (l % 2 == 0) ? 1.0 : -1.0;
            const double sign_y = ((k + l + y_offset) % 2 == 0) ? 1.0 : -1.0;
            const double sign_z = (k % 2 == 0) ? 1.0 : -1.0;
            // tr(rho W) = (1 + sx s_x + sy s_y + sz s_z) / 2, halved again for unit sum.
            values(k, l) = 0.25 * (1.0 + sign_x * s.x + sign_y * s.y + sign_z * s.z);
        }
    }
    return DiscreteWignerTable(std::move(values), kernel);
}

DiscreteWignerTable discrete_wigner_qudit(const Matrix& rho, int d) {
    if (!is_odd_prime(d)) {
        throw std::invalid_argument("discrete_wigner_qudit: d must be an odd prime");
    }
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("discrete_wigner_qudit: density matrix must be d x d");
    }
    if (hermiticity_defect(rho) > 1e-10 || std::abs(rho.trace() - 1.0) > 1e-10) {
        throw std::invalid_argument("discrete_wigner_qudit: invalid density matrix");
    }
    const Matrix parity = discrete_parity(d);
    RealMatrix values(d, d);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            const Matrix disp = heisenberg_weyl(d, k, l);
            const Matrix ppo = disp * parity * disp.adjoint();
            values(k, l) = (rho * ppo).trace().real() / d;
        }
    }
    return DiscreteWignerTable(std::move(values), WignerKernel::PhasePointOperator);
}

double sum_negativity(const DiscreteWignerTable& table) {
    double sn = 0.0;
    for (Index i = 0; i < table.values().size(); ++i) {
        const double v = table.values().data()[i];
        if (v < kNegativeFloor) sn -= v;
    }
    return sn;
}

double mana(const DiscreteWignerTable& table) {
    return std::log2(2.0 * sum_negativity(table) + 1.0);
}

double dai_fu_luo(const QubitDensity& rho) {
    double m = 0.0;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            const Matrix disp = heisenberg_weyl(2, k, l);
            m += std::abs((Matrix(rho.matrix()) * disp).trace());
        }
    }
    return m;
}

double von_neumann_entropy(const Matrix& rho) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("von_neumann_entropy: matrix must be square");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(rho), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda > 0.0) s -= lambda * std::log(lambda);
    }
    return std::max(0.0, s);
}

double von_neumann_entropy(const QubitDensity& rho) {
    return von_neumann_entropy(Matrix(rho.matrix()));
}

double von_neumann_entropy(const BosonDensity& rho) {
    return von_neumann_entropy(rho.matrix());
}

WitnessEntropyRelation witness_entropy_relation(const QubitDensity& rho) {
    const BlochVector s = bloch_vector(rho);
    if (std::abs(s.x) + std::abs(s.y) > 1e-8) {
        throw std::invalid_argument("witness_entropy_relation: requires s_x = s_y = 0");
    }
    const double r = s.norm();
    return {dai_fu_luo(rho), 1.0 + std::atanh(r), r * r * r};
}

ReferenceStates reference_states() {
    const double h = 1.0 / std::numbers::sqrt2;
    const double t = 1.0 / std::numbers::sqrt3;
    ReferenceStates out;
    const std::array<std::pair<double, double>, 4> dirs{{{h, h}, {-h, h}, {h, -h}, {-h, -h}}};
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        out.h_states[i] = density_from_bloch({dirs[i].first, 0.0, dirs[i].second});
    }
    out.t_state = density_from_bloch({t, t, t});
    return out;
}

double mana_h_state() {
    return mana(discrete_wigner_qubit(QubitDensity(reference_states().h_states[0])));
}

MagicReport qubit_magic_report(const QubitDensity& rho, WignerKernel kernel) {
    const DiscreteWignerTable table = discrete_wigner_qubit(rho, kernel);
    MagicReport report;
    report.sum_negativity = sum_negativity(table);
    report.mana = std::log2(2.0 * report.sum_negativity + 1.0);
    report.dai_fu_luo = dai_fu_luo(rho);
    report.entropy = von_neumann_entropy(rho);
    report.bloch = bloch_vector(rho);
    return report;
}

}  // namespace aqrm
