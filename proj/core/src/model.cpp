#include "aqrm/model.hpp"

#include <cmath>
#include <numbers>

namespace aqrm {

void ModelParams::validate() const {
    for (double v : {omega, delta, g, epsilon, xi}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("ModelParams: parameters must be finite");
        }
    }
    if (omega <= 0.0) {
        throw std::invalid_argument("ModelParams: omega must be positive");
    }
    if (xi < 0.0 || xi > 1.0) {
        throw std::invalid_argument("ModelParams: xi must lie in [0, 1]");
    }
}

TruncatedBasis::TruncatedBasis(int n_max) : n_max_(n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("TruncatedBasis: n_max must be >= 1");
    }
}

Index TruncatedBasis::index(int n, Spin s) const {
    if (n < 0 || n > n_max_) {
        throw std::out_of_range("TruncatedBasis: Fock index out of range");
    }
    return 2 * static_cast<Index>(n) + (s == Spin::Up ? 0 : 1);
}

HermitianOperator::HermitianOperator(Matrix entries, BasisKind kind, int n_max)
    : entries_(std::move(entries)), kind_(kind), n_max_(n_max) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("HermitianOperator: matrix must be square");
    }
    const Index expected = kind_ == BasisKind::Joint   ? 2 * static_cast<Index>(n_max_ + 1)
                           : kind_ == BasisKind::Boson ? static_cast<Index>(n_max_ + 1)
                                                       : 2;
    if (entries_.rows() != expected) {
        throw std::invalid_argument("HermitianOperator: dimension does not match basis");
    }
    if (hermiticity_defect(entries_) > kHermitianTol) {
        throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
    }
}

TruncatedBasis HermitianOperator::basis() const {
    if (kind_ != BasisKind::Joint) {
        throw std::logic_error("HermitianOperator: not a joint boson-qubit operator");
    }
    return TruncatedBasis(n_max_);
}

Eigen::Matrix2cd pauli(Pauli p) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd m;
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, -1i, 1i, 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

LadderOperators build_boson_ladder(int n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("build_boson_ladder: n_max must be >= 1");
    }
    const Index d = n_max + 1;
    Matrix a = Matrix::Zero(d, d);
    for (Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return {a, a.adjoint()};
}

LadderOperators build_ladder_operators(const TruncatedBasis& basis) {
    const LadderOperators boson = build_boson_ladder(basis.n_max());
    const Matrix id2 = Matrix::Identity(2, 2);
    Matrix a = Matrix::Zero(basis.dim(), basis.dim());
    for (Index r = 0; r < boson.annihilation.rows(); ++r) {
        for (Index c = 0; c < boson.annihilation.cols(); ++c) {
            if (boson.annihilation(r, c) != 0.0) {
                a.block(2 * r, 2 * c, 2, 2) = boson.annihilation(r, c) * id2;
            }
        }
    }
    return {a, a.adjoint()};
}

Matrix qubit_operator(const TruncatedBasis& basis, Pauli p) {
    const Eigen::Matrix2cd s = pauli(p);
    Matrix out = Matrix::Zero(basis.dim(), basis.dim());
    for (int n = 0; n <= basis.n_max(); ++n) {
        out.block(2 * n, 2 * n, 2, 2) = s;
    }
    return out;
}

HermitianOperator build_hamiltonian(const ModelParams& params, const TruncatedBasis& basis) {
    params.validate();
    // Filled element by element; the operator-product form is O(dim^3).
    // <n+1,Down|H|n,Up> = g sqrt(n+1) (rotating), <n+1,Up|H|n,Down> = g xi sqrt(n+1).
    const Index dim = basis.dim();
    Matrix h = Matrix::Zero(dim, dim);
    for (int n = 0; n <= basis.n_max(); ++n) {
        const Index up = basis.index(n, Spin::Up);
        const Index dn = basis.index(n, Spin::Down);
        h(up, up) = params.omega * n + params.delta;
        h(dn, dn) = params.omega * n - params.delta;
        h(up, dn) = h(dn, up) = params.epsilon;
        if (n == basis.n_max()) continue;
        const double r = std::sqrt(static_cast<double>(n + 1));
        const Index up1 = basis.index(n + 1, Spin::Up);
        const Index dn1 = basis.index(n + 1, Spin::Down);
        h(dn1, up) = h(up, dn1) = params.g * r;
        h(up1, dn) = h(dn, up1) = params.g * params.xi * r;
    }
    return HermitianOperator(std::move(h), BasisKind::Joint, basis.n_max());
}

HermitianOperator build_excitation_number(const TruncatedBasis& basis) {
    Matrix lambda = Matrix::Zero(basis.dim(), basis.dim());
    for (Index i = 0; i < basis.dim(); ++i) {
        lambda(i, i) = basis.fock(i) + (basis.spin(i) == Spin::Up ? 1.0 : 0.0);
    }
    return HermitianOperator(std::move(lambda), BasisKind::Joint, basis.n_max());
}

HermitianOperator build_parity(const TruncatedBasis& basis) {
    const Matrix lambda = build_excitation_number(basis).matrix();
    const Matrix pi = exp_hermitian(lambda, Complex(0.0, std::numbers::pi));
    return HermitianOperator(hermitian_part(pi), BasisKind::Joint, basis.n_max());
}

double commutator_max_abs(const Matrix& a, const Matrix& b, const TruncatedBasis& basis,
                          int excluded_layers) {
    const Matrix c = a * b - b * a;
    const int top = basis.n_max() - excluded_layers;
    double worst = 0.0;
    for (Index r = 0; r < c.rows(); ++r) {
        if (basis.fock(r) > top) continue;
        for (Index col = 0; col < c.cols(); ++col) {
            if (basis.fock(col) > top) continue;
            worst = std::max(worst, std::abs(c(r, col)));
        }
    }
    return worst;
}

JcDoublet jc_doublet_oracle(const ModelParams& params, int excitations) {
    params.validate();
    if (params.xi != 0.0) {
        throw std::invalid_argument("jc_doublet_oracle: requires xi = 0");
    }
    if (excitations < 1) {
        throw std::invalid_argument("jc_doublet_oracle: excitation number must be >= 1");
    }
    const double lam = excitations;
    // Block [[w(L-1) + D, g sqrt(L)], [g sqrt(L), wL - D]].
    const double mean = params.omega * (lam - 0.5);
    const double half_gap = 0.5 * (2.0 * params.delta - params.omega);
    const double coupling = params.g * std::sqrt(lam);
    const double split = std::hypot(half_gap, coupling);

    double angle = 0.0;
    if (params.g != 0.0) {
        const double detuning = 2.0 * params.delta - params.omega;
        angle = detuning == 0.0 ? std::numbers::pi / 2
                                : std::atan(2.0 * params.g * std::sqrt(lam) / detuning);
    }
    return {mean - split, mean + split, angle};
}

HermitianOperator polaron_hamiltonian(const ModelParams& params, const TruncatedBasis& basis) {
    using namespace std::complex_literals;
    params.validate();
    if (params.xi != 1.0) {
        throw std::invalid_argument("polaron_hamiltonian: requires xi = 1");
    }
    const HermitianOperator h = build_hamiltonian(params, basis);
    if (params.g == 0.0) {
        return h;
    }
    const auto [a, ad] = build_ladder_operators(basis);
    const Matrix x = qubit_operator(basis, Pauli::X);
    // U = exp(G), G = -(g/w) X (a^dag - a) is anti-Hermitian; K = i G is Hermitian
    // and U = exp(-i K).
    const Matrix generator = -(params.g / params.omega) * (x * (ad - a));
    const Matrix k = hermitian_part(1i * generator);
    const Matrix u = exp_hermitian(k, Complex(0.0, -1.0));
    const Matrix transformed = u.adjoint() * h.matrix() * u;
    return HermitianOperator(hermitian_part(transformed), BasisKind::Joint, basis.n_max());
}

}  // namespace aqrm
