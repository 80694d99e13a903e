#include "aqrm/model.hpp"
#include "aqrm/spectral.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace aqrm;

namespace {

RealVector eigenvalues(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

TEST(Params, ValidateRejectsBadValues) {
    ModelParams p;
    EXPECT_NO_THROW(p.validate());
    p.omega = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.xi = 1.5;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.g = std::nan("");
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Params, DetuningRoundTrip) {
    EXPECT_DOUBLE_EQ(ModelParams::delta_from_detuning(1.0, -1.0), 1.0);
    ModelParams p;
    p.delta = ModelParams::delta_from_detuning(1.0, 0.3);
    EXPECT_NEAR(p.detuning(), 0.3, 1e-15);
}

TEST(Basis, InterleavedOrdering) {
    TruncatedBasis b(3);
    EXPECT_EQ(b.dim(), 8);
    EXPECT_EQ(b.index(0, Spin::Up), 0);
    EXPECT_EQ(b.index(0, Spin::Down), 1);
    EXPECT_EQ(b.index(3, Spin::Down), 7);
    EXPECT_EQ(b.fock(5), 2);
    EXPECT_EQ(b.spin(5), Spin::Down);
    EXPECT_THROW(b.index(4, Spin::Up), std::out_of_range);
    EXPECT_THROW(TruncatedBasis(-1), std::invalid_argument);
}

TEST(Operator, RejectsNonHermitian) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(HermitianOperator(m, BasisKind::Qubit), std::invalid_argument);
    EXPECT_THROW(HermitianOperator(Matrix::Zero(2, 3), BasisKind::Qubit), std::invalid_argument);
}

TEST(Hamiltonian, DecoupledSpectrum) {
    const auto ev = eigenvalues(build_hamiltonian({1.0, 0.5, 0.0, 0.0, 1.0}, TruncatedBasis(2)));
    const double want[] = {-0.5, 0.5, 0.5, 1.5, 1.5, 2.5};
    ASSERT_EQ(ev.size(), 6);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(ev(i), want[i], 1e-12);
}

TEST(Hamiltonian, BiasedQubitGroundState) {
    const auto ev = eigenvalues(build_hamiltonian({1.0, 0.5, 0.0, 0.8, 1.0}, TruncatedBasis(4)));
    EXPECT_NEAR(ev(0), -std::sqrt(0.89), 1e-12);
}

TEST(Hamiltonian, DecoupledMatchesAnalyticSet) {
    const ModelParams p{1.3, 0.4, 0.0, -0.7, 0.3};
    TruncatedBasis b(6);
    const auto ev = eigenvalues(build_hamiltonian(p, b));
    std::vector<double> want;
    const double r = std::hypot(p.delta, p.epsilon);
    for (int n = 0; n <= 6; ++n) {
        want.push_back(p.omega * n - r);
        want.push_back(p.omega * n + r);
    }
    std::sort(want.begin(), want.end());
    for (int i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev(i), want[i], 1e-12);
}

TEST(Hamiltonian, IsHermitian) {
    for (double xi : {0.0, 0.4, 1.0}) {
        const auto h = build_hamiltonian({1.0, 0.5, 0.7, 0.3, xi}, TruncatedBasis(20));
        EXPECT_LE(hermiticity_defect(h.matrix()), 1e-12);
    }
}

TEST(Hamiltonian, ResonantJcDoublet) {
    // Lambda = 1 block at g = 0.1: omega/2 -+ g
    const auto ev = eigenvalues(build_hamiltonian({1.0, 0.5, 0.1, 0.0, 0.0}, TruncatedBasis(10)));
    EXPECT_NEAR(ev(0), -0.5, 1e-12);
    EXPECT_NEAR(ev(1), 0.4, 1e-12);
    EXPECT_NEAR(ev(2), 0.6, 1e-12);
}

TEST(Hamiltonian, EpsilonSignSymmetry) {
    TruncatedBasis b(40);
    const auto a = eigenvalues(build_hamiltonian({1.0, 0.5, 0.6, 0.45, 1.0}, b));
    const auto c = eigenvalues(build_hamiltonian({1.0, 0.5, 0.6, -0.45, 1.0}, b));
    EXPECT_LE((a - c).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Symmetry, ExcitationNumberOnBareStates) {
    TruncatedBasis b(4);
    const auto lam = build_excitation_number(b).matrix();
    EXPECT_NEAR(lam(b.index(0, Spin::Up), b.index(0, Spin::Up)).real(), 1.0, 1e-15);
    EXPECT_NEAR(lam(b.index(0, Spin::Down), b.index(0, Spin::Down)).real(), 0.0, 1e-15);
    EXPECT_NEAR(lam(b.index(3, Spin::Up), b.index(3, Spin::Up)).real(), 4.0, 1e-15);
}

TEST(Symmetry, ParityIsInvolution) {
    TruncatedBasis b(12);
    const Matrix pi = build_parity(b).matrix();
    EXPECT_LE(max_abs(pi * pi - Matrix::Identity(b.dim(), b.dim())), 1e-12);
    EXPECT_LE(max_abs(pi * pi.adjoint() - Matrix::Identity(b.dim(), b.dim())), 1e-12);
    // |0,up> has Lambda = 1: odd
    EXPECT_NEAR(pi(0, 0).real(), -1.0, 1e-12);
}

TEST(Symmetry, ParityCommutesWhenUnbiased) {
    TruncatedBasis b(30);
    const Matrix pi = build_parity(b).matrix();
    for (double xi : {0.0, 0.5, 1.0}) {
        const Matrix h = build_hamiltonian({1.0, 0.5, 0.8, 0.0, xi}, b).matrix();
        EXPECT_LE(commutator_max_abs(pi, h, b), 1e-10) << "xi=" << xi;
    }
    const Matrix biased = build_hamiltonian({1.0, 0.5, 0.8, 0.3, 1.0}, b).matrix();
    EXPECT_GT(commutator_max_abs(pi, biased, b), 0.1);
}

TEST(Symmetry, ExcitationNumberCommutesInJcLimit) {
    TruncatedBasis b(30);
    const Matrix lam = build_excitation_number(b).matrix();
    const Matrix h = build_hamiltonian({1.0, 0.5, 0.8, 0.0, 0.0}, b).matrix();
    EXPECT_LE(commutator_max_abs(lam, h, b), 1e-10);
    const Matrix rabi = build_hamiltonian({1.0, 0.5, 0.8, 0.0, 1.0}, b).matrix();
    EXPECT_GT(commutator_max_abs(lam, rabi, b), 0.1);
}

TEST(JcOracle, MixingAngles) {
    EXPECT_NEAR(jc_doublet_oracle({1.0, 0.5, 0.25, 0.0, 0.0}, 1).mixing_angle, M_PI / 2, 1e-15);
    EXPECT_NEAR(jc_doublet_oracle({1.0, 0.5, 0.7, 0.0, 0.0}, 6).mixing_angle, M_PI / 2, 1e-15);
    EXPECT_NEAR(jc_doublet_oracle({1.0, 0.6, 0.1, 0.0, 0.0}, 1).mixing_angle, M_PI / 4, 1e-12);
    const JcDoublet d = jc_doublet_oracle({1.0, 0.6, 0.0, 0.0, 0.0}, 3);
    EXPECT_EQ(d.mixing_angle, 0.0);
    EXPECT_NEAR(d.lower, 3.0 - 0.6, 1e-12);  // |3,down>
    EXPECT_NEAR(d.upper, 2.0 + 0.6, 1e-12);  // |2,up>
}

TEST(JcOracle, MatchesIndependentBlock) {
    for (int lam = 1; lam <= 10; ++lam) {
        const ModelParams p{1.0, 0.37, 0.21, 0.0, 0.0};
        const JcDoublet d = jc_doublet_oracle(p, lam);
        const auto [lo, hi] = oracle::jc_block(p.omega, p.delta, p.g, lam);
        EXPECT_NEAR(d.lower, lo, 1e-12);
        EXPECT_NEAR(d.upper, hi, 1e-12);
        EXPECT_NEAR(d.mixing_angle, oracle::jc_mixing_angle(p.omega, p.delta, p.g, lam), 1e-12);
    }
}

TEST(JcOracle, RejectsNonJc) {
    EXPECT_THROW(jc_doublet_oracle({1.0, 0.5, 0.1, 0.0, 0.5}, 1), std::invalid_argument);
    EXPECT_THROW(jc_doublet_oracle({1.0, 0.5, 0.1, 0.0, 0.0}, 0), std::invalid_argument);
}

TEST(Polaron, ZeroSplittingClosedForm) {
    TruncatedBasis b(60);
    const auto ev = eigenvalues(polaron_hamiltonian({1.0, 0.0, 0.5, 0.3, 1.0}, b));
    const double want[] = {-0.55, 0.05, 0.45, 1.05};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev(i), want[i], 1e-10);
}

TEST(Polaron, SpectrumMatchesLabFrame) {
    const ModelParams p{1.0, 0.5, 0.8, 0.4, 1.0};
    TruncatedBasis b(120);
    const auto lab = eigenvalues(build_hamiltonian(p, b));
    const auto pol = eigenvalues(polaron_hamiltonian(p, b));
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(lab(i), pol(i), 1e-8);
}

TEST(Polaron, IdentityAtZeroCoupling) {
    TruncatedBasis b(8);
    const ModelParams p{1.0, 0.5, 0.0, 0.3, 1.0};
    EXPECT_EQ(max_abs(polaron_hamiltonian(p, b).matrix() - build_hamiltonian(p, b).matrix()), 0.0);
    EXPECT_THROW(polaron_hamiltonian({1.0, 0.5, 0.2, 0.0, 0.0}, b), std::invalid_argument);
}

// Same operator assembled from ladder and Pauli products.
TEST(Hamiltonian, MatchesOperatorProductForm) {
    using namespace std::complex_literals;
    const TruncatedBasis basis(12);
    const auto [a, ad] = build_ladder_operators(basis);
    const Matrix x = qubit_operator(basis, Pauli::X);
    const Matrix y = qubit_operator(basis, Pauli::Y);
    const Matrix z = qubit_operator(basis, Pauli::Z);
    for (double xi : {0.0, 0.3, 1.0}) {
        ModelParams p;
        p.delta = 0.7;
        p.g = 0.45;
        p.epsilon = -0.2;
        p.xi = xi;
        const Matrix expected = p.omega * (ad * a) + p.delta * z + p.epsilon * x +
                                0.5 * p.g * (1.0 + xi) * ((a + ad) * x) +
                                0.5 * p.g * (1.0 - xi) * ((a - ad) * (1i * y));
        EXPECT_LT((build_hamiltonian(p, basis).matrix() - expected).cwiseAbs().maxCoeff(), 1e-14)
            << "xi " << xi;
    }
}
