// model.hpp: Asymmetric quantum Rabi model in a truncated Fock (x) qubit basis.
//
// H = w a^dag a + Delta Z + (g/2) [ (1+xi)(a + a^dag) X + (1-xi)(a - a^dag) iY ] + eps X
//
// xi = 1 is the Rabi limit with coupling g (a + a^dag) X, xi = 0 the
// Jaynes-Cummings limit with coupling g (a s+ + a^dag s-). Energies are in
// the same units as omega.

#pragma once

#include "aqrm/linalg.hpp"

#include <stdexcept>
#include <string>

namespace aqrm {

struct ModelParams {
    double omega{1.0};    // boson frequency, > 0
    double delta{0.5};    // half qubit splitting (qubit frequency is 2 delta)
    double g{0.0};        // light-matter coupling
    double epsilon{0.0};  // bias along X
    double xi{1.0};       // anisotropy in [0, 1]; 0 = JC, 1 = Rabi

    // Throws std::invalid_argument when an invariant is violated.
    void validate() const;

    // Detuning w - 2 Delta.
    double detuning() const { return omega - 2.0 * delta; }
    static double delta_from_detuning(double omega, double detuning) {
        return 0.5 * (omega - detuning);
    }
};

enum class Spin { Up, Down };  // Up is s = +1/2 (Z = +1)

// Interleaved ordering: index(n, Up) = 2n, index(n, Down) = 2n + 1.
class TruncatedBasis {
public:
    explicit TruncatedBasis(int n_max);

    int n_max() const { return n_max_; }
    int boson_dim() const { return n_max_ + 1; }
    Index dim() const { return 2 * static_cast<Index>(n_max_ + 1); }

    Index index(int n, Spin s) const;
    int fock(Index i) const { return static_cast<int>(i / 2); }
    Spin spin(Index i) const { return (i % 2 == 0) ? Spin::Up : Spin::Down; }

    bool operator==(const TruncatedBasis&) const = default;

private:
    int n_max_;
};

enum class BasisKind { Joint, Qubit, Boson };

// Dense Hermitian matrix tagged with the space it acts on. Construction
// rejects matrices that are not Hermitian to within kHermitianTol.
class HermitianOperator {
public:
    HermitianOperator(Matrix entries, BasisKind kind, int n_max = 0);

    const Matrix& matrix() const { return entries_; }
    Index dim() const { return entries_.rows(); }
    BasisKind kind() const { return kind_; }
    // Fock cutoff of the joint/boson space; 0 for the qubit space.
    int n_max() const { return n_max_; }
    TruncatedBasis basis() const;

private:
    Matrix entries_;
    BasisKind kind_;
    int n_max_;
};

struct LadderOperators {
    Matrix annihilation;
    Matrix creation;
};

enum class Pauli { I, X, Y, Z };

Eigen::Matrix2cd pauli(Pauli p);

// Ladder operators on the joint space (identity on the qubit). a^dag|n_max>
// is dropped (hard truncation).
LadderOperators build_ladder_operators(const TruncatedBasis& basis);

// Boson-only ladder operators of dimension n_max + 1.
LadderOperators build_boson_ladder(int n_max);

// 1 (x) sigma on the joint space.
Matrix qubit_operator(const TruncatedBasis& basis, Pauli p);

HermitianOperator build_hamiltonian(const ModelParams& params, const TruncatedBasis& basis);

// Lambda = a^dag a + (Z + 1)/2; eigenvalue n + 1 on |n,Up>, n on |n,Down>.
HermitianOperator build_excitation_number(const TruncatedBasis& basis);

// Pi = exp(i pi Lambda), evaluated spectrally.
HermitianOperator build_parity(const TruncatedBasis& basis);

// max |[A, B]| over entries whose row and column both lie below the top
// `excluded_layers` Fock layers.
double commutator_max_abs(const Matrix& a, const Matrix& b, const TruncatedBasis& basis,
                          int excluded_layers = 2);

struct JcDoublet {
    double lower;
    double upper;
    double mixing_angle;  // tan(theta) = 2 g sqrt(Lambda) / (2 Delta - omega)
};

// Closed-form eigenvalues of the {|L-1,Up>, |L,Down>} block of the JC
// Hamiltonian (xi = 0, eps = 0 assumed for the block to decouple).
JcDoublet jc_doublet_oracle(const ModelParams& params, int excitations);

// U^dag H U with U = exp[-(g/w) X (a^dag - a)], built by exponentiating the
// displacement generator spectrally. Requires xi = 1.
HermitianOperator polaron_hamiltonian(const ModelParams& params, const TruncatedBasis& basis);

}  // namespace aqrm
