// spectral.hpp: dense Hermitian diagonalization, truncation convergence and
// parity labelling of eigenstates.

#pragma once

#include "aqrm/linalg.hpp"
#include "aqrm/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace aqrm {

enum class Parity : int { Odd = -1, Unlabeled = 0, Even = 1 };

struct EigenSolution {
    RealVector energies;          // ascending
    Matrix states;                // column k belongs to energies(k)
    std::vector<bool> converged;  // all true until a convergence check runs
    std::vector<Parity> parity;   // Unlabeled unless a parity operator was applied

    Index size() const { return energies.size(); }
    Vector state(Index k) const { return states.col(k); }
};

// Full dense eigendecomposition.
//
// Energies ascend; levels that coincide to within a relative 1e-9 of the
// spectral radius are rotated so that, for joint boson-qubit operators, each
// degenerate cluster is diagonal in Lambda and then in Z, and ordered by
// ascending <Lambda>, then ascending <Z>. The phase of every eigenvector is
// fixed by making its largest-magnitude coefficient real and positive.
//
// Throws std::runtime_error if the solver fails or a residual
// |Hv - Ev|_inf exceeds 1e-9 |H|_inf.
EigenSolution diagonalize(const HermitianOperator& h);

struct ConvergenceCriterion {
    std::optional<int> tail_levels;  // default max(2, ceil(n_max / 10))
    double tol{1e-6};

    int resolved_tail_levels(int n_max) const;
};

// Probability weight of the top `tail_levels` Fock layers (both spins).
double tail_weight(const Vector& state, const TruncatedBasis& basis, int tail_levels);

bool check_convergence(const Vector& state, const TruncatedBasis& basis,
                       const ConvergenceCriterion& criterion = {});

// +1/-1 when |<Pi>| > 1 - 1e-6, Unlabeled otherwise.
Parity parity_label(const Vector& state, const HermitianOperator& parity);

void label_convergence(EigenSolution& solution, const TruncatedBasis& basis,
                       const ConvergenceCriterion& criterion = {});
void label_parity(EigenSolution& solution, const HermitianOperator& parity);

struct TruncationPolicy {
    bool adaptive{true};
    int fixed_n_max{60};
    int start{40};
    int cap{400};
};

struct SolvedModel {
    ModelParams params;
    TruncatedBasis basis;
    EigenSolution solution;
};

// Decides which eigenstates must converge at the current truncation.
using ConvergenceTarget = std::function<std::vector<Index>(const EigenSolution&)>;

// Diagonalizes the Hamiltonian, labelling convergence and parity. Under an
// adaptive policy n_max starts at `start` and doubles (capped at `cap`) until
// every index returned by `target` is converged.
SolvedModel solve_model(const ModelParams& params, const TruncationPolicy& policy,
                        const ConvergenceTarget& target,
                        const ConvergenceCriterion& criterion = {});

}  // namespace aqrm
