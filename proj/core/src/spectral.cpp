#include "aqrm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aqrm {

namespace {

constexpr double kDegeneracyTol = 1e-9;
constexpr double kResidualTol = 1e-9;
constexpr double kParityTol = 1e-6;

double infinity_norm(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

// Rotates the columns `cols` of `states` so that `op` restricted to their span
// is diagonal; returns the restricted eigenvalues in the new column order.
RealVector diagonalize_within(Matrix& states, Index first, Index count, const Matrix& op) {
    const Matrix block = states.middleCols(first, count);
    const Matrix restricted = hermitian_part(block.adjoint() * op * block);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(restricted);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: degenerate-subspace rotation failed");
    }
    states.middleCols(first, count) = block * solver.eigenvectors();
    return solver.eigenvalues();
}

void fix_phase(Eigen::Ref<Vector> v) {
    const Eigen::VectorXd mags = v.cwiseAbs();
    const double peak = mags.maxCoeff();
    Index pick = 0;
    for (Index i = 0; i < mags.size(); ++i) {
        if (mags(i) >= peak * (1.0 - 1e-9)) {
            pick = i;
            break;
        }
    }
    const Complex c = v(pick);
    v *= std::conj(c) / std::abs(c);
}

}  // namespace

EigenSolution diagonalize(const HermitianOperator& h) {
    const Matrix& m = h.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: eigensolver did not converge");
    }
    EigenSolution out;
    out.energies = solver.eigenvalues();
    out.states = solver.eigenvectors();
    const Index n = out.energies.size();
    const double scale = std::max(1.0, infinity_norm(m));

    if (h.kind() == BasisKind::Joint) {
        const TruncatedBasis basis = h.basis();
        const Matrix lambda = build_excitation_number(basis).matrix();
        const Matrix z = qubit_operator(basis, Pauli::Z);
        // Sort keys, refreshed per cluster.
        std::vector<double> lam_key(static_cast<std::size_t>(n), 0.0);
        std::vector<double> z_key(static_cast<std::size_t>(n), 0.0);

        Index start = 0;
        while (start < n) {
            Index stop = start + 1;
            while (stop < n && out.energies(stop) - out.energies(stop - 1) <= kDegeneracyTol * scale) {
                ++stop;
            }
            const Index count = stop - start;
            if (count > 1) {
                const RealVector lam = diagonalize_within(out.states, start, count, lambda);
                // Sub-clusters sharing <Lambda> are resolved in Z.
                Index s = 0;
                while (s < count) {
                    Index e = s + 1;
                    while (e < count && lam(e) - lam(e - 1) <= 1e-8) ++e;
                    if (e - s > 1) {
                        diagonalize_within(out.states, start + s, e - s, z);
                    }
                    s = e;
                }
                const double mean = out.energies.segment(start, count).mean();
                // Reorder the cluster by (<Lambda>, <Z>) and re-derive energies.
                std::vector<Index> order(static_cast<std::size_t>(count));
                std::iota(order.begin(), order.end(), Index{0});
                for (Index k = 0; k < count; ++k) {
                    const Vector v = out.states.col(start + k);
                    lam_key[static_cast<std::size_t>(start + k)] = v.dot(lambda * v).real();
                    z_key[static_cast<std::size_t>(start + k)] = v.dot(z * v).real();
                }
                std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
                    const auto ia = static_cast<std::size_t>(start + a);
                    const auto ib = static_cast<std::size_t>(start + b);
                    if (std::abs(lam_key[ia] - lam_key[ib]) > 1e-8) return lam_key[ia] < lam_key[ib];
                    return z_key[ia] < z_key[ib] - 1e-8;
                });
                const Matrix block = out.states.middleCols(start, count);
                for (Index k = 0; k < count; ++k) {
                    out.states.col(start + k) = block.col(order[static_cast<std::size_t>(k)]);
                    const Vector v = out.states.col(start + k);
                    // Rayleigh quotient keeps energies tied to their vectors.
                    const double e = v.dot(m * v).real();
                    out.energies(start + k) = std::abs(e - mean) <= kDegeneracyTol * scale ? e : mean;
                }
            }
            start = stop;
        }
    }

    for (Index k = 0; k < n; ++k) {
        fix_phase(out.states.col(k));
        const Vector residual = m * out.states.col(k) - out.energies(k) * out.states.col(k);
        if (residual.cwiseAbs().maxCoeff() > kResidualTol * scale) {
            throw std::runtime_error("diagonalize: eigenpair residual exceeds tolerance");
        }
    }
    out.converged.assign(static_cast<std::size_t>(n), true);
    out.parity.assign(static_cast<std::size_t>(n), Parity::Unlabeled);
    return out;
}

int ConvergenceCriterion::resolved_tail_levels(int n_max) const {
    if (tail_levels) {
        if (*tail_levels < 1) {
            throw std::invalid_argument("ConvergenceCriterion: tail_levels must be >= 1");
        }
        return std::min(*tail_levels, n_max + 1);
    }
    return std::min(std::max(2, (n_max + 9) / 10), n_max + 1);
}

double tail_weight(const Vector& state, const TruncatedBasis& basis, int tail_levels) {
    if (state.size() != basis.dim()) {
        throw std::invalid_argument("tail_weight: state dimension does not match basis");
    }
    const Index first = basis.index(std::max(0, basis.n_max() - tail_levels + 1), Spin::Up);
    return state.segment(first, basis.dim() - first).squaredNorm();
}

bool check_convergence(const Vector& state, const TruncatedBasis& basis,
                       const ConvergenceCriterion& criterion) {
    return tail_weight(state, basis, criterion.resolved_tail_levels(basis.n_max())) <= criterion.tol;
}

Parity parity_label(const Vector& state, const HermitianOperator& parity) {
    if (state.size() != parity.dim()) {
        throw std::invalid_argument("parity_label: dimension mismatch");
    }
    const double expectation = state.dot(parity.matrix() * state).real() / state.squaredNorm();
    if (std::abs(expectation) <= 1.0 - kParityTol) return Parity::Unlabeled;
    return expectation > 0.0 ? Parity::Even : Parity::Odd;
}

void label_convergence(EigenSolution& solution, const TruncatedBasis& basis,
                       const ConvergenceCriterion& criterion) {
    solution.converged.resize(static_cast<std::size_t>(solution.size()));
    for (Index k = 0; k < solution.size(); ++k) {
        solution.converged[static_cast<std::size_t>(k)] =
            check_convergence(solution.states.col(k), basis, criterion);
    }
}

void label_parity(EigenSolution& solution, const HermitianOperator& parity) {
    solution.parity.resize(static_cast<std::size_t>(solution.size()));
    for (Index k = 0; k < solution.size(); ++k) {
        solution.parity[static_cast<std::size_t>(k)] = parity_label(solution.states.col(k), parity);
    }
}

SolvedModel solve_model(const ModelParams& params, const TruncationPolicy& policy,
                        const ConvergenceTarget& target, const ConvergenceCriterion& criterion) {
    params.validate();
    int n_max = policy.adaptive ? policy.start : policy.fixed_n_max;
    if (n_max < 1 || (policy.adaptive && policy.cap < policy.start)) {
        throw std::invalid_argument("solve_model: invalid truncation policy");
    }
    while (true) {
        TruncatedBasis basis(n_max);
        EigenSolution solution = diagonalize(build_hamiltonian(params, basis));
        label_convergence(solution, basis, criterion);
        label_parity(solution, build_parity(basis));

        bool done = !policy.adaptive || n_max >= policy.cap;
        if (!done) {
            const std::vector<Index> wanted = target ? target(solution) : std::vector<Index>{};
            done = std::all_of(wanted.begin(), wanted.end(), [&](Index k) {
                return k < solution.size() && solution.converged[static_cast<std::size_t>(k)];
            });
        }
        if (done) {
            return {params, basis, std::move(solution)};
        }
        n_max = std::min(2 * n_max, policy.cap);
    }
}

}  // namespace aqrm
