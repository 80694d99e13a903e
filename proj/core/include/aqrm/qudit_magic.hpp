// qudit_magic.hpp: discrete phase-space magic quantifiers.
//
// Conventions: tau = -exp(i pi / d), Z = sum_j tau^{2j}|j><j|, X = sum_j |j+1><j|,
// D(k,l) = tau^{kl} X^k Z^l. Mana is in bits (log2), entropy in nats (ln).

#pragma once

#include "aqrm/linalg.hpp"
#include "aqrm/reduction.hpp"

#include <array>

namespace aqrm {

enum class WignerKernel {
    Marchiolli,        // qubit default: W(k,l) = [1 + (-1)^l X + (-1)^{k+l+1} Y + (-1)^k Z] / 2
    Wootters,          // qubit: Y sign (-1)^{k+l}
    PhasePointOperator // odd prime d: A(k,l) = D(k,l) P D(k,l)^dagger
};

// Quasi-probabilities indexed by (k, l) in Z_d x Z_d. Entries sum to one.
class DiscreteWignerTable {
public:
    DiscreteWignerTable(RealMatrix values, WignerKernel kernel);

    int d() const { return static_cast<int>(values_.rows()); }
    double operator()(int k, int l) const { return values_(k, l); }
    const RealMatrix& values() const { return values_; }
    WignerKernel kernel() const { return kernel_; }
    double sum() const { return values_.sum(); }

private:
    RealMatrix values_;
    WignerKernel kernel_;
};

Matrix clock_operator(int d);
Matrix shift_operator(int d);
Matrix heisenberg_weyl(int d, int k, int l);
// P = (1/d) sum_{k,l} D(k,l); the parity |j> -> |-j> for odd d.
Matrix discrete_parity(int d);

// values(k,l) = tr(rho W(k,l)) / 2.
DiscreteWignerTable discrete_wigner_qubit(const QubitDensity& rho,
                                          WignerKernel kernel = WignerKernel::Marchiolli);

// values(k,l) = tr(rho A(k,l)) / d, d an odd prime.
DiscreteWignerTable discrete_wigner_qudit(const Matrix& rho, int d);

// Entries in (-1e-14, 0) count as zero.
double sum_negativity(const DiscreteWignerTable& table);
// log2(2 sn + 1).
double mana(const DiscreteWignerTable& table);

// sum_{k,l in Z_2} |tr(rho D(k,l))|.
double dai_fu_luo(const QubitDensity& rho);

// -sum lambda ln lambda, with 0 ln 0 = 0.
double von_neumann_entropy(const Matrix& rho);
double von_neumann_entropy(const QubitDensity& rho);
double von_neumann_entropy(const BosonDensity& rho);

struct WitnessEntropyRelation {
    double witness;       // M
    double entropy_form;  // 1 - dS/d|s| = 1 + artanh|s|
    double cubic_bound;   // |s|^3

    double gap() const { return std::abs(witness - entropy_form); }
};

// For states with s_x = s_y = 0; throws if |s_x| + |s_y| > 1e-8.
WitnessEntropyRelation witness_entropy_relation(const QubitDensity& rho);

struct ReferenceStates {
    std::array<Eigen::Matrix2cd, 4> h_states;  // (+-1, 0, +-1)/sqrt2 in the x-z plane
    Eigen::Matrix2cd t_state;                  // (1, 1, 1)/sqrt3
};

ReferenceStates reference_states();

// mana of |H><H| under the Marchiolli kernel.
double mana_h_state();

struct MagicReport {
    double mana{0.0};
    double sum_negativity{0.0};
    double dai_fu_luo{1.0};
    double entropy{0.0};
    BlochVector bloch;

    bool is_magic_witnessed() const { return dai_fu_luo > 2.0; }
};

MagicReport qubit_magic_report(const QubitDensity& rho,
                               WignerKernel kernel = WignerKernel::Marchiolli);

}  // namespace aqrm
