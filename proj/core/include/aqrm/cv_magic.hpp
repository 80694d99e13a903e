// cv_magic.hpp: continuous Wigner function of boson-reduced states and the
// Wigner logarithmic negativity ("bosonic mana").
//
// Phase space uses r^2 = q^2 + p^2 with the Fock Wigner function
// W_n = (-1)^n / pi exp(-r^2) L_n(2 r^2), so that int W dq dp = 1.

#pragma once

#include "aqrm/linalg.hpp"
#include "aqrm/reduction.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace aqrm {

inline constexpr int kMaxFockIndex = 1000;

// Symmetric rectangular grid: q_i = -q_max + i dq, dq = 2 q_max / (n_q - 1).
class PhaseSpaceGrid {
public:
    PhaseSpaceGrid(double q_max, double p_max, int n_q, int n_p);

    // Smallest odd sample count whose spacing does not exceed `spacing`.
    static PhaseSpaceGrid with_spacing(double q_max, double p_max, double spacing);

    double q_max() const { return q_max_; }
    double p_max() const { return p_max_; }
    int n_q() const { return n_q_; }
    int n_p() const { return n_p_; }
    double dq() const { return 2.0 * q_max_ / (n_q_ - 1); }
    double dp() const { return 2.0 * p_max_ / (n_p_ - 1); }
    double q(int i) const { return -q_max_ + i * dq(); }
    double p(int j) const { return -p_max_ + j * dp(); }
    double cell_area() const { return dq() * dp(); }

private:
    double q_max_, p_max_;
    int n_q_, n_p_;
};

struct GridOptions {
    double spacing{0.05};
    double margin{4.0};
    double weight_cutoff{1e-8};      // sets n_eff and hence the extent
    double assembly_cutoff{1e-14};   // Fock tail dropped from the field sum
    std::optional<double> extent;    // overrides q_max = p_max
};

// Smallest n with sum_{k<=n} rho_kk >= 1 - weight_cutoff.
int effective_fock_cutoff(const BosonDensity& rho, double weight_cutoff);

// q_max = p_max = sqrt(2 n_eff + 1) + margin unless an extent is given.
PhaseSpaceGrid grid_for_density(const BosonDensity& rho, const GridOptions& options = {});

enum class FieldNormalization { Raw, Renormalized };

// samples(i, j) = W(q_i, p_j).
class WignerField {
public:
    WignerField(PhaseSpaceGrid grid, RealMatrix samples, FieldNormalization normalization,
                double raw_integral);

    const PhaseSpaceGrid& grid() const { return grid_; }
    const RealMatrix& samples() const { return samples_; }
    FieldNormalization normalization() const { return normalization_; }
    // Integral of the assembled field before renormalization.
    double raw_integral() const { return raw_integral_; }

    double integral() const;
    double abs_integral() const;

private:
    PhaseSpaceGrid grid_;
    RealMatrix samples_;
    FieldNormalization normalization_;
    double raw_integral_;
};

// Normalized Laguerre functions sqrt(n!/(n+m)!) x^{m/2} e^{-x/2} L_n^{(m)}(x)
// for n = 0..out.size()-1, by upward three-term recurrence with a running
// log scale.
void normalized_laguerre_functions(int m, double x, Eigen::Ref<RealVector> out);

// Weyl symbol of |n><n'| with the 1/(4 pi) prefactor of the transition
// formula: ((-1)^min / 4pi) sqrt(min!/max!) (2r^2)^{|n'-n|/2} e^{-r^2}
// L_min^{|n'-n|}(2r^2) e^{i(n'-n)phi}.
Eigen::MatrixXcd wigner_transition(int n, int n_prime, const PhaseSpaceGrid& grid);

// (-1)^n / pi e^{-r^2} L_n(2 r^2) sampled on the grid.
RealMatrix fock_wigner_closed_form(int n, const PhaseSpaceGrid& grid);

// W = sum rho_{nn'} W_{|n><n'|}, renormalized to unit integral. Fock indices
// above `max_fock` (default: all) are dropped. Throws if the imaginary
// residue exceeds 1e-9.
WignerField wigner_of_density(const BosonDensity& rho, const PhaseSpaceGrid& grid,
                              std::optional<int> max_fock = std::nullopt);

struct NegativityResult {
    double mana_bos{0.0};
    double abs_integral{1.0};      // integral of |W| (renormalized field)
    double raw_abs_integral{1.0};  // same, before renormalization
    double edge_fraction{0.0};     // |W| mass in the outer 5% frame
    bool extent_warning{false};    // edge_fraction > 1%
};

// log2 of the integrated |W|; requires a renormalized field.
NegativityResult wigner_log_negativity(const WignerField& field);

// grid_for_density + wigner_of_density + wigner_log_negativity.
NegativityResult bosonic_mana(const BosonDensity& rho, const GridOptions& options = {});

// Export: CSV matrix (rows p_j, columns q_i) after '#' header lines, or a
// little-endian binary blob with the same geometry header.
void write_wigner_csv(const WignerField& field, std::ostream& out);
void write_wigner_binary(const WignerField& field, std::ostream& out);
WignerField read_wigner_binary(std::istream& in);

}  // namespace aqrm
