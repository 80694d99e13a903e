// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "aqrm/config.hpp"
#include "aqrm/cv_magic.hpp"
#include "aqrm/qudit_magic.hpp"
#include "aqrm/reduction.hpp"
#include "aqrm/spectral.hpp"
#include "aqrm/sweep.hpp"

#include "oracles.hpp"

#include <boost/math/tools/minima.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace aqrm;

namespace {

struct Outcome {
    bool pass{true};
    std::ostringstream detail;
    std::string failed;

    void check(bool ok, const std::string& what) {
        if (!ok) failed += (failed.empty() ? "" : ", ") + what;
        pass = pass && ok;
    }
};

std::string fmt(const char* f, double a) {
    char b[96];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

std::string fmt(const char* f, double a, double c) {
    char b[128];
    std::snprintf(b, sizeof b, f, a, c);
    return b;
}

const double kManaH = 0.271553;

std::vector<Index> first(const EigenSolution& s, Index n) {
    std::vector<Index> v;
    for (Index k = 0; k < std::min(n, s.size()); ++k) v.push_back(k);
    return v;
}

SolvedModel solve_low(const ModelParams& p, Index states) {
    return solve_model(p, {}, [states](const EigenSolution& s) { return first(s, states); });
}

MagicReport qubit_report(const SolvedModel& m, Index k) {
    return qubit_magic_report(trace_out_boson(m.solution.state(k), m.basis));
}

double lambda_of(const SolvedModel& m, Index k) {
    const Matrix lam = build_excitation_number(m.basis).matrix();
    return (m.solution.state(k).adjoint() * lam * m.solution.state(k))(0).real();
}

BosonDensity fock(int n) {
    Matrix r = Matrix::Zero(12, 12);
    r(n, n) = 1.0;
    return BosonDensity(r);
}

// 1
void golden(Outcome& o) {
    const auto refs = reference_states();
    const double m = mana_h_state();
    const double mh = dai_fu_luo(QubitDensity(refs.h_states[0]));
    const double mt = dai_fu_luo(QubitDensity(refs.t_state));
    const double s = von_neumann_entropy(QubitDensity(0.5 * Eigen::Matrix2cd::Identity()));
    o.check(std::abs(m - kManaH) <= 1e-6, "mana_H");
    o.check(std::abs(mh - (1 + std::sqrt(2.0))) <= 1e-12, "M(H)");
    o.check(std::abs(mt - (1 + std::sqrt(3.0))) <= 1e-12, "M(T)");
    o.check(std::abs(s - std::log(2.0)) <= 1e-12, "S(1/2)");
    o.detail << fmt("mana_H=%.9f M(H)-1-sqrt2=%.1e", m, mh - 1 - std::sqrt(2.0))
             << fmt(" M(T)-1-sqrt3=%.1e S-ln2=%.1e", mt - 1 - std::sqrt(3.0), s - std::log(2.0));
}

// 2
void bosonic_calibration(Outcome& o) {
    const double coarse = bosonic_mana(fock(1)).mana_bos;
    GridOptions half;
    half.spacing = 0.025;
    const double fine = bosonic_mana(fock(1), half).mana_bos;
    const double exact = oracle::fock1_negativity_closed_form();
    o.check(std::abs(coarse - 0.512) <= 0.005, "default grid");
    o.check(std::abs(fine - exact) <= 1e-4, "half spacing");
    o.detail << fmt("default=%.6f half=%.8f", coarse, fine) << fmt(" analytic=%.8f", exact);
}

// 3
void jc_null(Outcome& o) {
    double worst_mana = 0, worst_m = 0, worst_s = 0;
    int states = 0;
    for (double g : {0.1, 0.25, 1.0}) {
        TruncatedBasis b(120);
        EigenSolution s = diagonalize(build_hamiltonian({1.0, 0.5, g, 0.0, 0.0}, b));
        label_convergence(s, b);
        const SolvedModel m{{1.0, 0.5, g, 0.0, 0.0}, b, s};
        for (Index k = 0; k < s.size(); ++k) {
            if (!s.converged[k]) continue;
            ++states;
            const MagicReport r = qubit_report(m, k);
            worst_mana = std::max(worst_mana, r.mana);
            if (lambda_of(m, k) < 0.5) continue;  // |0,down> singlet
            worst_m = std::max(worst_m, std::abs(r.dai_fu_luo - 1));
            worst_s = std::max(worst_s, std::abs(r.entropy - std::log(2.0)));
        }
    }
    o.check(worst_mana <= 1e-10, "mana");
    o.check(worst_m <= 1e-8, "|M-1|");
    o.check(worst_s <= 1e-8, "|S-ln2|");
    o.detail << states << " converged states; max mana=" << worst_mana << " max|M-1|=" << worst_m
             << " max|S-ln2|=" << worst_s << " (Lambda>=1 for M,S)";
}

// 4
void rabi_null(Outcome& o) {
    double worst_mana = 0, worst_xy = 0;
    int states = 0;
    for (int i = 0; i <= 10; ++i) {
        const double g = 0.1 * i;
        TruncatedBasis b(120);
        EigenSolution s = diagonalize(build_hamiltonian({1.0, 0.5, g, 0.0, 1.0}, b));
        label_convergence(s, b);
        const SolvedModel m{{1.0, 0.5, g, 0.0, 1.0}, b, s};
        for (Index k = 0; k < s.size(); ++k) {
            if (!s.converged[k]) continue;
            ++states;
            const MagicReport r = qubit_report(m, k);
            worst_mana = std::max(worst_mana, r.mana);
            worst_xy = std::max({worst_xy, std::abs(r.bloch.x), std::abs(r.bloch.y)});
        }
    }
    o.check(worst_mana <= 1e-10, "mana");
    o.check(worst_xy <= 1e-8, "s_x, s_y");
    o.detail << states << " converged states over g in [0,1]; max mana=" << worst_mana
             << " max|s_x|,|s_y|=" << worst_xy;
}

// 5
void weak_coupling_ground(Outcome& o) {
    const SolvedModel m = solve_low({1.0, 0.5, 0.1, 0.5, 1.0}, 1);
    const MagicReport r = qubit_report(m, 0);
    const double mref = 1 + std::sqrt(2.0);
    o.check(std::abs(r.dai_fu_luo - mref) <= 0.02 * mref, "M");
    o.check(std::abs(r.mana - kManaH) <= 0.05 * kManaH, "mana");
    o.detail << fmt("M=%.6f (%.3f%% off)", r.dai_fu_luo, 100 * std::abs(r.dai_fu_luo - mref) / mref)
             << fmt(" mana=%.6f (%.3f%% off)", r.mana, 100 * std::abs(r.mana - kManaH) / kManaH);
}

// 6
void usc_suppression(Outcome& o) {
    const SolvedModel m = solve_low({1.0, 0.5, 1.0, 0.5, 1.0}, 1);
    const double ratio = qubit_report(m, 0).mana / kManaH;
    o.check(std::abs(ratio - 0.54) <= 0.05, "ratio");
    o.detail << fmt("mana/mana_H=%.4f (n_max=%.0f)", ratio, m.basis.n_max());
}

// 7
void detuning_map(Outcome& o) {
    const double delta = ModelParams::delta_from_detuning(1.0, -1.0);
    auto ground_mana = [delta](double eps) {
        return qubit_report(solve_low({1.0, delta, 1.0, eps, 1.0}, 1), 0).mana;
    };
    double best_eps = 0, best = -1;
    for (int i = -100; i <= 100; ++i) {
        const double eps = 0.02 * i;
        const double v = ground_mana(eps);
        if (v > best) {
            best = v;
            best_eps = eps;
        }
    }
    const auto r = boost::math::tools::brent_find_minima([&](double e) { return -ground_mana(e); },
                                                         best_eps - 0.02, best_eps + 0.02, 40);
    best = std::max(best, -r.second);
    const double ratio = best / kManaH;
    o.check(std::abs(ratio - 0.77) <= 0.05, "ratio");
    o.detail << fmt("max over eps in [-2,2]: mana/mana_H=%.4f at eps=%.4f", ratio, r.first);
}

// 8
void fork_feature(Outcome& o) {
    double worst_zero = 0, worst_side = 1e9;
    std::string where_zero = "all points", where_side;
    for (double g : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
        for (double eps : {-0.5, 0.0, 0.5}) {
            const double v = qubit_report(solve_low({1.0, 0.5, g, eps, 1.0}, 2), 1).mana;
            if (v > worst_zero) {
                worst_zero = v;
                where_zero = fmt("g=%.1f eps=%.1f", g, eps);
            }
        }
        for (double eps : {-0.6, 0.6}) {
            const double v = qubit_report(solve_low({1.0, 0.5, g, eps, 1.0}, 2), 1).mana;
            if (v < worst_side) {
                worst_side = v;
                where_side = fmt("g=%.1f eps=%.1f", g, eps);
            }
        }
    }
    o.check(worst_zero <= 0.01, "mana on 2eps in {-1,0,1}");
    o.check(worst_side > 0.05, "mana at 2eps=+-1.2");
    o.detail << fmt("g in {0.5..1.0}: max on fork lines=%.4f", worst_zero) << " (" << where_zero
             << fmt("), min at |2eps|=1.2: %.4f", worst_side) << " (" << where_side << ")";
}

// 9
void bosonic_ground(Outcome& o) {
    nlohmann::json d = {{"mode", "parameter-map"},
                        {"params", {{"xi", 1.0}}},
                        {"axes",
                         {{{"name", "epsilon"}, {"min", -1.0}, {"max", 1.0}, {"count", 21}},
                          {{"name", "g"}, {"min", 0.0}, {"max", 1.0}, {"count", 21}}}},
                        {"states", {{"indices", {0}}}}};
    const ResultTable t = run_parameter_map(parse_sweep_config(d));
    double worst = 0;
    std::string where;
    std::size_t missing = 0;
    for (const ResultRecord& r : t.rows) {
        if (!r.mana_bos) {
            ++missing;
            continue;
        }
        if (*r.mana_bos > worst) {
            worst = *r.mana_bos;
            where = fmt("g=%.2f eps=%.2f", r.params.g, r.params.epsilon);
        }
    }
    o.check(t.rows.size() == 441 && t.failures.empty() && missing == 0, "grid complete");
    o.check(worst <= 0.02, "mana_bos");
    o.detail << "21x21 (eps,g) grid: max ground mana_bos=" << worst << " at " << where;
}

// 10
void bosonic_first_excited(Outcome& o) {
    double worst = 0;
    std::string where;
    int bad = 0, total = 0;
    for (double g : {0.0, 0.05, 0.1, 0.15, 0.2}) {
        for (double eps : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
            const SolvedModel m = solve_low({1.0, 0.5, g, eps, 1.0}, 2);
            const double v =
                bosonic_mana(trace_out_qubit(m.solution.state(1), m.basis)).mana_bos;
            const double dev = std::abs(v - 0.512) / 0.512;
            ++total;
            if (dev > 0.15) ++bad;
            if (dev > worst) {
                worst = dev;
                where = fmt("g=%.2f eps=%.2f", g, eps) + fmt(" mana_bos=%.4f", v);
            }
        }
    }
    o.check(bad == 0, "within 15% of 0.512");
    o.detail << bad << "/" << total << " points outside; worst " << fmt("%.1f%%", 100 * worst) << " at "
             << where;
}

// 11
void oracle_equivalences(Outcome& o) {
    // (a)
    double worst_a = 0;
    for (double delta : {0.5, 0.37}) {
        for (double g : {0.1, 0.25, 1.0}) {
            const ModelParams p{1.0, delta, g, 0.0, 0.0};
            TruncatedBasis b(40);
            const EigenSolution s = diagonalize(build_hamiltonian(p, b));
            for (int lam = 1; lam <= 10; ++lam) {
                const JcDoublet d = jc_doublet_oracle(p, lam);
                const auto [lo, hi] = oracle::jc_block(p.omega, p.delta, p.g, lam);
                worst_a = std::max({worst_a, std::abs(d.lower - lo), std::abs(d.upper - hi)});
                for (double e : {d.lower, d.upper}) {
                    worst_a = std::max(worst_a, (s.energies.array() - e).abs().minCoeff());
                }
            }
        }
    }
    // (b)
    double worst_b = 0;
    for (double eps : {0.0, 0.5}) {
        const ModelParams p{1.0, 0.5, 1.0, eps, 1.0};
        TruncatedBasis b(160);
        EigenSolution lab = diagonalize(build_hamiltonian(p, b));
        label_convergence(lab, b);
        const EigenSolution pol = diagonalize(polaron_hamiltonian(p, b));
        for (Index k = 0; k < 10; ++k) {
            if (!lab.converged[k]) worst_b = 1;
            worst_b = std::max(worst_b, std::abs(lab.energies(k) - pol.energies(k)));
        }
    }
    // (c)
    double worst_c = 0;
    const PhaseSpaceGrid grid = PhaseSpaceGrid::with_spacing(9.0, 9.0, 0.05);
    for (int n = 0; n <= 10; ++n) {
        const RealMatrix w = wigner_of_density(fock(n), grid).samples();
        worst_c = std::max(worst_c, (w - fock_wigner_closed_form(n, grid)).cwiseAbs().maxCoeff());
    }
    // (d)
    double worst_d = 0;
    for (double a = 0; a < 2 * M_PI; a += 0.05) {
        for (double r : {0.3, 0.8, 1.0}) {
            const QubitDensity q(density_from_bloch({r * std::cos(a), 0.0, r * std::sin(a)}));
            worst_d = std::max(worst_d, (discrete_wigner_qubit(q, WignerKernel::Marchiolli).values() -
                                         discrete_wigner_qubit(q, WignerKernel::Wootters).values())
                                            .cwiseAbs()
                                            .maxCoeff());
        }
    }
    {
        const SolvedModel m = solve_low({1.0, 0.5, 0.6, 0.4, 1.0}, 10);
        for (Index k = 0; k < 10; ++k) {
            const QubitDensity q = trace_out_boson(m.solution.state(k), m.basis);
            worst_d = std::max(worst_d, (discrete_wigner_qubit(q, WignerKernel::Marchiolli).values() -
                                         discrete_wigner_qubit(q, WignerKernel::Wootters).values())
                                            .cwiseAbs()
                                            .maxCoeff());
        }
    }
    o.check(worst_a <= 1e-10, "(a) JC");
    o.check(worst_b <= 1e-8, "(b) polaron");
    o.check(worst_c <= 1e-8, "(c) Fock Wigner");
    o.check(worst_d <= 1e-12, "(d) kernels");
    o.detail << "(a) " << worst_a << " (b) " << worst_b << " (c) " << worst_c << " (d) " << worst_d;
}

// 12
void property_suites(Outcome& o) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1, 1);
    double dfl = 0, table_sum = 0, field = 0;
    for (int i = 0; i < 2000; ++i) {
        double x = u(rng), y = u(rng), z = u(rng);
        const double n = std::sqrt(x * x + y * y + z * z);
        if (n > 1) { x /= n; y /= n; z /= n; }
        const QubitDensity q(density_from_bloch({x, y, z}));
        dfl = std::max(dfl, std::abs(dai_fu_luo(q) - 1 - std::abs(x) - std::abs(y) - std::abs(z)));
        table_sum = std::max(table_sum, std::abs(discrete_wigner_qubit(q).sum() - 1));
    }
    bool witness = true;
    for (double s = 0; s <= 0.5 + 1e-12; s += 0.005) {
        const auto r = witness_entropy_relation(QubitDensity(density_from_bloch({0, 0, s})));
        witness = witness && r.gap() <= r.cubic_bound + 1e-15;
    }
    double trace_defect = 0, schmidt = 0, psd = 0;
    for (int i = 0; i < 1000; ++i) {
        TruncatedBasis b(1 + i % 15);
        const Vector psi = oracle::random_state(rng, b.dim());
        const QubitDensity q = trace_out_boson(psi, b);
        const BosonDensity r = trace_out_qubit(psi, b);
        trace_defect = std::max({trace_defect, std::abs(q.matrix().trace().real() - 1),
                                 std::abs(r.matrix().trace().real() - 1), hermiticity_defect(q.matrix()),
                                 hermiticity_defect(r.matrix())});
        psd = std::min({psd, q.eigenvalues().minCoeff(), r.eigenvalues().minCoeff()});
        RealVector e = r.eigenvalues();
        std::sort(e.data(), e.data() + e.size(), std::greater<>());
        schmidt = std::max({schmidt, std::abs(e(0) - q.eigenvalues().maxCoeff()),
                            std::abs(e(1) - q.eigenvalues().minCoeff())});
        if (i % 100 == 0) {
            GridOptions opt;
            opt.spacing = 0.1;
            field = std::max(field, std::abs(wigner_of_density(r, grid_for_density(r, opt)).integral() - 1));
        }
    }
    // epsilon-sign symmetry of qubit mana on a small xi = 1 map
    nlohmann::json d = {{"mode", "parameter-map"},
                        {"params", {{"xi", 1.0}}},
                        {"axes",
                         {{{"name", "epsilon"}, {"min", -1.0}, {"max", 1.0}, {"count", 11}},
                          {{"name", "g"}, {"min", 0.0}, {"max", 1.0}, {"count", 6}}}},
                        {"wigner", {{"enabled", false}}}};
    const ResultTable t = run_parameter_map(parse_sweep_config(d));
    double sym = 0;
    for (const ResultRecord& r : t.rows) {
        const std::size_t ie = r.point / 6, ig = r.point % 6;
        const ResultRecord& m = t.rows[((10 - ie) * 6 + ig) * 2 + r.state];
        sym = std::max({sym, std::abs(*m.mana - *r.mana), std::abs(*m.dai_fu_luo - *r.dai_fu_luo)});
    }
    o.check(dfl <= 1e-12, "DFL identity");
    o.check(witness, "witness-entropy gap");
    o.check(trace_defect <= 1e-10 && psd >= -1e-10 && schmidt <= 1e-10, "partial traces");
    o.check(table_sum <= 1e-12 && field <= 1e-8, "normalizations");
    o.check(sym <= 1e-8, "eps symmetry");
    o.detail << "dfl " << dfl << ", traces " << trace_defect << ", min eig " << psd << ", schmidt "
             << schmidt << ", table " << table_sum << ", field " << field << ", eps-sym " << sym;
}

// 13
void fock_ordering(Outcome& o) {
    double last = -1, worst = 0;
    bool increasing = true;
    for (int n = 0; n <= 4; ++n) {
        const double v = bosonic_mana(fock(n)).mana_bos;
        increasing = increasing && v > last;
        last = v;
        worst = std::max(worst, std::abs(v - oracle::fock_negativity(n)));
        o.detail << "n=" << n << ":" << fmt("%.5f ", v);
    }
    o.check(increasing, "strictly increasing");
    o.check(worst <= 1e-3, "oracle agreement");
    o.detail << fmt("max |grid - quadrature|=%.2e", worst);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"golden numbers", golden},
        {"bosonic calibration", bosonic_calibration},
        {"resonant JC null result", jc_null},
        {"symmetric QRM null result", rabi_null},
        {"weak-coupling magic ground state", weak_coupling_ground},
        {"USC suppression", usc_suppression},
        {"detuning map maximum", detuning_map},
        {"fork feature", fork_feature},
        {"bosonic ground state", bosonic_ground},
        {"bosonic first excited state", bosonic_first_excited},
        {"oracle equivalences", oracle_equivalences},
        {"property suites", property_suites},
        {"Fock negativity ordering", fock_ordering},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += o.pass ? 0 : 1;
        std::string text = o.detail.str();
        if (!o.failed.empty()) text += " | failed: " + o.failed;
        std::printf("%s %2zu %-34s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), text.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
