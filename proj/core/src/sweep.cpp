#include "aqrm/sweep.hpp"

#include "aqrm/cv_magic.hpp"
#include "aqrm/qudit_magic.hpp"
#include "aqrm/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace aqrm {

std::vector<Index> select_states(const StateSelection& sel, const EigenSolution& sol, double omega) {
    std::vector<Index> out;
    switch (sel.kind) {
        case StateSelection::Kind::Lowest:
            for (Index k = 0; k < std::min<Index>(sel.lowest, sol.size()); ++k) out.push_back(k);
            break;
        case StateSelection::Kind::Indices:
            for (int k : sel.indices) {
                if (k < sol.size()) out.push_back(k);
            }
            break;
        case StateSelection::Kind::EnergyWindow:
            for (Index k = 0; k < sol.size(); ++k) {
                const double e = sol.energies(k) / omega;
                if (e >= sel.energy_min && e <= sel.energy_max) out.push_back(k);
            }
            break;
    }
    return out;
}

ResultRecord evaluate_state(const SolvedModel& model, Index k, const GridOptions& wigner, bool bosonic) {
    const EigenSolution& sol = model.solution;
    ResultRecord r;
    r.state = static_cast<int>(k);
    r.params = model.params;
    r.energy = sol.energies(k) / model.params.omega;
    r.parity = sol.parity[static_cast<std::size_t>(k)];
    r.converged = sol.converged[static_cast<std::size_t>(k)];
    r.n_max = model.basis.n_max();
    if (!r.converged) return r;

    const Vector psi = sol.state(k);
    const QubitDensity rho_q = trace_out_boson(psi, model.basis);
    const MagicReport rep = qubit_magic_report(rho_q);
    r.s_x = rep.bloch.x;
    r.s_y = rep.bloch.y;
    r.s_z = rep.bloch.z;
    r.entropy = rep.entropy;
    r.mana = rep.mana;
    r.dai_fu_luo = rep.dai_fu_luo;

    const BosonDensity rho_b = trace_out_qubit(psi, model.basis);
    r.mean_boson_number = mean_boson_number(rho_b);
    if (bosonic) {
        const NegativityResult neg = bosonic_mana(rho_b, wigner);
        r.mana_bos = neg.mana_bos;
        r.wigner_raw_abs_integral = neg.raw_abs_integral;
        r.wigner_extent_warning = neg.extent_warning;
    }
    return r;
}

std::vector<ResultRecord> evaluate_point(const SweepConfig& config, const ModelParams& params,
                                         std::size_t point) {
    const StateSelection sel = config.states;
    const double omega = params.omega;
    const ConvergenceTarget target = [sel, omega](const EigenSolution& s) {
        return select_states(sel, s, omega);
    };
    const SolvedModel model = solve_model(params, config.truncation, target, config.convergence);
    std::vector<ResultRecord> rows;
    for (Index k : select_states(sel, model.solution, omega)) {
        rows.push_back(evaluate_state(model, k, config.wigner, config.bosonic));
        rows.back().point = point;
    }
    return rows;
}

namespace {

std::string describe(const ModelParams& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "omega=%g Delta=%g g=%g epsilon=%g xi=%g", p.omega, p.delta, p.g,
                  p.epsilon, p.xi);
    return buf;
}

ResultTable run_points(const SweepConfig& config, const RunOptions& options) {
    const std::size_t n = config.point_count();
    std::vector<std::vector<ResultRecord>> slots(n);
    std::vector<std::optional<std::string>> errors(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i] = evaluate_point(config, config.point_params(i), i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    ResultTable table;
    table.mode = config.mode;
    table.points = n;
    for (std::size_t i = 0; i < n; ++i) {
        const ModelParams p = config.point_params(i);
        if (errors[i]) {
            table.failures.push_back({i, p, *errors[i]});
            table.log.push_back("point " + std::to_string(i) + " (" + describe(p) +
                                ") failed: " + *errors[i]);
            continue;
        }
        int unconverged = 0;
        for (ResultRecord& r : slots[i]) {
            if (!r.converged) ++unconverged;
            if (r.wigner_extent_warning) {
                table.log.push_back("point " + std::to_string(i) + " state " +
                                    std::to_string(r.state) +
                                    ": Wigner mass near the grid edge, extent may be too small");
            }
            if (options.verbose && r.wigner_raw_abs_integral) {
                std::ostringstream os;
                os.precision(10);
                os << "point " << i << " state " << r.state
                   << ": raw Wigner |W| integral " << *r.wigner_raw_abs_integral;
                table.log.push_back(os.str());
            }
            table.rows.push_back(std::move(r));
        }
        if (unconverged > 0) {
            table.log.push_back("point " + std::to_string(i) + " (" + describe(p) + "): " +
                                std::to_string(unconverged) + " selected state(s) not converged");
        }
    }
    return table;
}

}  // namespace

ResultTable run_spectrum_scan(const SweepConfig& config, const RunOptions& options) {
    if (config.mode != SweepMode::SpectrumScan || config.axes.size() != 1) {
        throw std::invalid_argument("run_spectrum_scan: config is not a one-axis spectrum scan");
    }
    return run_points(config, options);
}

ResultTable run_parameter_map(const SweepConfig& config, const RunOptions& options) {
    if (config.mode != SweepMode::ParameterMap || config.axes.size() != 2) {
        throw std::invalid_argument("run_parameter_map: config is not a two-axis map");
    }
    return run_points(config, options);
}

ResultTable run_sweep(const SweepConfig& config, const RunOptions& options) {
    return config.mode == SweepMode::SpectrumScan ? run_spectrum_scan(config, options)
                                                  : run_parameter_map(config, options);
}

}  // namespace aqrm
