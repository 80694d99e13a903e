// sweep.hpp: spectrum scans and two-parameter maps over a SweepConfig.

#pragma once

#include "aqrm/config.hpp"
#include "aqrm/spectral.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace aqrm {

struct ResultRecord {
    std::size_t point{0};
    int state{0};
    ModelParams params;
    double energy{0.0};  // E / omega
    Parity parity{Parity::Unlabeled};
    bool converged{false};
    int n_max{0};

    // Null for unconverged states.
    std::optional<double> s_x, s_y, s_z;
    std::optional<double> entropy;
    std::optional<double> mana;
    std::optional<double> dai_fu_luo;
    std::optional<double> mana_bos;
    std::optional<double> mean_boson_number;

    // Diagnostics, not part of the tabular output.
    std::optional<double> wigner_raw_abs_integral;
    bool wigner_extent_warning{false};
};

struct PointFailure {
    std::size_t point{0};
    ModelParams params;
    std::string message;
};

struct ResultTable {
    SweepMode mode{SweepMode::SpectrumScan};
    std::size_t points{0};
    std::vector<ResultRecord> rows;  // ordered by (point, state)
    std::vector<PointFailure> failures;
    std::vector<std::string> log;
};

struct RunOptions {
    unsigned threads{0};  // 0 = hardware concurrency
    bool verbose{false};
};

// Indices picked by a selection at one solved point.
std::vector<Index> select_states(const StateSelection& selection, const EigenSolution& solution,
                                 double omega);

// Resource columns for eigenstate k of a solved model.
ResultRecord evaluate_state(const SolvedModel& model, Index k, const GridOptions& wigner,
                            bool bosonic);

// Solves one parameter point and evaluates the selected states.
std::vector<ResultRecord> evaluate_point(const SweepConfig& config, const ModelParams& params,
                                         std::size_t point);

ResultTable run_spectrum_scan(const SweepConfig& config, const RunOptions& options = {});
ResultTable run_parameter_map(const SweepConfig& config, const RunOptions& options = {});
ResultTable run_sweep(const SweepConfig& config, const RunOptions& options = {});

}  // namespace aqrm
