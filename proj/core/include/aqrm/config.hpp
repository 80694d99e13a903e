// config.hpp: sweep configuration documents (JSON) and their resolution into
// model parameter points.

#pragma once

#include "aqrm/cv_magic.hpp"
#include "aqrm/model.hpp"
#include "aqrm/spectral.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aqrm {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepMode { SpectrumScan, ParameterMap };

// Swept quantities. Detuning sets Delta = (omega - detuning) / 2.
enum class AxisName { G, Epsilon, Detuning, Xi };

std::string_view to_string(SweepMode mode);
std::string_view to_string(AxisName axis);

struct SweepAxis {
    AxisName name{AxisName::G};
    double min{0.0};
    double max{1.0};
    int count{2};

    // Evenly spaced, both ends included.
    double value(int i) const;
};

struct StateSelection {
    enum class Kind { Lowest, Indices, EnergyWindow };
    Kind kind{Kind::Lowest};
    int lowest{40};
    std::vector<int> indices;
    double energy_min{0.0};  // in units of omega
    double energy_max{0.0};
};

enum class OutputFormat { Csv, Json, Both };

struct OutputOptions {
    std::string basename{"results"};
    OutputFormat format{OutputFormat::Csv};
    bool plots{false};
};

struct SweepConfig {
    SweepMode mode{SweepMode::SpectrumScan};
    ModelParams fixed;
    std::vector<SweepAxis> axes;
    StateSelection states;
    TruncationPolicy truncation;
    ConvergenceCriterion convergence;
    GridOptions wigner;
    bool bosonic{true};
    OutputOptions output;
    nlohmann::json source;  // the document as read

    std::size_t point_count() const;
    // Point index runs over axes[0] slowest.
    std::vector<double> point_coordinates(std::size_t point) const;
    ModelParams point_params(std::size_t point) const;
};

// Throws ConfigError on unknown keys, bad values or a mode mismatch.
SweepConfig parse_sweep_config(const nlohmann::json& doc,
                               std::optional<SweepMode> expected = std::nullopt);
SweepConfig load_sweep_config(const std::filesystem::path& path,
                              std::optional<SweepMode> expected = std::nullopt);

// Fully resolved configuration (defaults filled in).
nlohmann::json resolved_json(const SweepConfig& config);

}  // namespace aqrm
