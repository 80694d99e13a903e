// output.hpp: tabular result files, run metadata and SVG plots.

#pragma once

#include "aqrm/config.hpp"
#include "aqrm/sweep.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace aqrm {

// Fixed CSV column order.
const std::vector<std::string>& csv_columns();

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

// RFC-4180 field: quoted only when it holds a comma, quote or line break.
std::string csv_field(std::string_view text);

void write_csv(const ResultTable& table, std::ostream& out);
void write_jsonl(const ResultTable& table, std::ostream& out);
nlohmann::json record_json(const ResultRecord& record);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct EmittedFiles {
    std::vector<std::filesystem::path> data;  // csv / jsonl / log / svg
    std::filesystem::path metadata;
};

// Writes the result files selected by config.output into `dir` and a
// metadata.json holding the config, tool version and per-file SHA-256.
EmittedFiles emit_outputs(const ResultTable& table, const SweepConfig& config,
                          const std::filesystem::path& dir);

// SVG plots; returns the files written.
std::vector<std::filesystem::path> write_plots(const ResultTable& table, const SweepConfig& config,
                                               const std::filesystem::path& dir);

std::string_view tool_version();

}  // namespace aqrm
