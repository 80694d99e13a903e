// aqrm: batch driver for spectrum scans and parameter maps.

#include "aqrm/config.hpp"
#include "aqrm/output.hpp"
#include "aqrm/sweep.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

enum Exit { kOk = 0, kConfigError = 1, kPartial = 2, kIoError = 3 };

bool use_colour() {
    const char* nc = std::getenv("NO_COLOR");
    if (nc != nullptr && nc[0] != '\0') return false;
    return isatty(STDERR_FILENO) != 0;
}

void say(const char* tag, const char* ansi, const std::string& msg) {
    if (use_colour()) {
        std::cerr << ansi << tag << "\033[0m " << msg << '\n';
    } else {
        std::cerr << tag << ' ' << msg << '\n';
    }
}

void error(const std::string& m) { say("error:", "\033[31m", m); }
void warn(const std::string& m) { say("warning:", "\033[33m", m); }
void info(const std::string& m) { say("info:", "\033[36m", m); }

struct Args {
    std::string config;
    std::string out{"."};
    unsigned threads{0};
    std::string format;
    bool plots{false};
    bool verbose{false};
};

void add_flags(CLI::App* cmd, Args& a) {
    cmd->add_option("--config", a.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", a.out, "output directory")->capture_default_str();
    cmd->add_option("--threads", a.threads, "worker threads (0 = auto)")->capture_default_str();
    cmd->add_option("--format", a.format, "csv, json or both (overrides the config)")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_flag("--plots", a.plots, "also write SVG plots");
    cmd->add_flag("--verbose", a.verbose, "log per-point diagnostics");
}

int run(aqrm::SweepMode mode, const Args& a) {
    aqrm::SweepConfig cfg;
    try {
        cfg = aqrm::load_sweep_config(a.config, mode);
    } catch (const aqrm::ConfigError& e) {
        error(e.what());
        return kConfigError;
    }
    if (a.format == "csv") cfg.output.format = aqrm::OutputFormat::Csv;
    if (a.format == "json") cfg.output.format = aqrm::OutputFormat::Json;
    if (a.format == "both") cfg.output.format = aqrm::OutputFormat::Both;
    if (a.plots) cfg.output.plots = true;

    if (a.verbose) {
        info(std::string(aqrm::to_string(cfg.mode)) + ": " + std::to_string(cfg.point_count()) +
             " points");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const aqrm::ResultTable table = aqrm::run_sweep(cfg, {a.threads, a.verbose});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    for (const std::string& line : table.log) {
        if (line.find("failed") != std::string::npos) {
            error(line);
        } else if (line.find("raw Wigner") != std::string::npos) {
            info(line);
        } else {
            warn(line);
        }
    }

    aqrm::EmittedFiles files;
    try {
        files = aqrm::emit_outputs(table, cfg, a.out);
    } catch (const std::exception& e) {
        error(e.what());
        return kIoError;
    }
    if (a.verbose) {
        for (const auto& p : files.data) info("wrote " + p.string());
        info("wrote " + files.metadata.string());
        info(std::to_string(table.rows.size()) + " rows in " + std::to_string(secs) + " s");
    }
    if (!table.failures.empty()) {
        error(std::to_string(table.failures.size()) + " of " + std::to_string(table.points) +
              " points failed");
        return kPartial;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aqrm: magic resources of the asymmetric quantum Rabi model"};
    app.set_version_flag("--version", std::string(aqrm::tool_version()));
    app.require_subcommand(1);

    Args scan_args, map_args;
    CLI::App* scan = app.add_subcommand("scan", "spectrum scan along one axis");
    CLI::App* map = app.add_subcommand("map", "two-parameter map");
    add_flags(scan, scan_args);
    add_flags(map, map_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (scan->parsed()) return run(aqrm::SweepMode::SpectrumScan, scan_args);
        return run(aqrm::SweepMode::ParameterMap, map_args);
    } catch (const std::exception& e) {
        error(e.what());
        return kIoError;
    }
}
