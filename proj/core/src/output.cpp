#include "aqrm/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#ifndef AQRM_VERSION
#define AQRM_VERSION "0.0.0"
#endif

namespace aqrm {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view tool_version() { return AQRM_VERSION; }

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "point",   "state",  "omega",      "Delta",      "detuning", "g",
        "epsilon", "xi",     "energy",     "parity",     "converged", "s_x",
        "s_y",     "s_z",    "entropy",    "mana",       "dai_fu_luo", "mana_bos",
        "mean_boson_number", "n_max"};
    return cols;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string parity_text(Parity p) {
    switch (p) {
        case Parity::Even: return "1";
        case Parity::Odd: return "-1";
        case Parity::Unlabeled: break;
    }
    return "";
}

json num_json(double v) { return json(v == 0.0 ? 0.0 : v); }

json opt_json(const std::optional<double>& v) { return v ? num_json(*v) : json(nullptr); }

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_field(cols[i]);
    out << "\r\n";
    for (const ResultRecord& r : table.rows) {
        const ModelParams& p = r.params;
        const std::array<std::string, 20> f = {
            std::to_string(r.point), std::to_string(r.state), format_double(p.omega),
            format_double(p.delta),  format_double(p.detuning()), format_double(p.g),
            format_double(p.epsilon), format_double(p.xi), format_double(r.energy),
            parity_text(r.parity),   r.converged ? "true" : "false", opt(r.s_x),
            opt(r.s_y),              opt(r.s_z), opt(r.entropy),
            opt(r.mana),             opt(r.dai_fu_luo), opt(r.mana_bos),
            opt(r.mean_boson_number), std::to_string(r.n_max)};
        for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_field(f[i]);
        out << "\r\n";
    }
}

json record_json(const ResultRecord& r) {
    const ModelParams& p = r.params;
    json parity = r.parity == Parity::Unlabeled ? json(nullptr) : json(static_cast<int>(r.parity));
    return json{{"point", r.point},
                {"state", r.state},
                {"omega", num_json(p.omega)},
                {"Delta", num_json(p.delta)},
                {"detuning", num_json(p.detuning())},
                {"g", num_json(p.g)},
                {"epsilon", num_json(p.epsilon)},
                {"xi", num_json(p.xi)},
                {"energy", num_json(r.energy)},
                {"parity", parity},
                {"converged", r.converged},
                {"s_x", opt_json(r.s_x)},
                {"s_y", opt_json(r.s_y)},
                {"s_z", opt_json(r.s_z)},
                {"entropy", opt_json(r.entropy)},
                {"mana", opt_json(r.mana)},
                {"dai_fu_luo", opt_json(r.dai_fu_luo)},
                {"mana_bos", opt_json(r.mana_bos)},
                {"mean_boson_number", opt_json(r.mean_boson_number)},
                {"n_max", r.n_max}};
}

void write_jsonl(const ResultTable& table, std::ostream& out) {
    for (const ResultRecord& r : table.rows) {
        // keep the csv column order rather than nlohmann's sorted keys
        const json j = record_json(r);
        out << '{';
        bool first = true;
        for (const std::string& c : csv_columns()) {
            out << (first ? "" : ",") << json(c).dump() << ':' << j.at(c).dump();
            first = false;
        }
        out << "}\n";
    }
}

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
    return os.str();
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return sha256_hex(os.str());
}

EmittedFiles emit_outputs(const ResultTable& table, const SweepConfig& config, const fs::path& dir) {
    fs::create_directories(dir);
    EmittedFiles files;
    const std::string& base = config.output.basename;
    const OutputFormat fmt = config.output.format;

    if (fmt == OutputFormat::Csv || fmt == OutputFormat::Both) {
        std::ostringstream os;
        write_csv(table, os);
        files.data.push_back(dir / (base + ".csv"));
        write_text(files.data.back(), os.str());
    }
    if (fmt == OutputFormat::Json || fmt == OutputFormat::Both) {
        std::ostringstream os;
        write_jsonl(table, os);
        files.data.push_back(dir / (base + ".jsonl"));
        write_text(files.data.back(), os.str());
    }
    {
        std::string log;
        for (const std::string& line : table.log) log += line + "\n";
        files.data.push_back(dir / (base + ".log"));
        write_text(files.data.back(), log);
    }
    if (config.output.plots) {
        for (const fs::path& p : write_plots(table, config, dir)) files.data.push_back(p);
    }

    json checksums = json::object();
    for (const fs::path& p : files.data) {
        checksums[p.filename().string()] = {{"sha256", sha256_file(p)},
                                            {"bytes", fs::file_size(p)}};
    }
    json failures = json::array();
    for (const PointFailure& f : table.failures) {
        failures.push_back({{"point", f.point}, {"message", f.message}});
    }
    std::size_t unconverged = 0;
    for (const ResultRecord& r : table.rows) unconverged += r.converged ? 0 : 1;

    const json meta = {{"tool", "aqrm"},
                       {"version", tool_version()},
                       {"created", timestamp_utc()},
                       {"config", config.source},
                       {"resolved_config", resolved_json(config)},
                       {"points", table.points},
                       {"rows", table.rows.size()},
                       {"unconverged_rows", unconverged},
                       {"failures", failures},
                       {"columns", csv_columns()},
                       {"files", checksums}};
    files.metadata = dir / "metadata.json";
    write_text(files.metadata, meta.dump(2) + "\n");
    return files;
}

}  // namespace aqrm
