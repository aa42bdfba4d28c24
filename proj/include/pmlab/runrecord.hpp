#pragma once
#include <charconv>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pmlab/version.hpp"

namespace pmlab::io {

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_double: bad number: " + s);
    }
}

// One reproducible run: command, full parameter set, seed, and the output
// table. CSV bodies (header + data rows) are byte-identical across reruns
// of the same command line; timestamps and wall time live in '#' comments.
struct RunRecord {
    std::string command;
    std::string version = PMLAB_VERSION;
    std::string timestamp;
    double elapsed_ms = 0.0;
    bool has_seed = false;
    uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool operator==(const RunRecord&) const = default;
};

inline std::string to_csv(const RunRecord& r) {
    std::ostringstream out;
    out << "# pmlab " << r.version << "\n";
    out << "# generated " << r.timestamp << "\n";
    out << "# elapsed_ms " << format_double(r.elapsed_ms) << "\n";
    out << "# command " << r.command << "\n";
    if (r.has_seed) out << "# seed " << r.seed << "\n";
    for (const auto& [k, v] : r.params) out << "# param " << k << "=" << v << "\n";
    for (size_t i = 0; i < r.columns.size(); ++i)
        out << (i ? "," : "") << r.columns[i];
    out << "\n";
    for (const auto& row : r.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
    return out.str();
}

inline RunRecord from_csv(const std::string& text) {
    RunRecord r;
    r.version.clear();
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body[0] == ' ') body.erase(0, 1);
            auto take = [&](const std::string& key) -> std::string {
                if (body.rfind(key + " ", 0) == 0) return body.substr(key.size() + 1);
                return {};
            };
            if (auto v = take("pmlab"); !v.empty()) r.version = v;
            else if (auto g = take("generated"); !g.empty()) r.timestamp = g;
            else if (auto e = take("elapsed_ms"); !e.empty()) r.elapsed_ms = parse_double(e);
            else if (auto c = take("command"); !c.empty()) r.command = c;
            else if (auto s = take("seed"); !s.empty()) { r.has_seed = true; r.seed = std::stoull(s); }
            else if (auto p = take("param"); !p.empty()) {
                auto eq = p.find('=');
                if (eq == std::string::npos) throw std::invalid_argument("from_csv: bad param line");
                r.params.push_back({p.substr(0, eq), p.substr(eq + 1)});
            }
            continue;
        }
        std::istringstream cells(line);
        std::string cell;
        if (!header_seen) {
            while (std::getline(cells, cell, ',')) r.columns.push_back(cell);
            header_seen = true;
        } else {
            std::vector<double> row;
            while (std::getline(cells, cell, ',')) row.push_back(parse_double(cell));
            if (row.size() != r.columns.size())
                throw std::invalid_argument("from_csv: row width does not match header");
            r.rows.push_back(std::move(row));
        }
    }
    if (!header_seen) throw std::invalid_argument("from_csv: missing header row");
    return r;
}

inline nlohmann::ordered_json to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["pmlab"] = r.version;
    j["generated"] = r.timestamp;
    j["elapsed_ms"] = r.elapsed_ms;
    j["command"] = r.command;
    if (r.has_seed) j["seed"] = r.seed;
    nlohmann::ordered_json params = nlohmann::ordered_json::array();
    for (const auto& [k, v] : r.params) params.push_back({{"key", k}, {"value", v}});
    j["params"] = params;
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    return j;
}

inline RunRecord from_json(const nlohmann::ordered_json& j) {
    RunRecord r;
    r.version = j.at("pmlab").get<std::string>();
    r.timestamp = j.at("generated").get<std::string>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.command = j.at("command").get<std::string>();
    if (j.contains("seed")) { r.has_seed = true; r.seed = j.at("seed").get<uint64_t>(); }
    r.params.clear();
    for (const auto& p : j.at("params"))
        r.params.push_back({p.at("key").get<std::string>(), p.at("value").get<std::string>()});
    r.columns = j.at("columns").get<std::vector<std::string>>();
    r.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    return r;
}

}
