#ifndef MLNDS_IO_RECORDS_HPP_
#define MLNDS_IO_RECORDS_HPP_

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "../mltm.hpp"
#include "../seeding.hpp"
#include "multiplex.hpp"

namespace mlnds {

enum class RunStatus { Ok, MdsTooSmall };

inline std::string_view to_string(RunStatus s) { return s == RunStatus::Ok ? "ok" : "mds_too_small"; }

inline RunStatus parse_status(std::string_view s) {
    if (s == "ok")
        return RunStatus::Ok;
    if (s == "mds_too_small")
        return RunStatus::MdsTooSmall;
    throw ParseError("unknown run status '" + std::string(s) + "'");
}

/// One simulation outcome. Baseline rows carry no mds_size; rows with
/// status mds_too_small carry no simulation results.
struct RunRecord {
    std::string network;
    std::size_t instance = 0;
    Method method = Method::DegC;
    bool mds_filtered = false;
    Protocol protocol = Protocol::And;
    double mu = 0;
    double budget = 0;
    std::size_t repetition = 0;
    std::optional<std::size_t> seed_count;
    std::optional<std::size_t> mds_size;
    std::optional<double> gamma;
    std::optional<double> lambda;
    std::optional<std::size_t> steps;
    RunStatus status = RunStatus::Ok;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Seed set persisted per (network, instance, protocol, budget, repetition,
/// method, variant); thresholds do not affect seeding.
struct SeedRow {
    std::string network;
    std::size_t instance = 0;
    Protocol protocol = Protocol::And;
    double budget = 0;
    std::size_t repetition = 0;
    Method method = Method::DegC;
    bool mds_filtered = false;
    RunStatus status = RunStatus::Ok;
    std::vector<std::string> seeds;

    friend bool operator==(const SeedRow&, const SeedRow&) = default;
};

/// One dominating set draw with the size of the greedy set it started from.
struct MdsRow {
    std::string network;
    std::size_t instance = 0;
    Protocol protocol = Protocol::And;
    double budget = 0;
    std::size_t repetition = 0;
    std::size_t greedy_size = 0;
    bool timed_out = false;
    std::vector<std::string> members;

    friend bool operator==(const MdsRow&, const MdsRow&) = default;
};

struct NetworkRow {
    std::string name;
    std::string type;
    std::size_t instance = 0;
    std::size_t actors = 0;
    std::size_t layers = 0;
    std::size_t edges = 0;

    friend bool operator==(const NetworkRow&, const NetworkRow&) = default;
};

namespace csv {

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline void check_field(std::string_view s) {
    if (s.find_first_of(",\n\r\"") != std::string_view::npos)
        throw Error("value '" + std::string(s) + "' cannot be stored in CSV");
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = line.find(sep, start);
        if (at == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, at - start));
        start = at + 1;
    }
}

inline std::vector<std::string_view> lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (!line.empty())
            out.push_back(line);
        pos = end + 1;
    }
    return out;
}

inline double parse_double(std::string_view s, std::string_view column) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ParseError("non-numeric value '" + std::string(s) + "' in column " + std::string(column));
    return v;
}

inline std::size_t parse_count(std::string_view s, std::string_view column) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ParseError("non-numeric value '" + std::string(s) + "' in column " + std::string(column));
    return v;
}

inline bool parse_flag(std::string_view s, std::string_view column) {
    if (s == "1")
        return true;
    if (s == "0")
        return false;
    throw ParseError("expected 0 or 1 in column " + std::string(column) + ", got '" + std::string(s) + "'");
}

template <class T, class F>
std::string optional_field(const std::optional<T>& v, F fmt) {
    return v ? fmt(*v) : std::string();
}

inline std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (n.find(' ') != std::string::npos)
            throw Error("actor name '" + n + "' contains a space");
        check_field(n);
        if (!out.empty())
            out += ' ';
        out += n;
    }
    return out;
}

inline std::vector<std::string> split_names(std::string_view s) {
    std::vector<std::string> out;
    for (auto tok : detail::split_ws(s))
        out.emplace_back(tok);
    return out;
}

/// Checks the header and returns data rows split into exactly `columns` fields.
inline std::vector<std::vector<std::string_view>> table(std::string_view text, std::string_view header) {
    auto ls = lines(text);
    if (ls.empty() || ls.front() != header)
        throw ParseError("CSV header mismatch, expected '" + std::string(header) + "'");
    const std::size_t columns = split(header).size();
    std::vector<std::vector<std::string_view>> rows;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        auto fields = split(ls[i]);
        if (fields.size() != columns)
            throw ParseError("CSV row " + std::to_string(i + 1) + " has " + std::to_string(fields.size()) +
                             " fields, expected " + std::to_string(columns));
        rows.push_back(std::move(fields));
    }
    return rows;
}

inline std::string count_str(std::size_t v) { return std::to_string(v); }

} // namespace csv

inline constexpr std::string_view records_header =
    "network,instance,method,mds_filtered,protocol,mu,budget,repetition,seed_count,mds_size,gamma,lambda,steps,status";

/// Doubles are written in shortest round-trip form, so reading back is exact.
inline std::string write_records_csv(const std::vector<RunRecord>& records) {
    std::string out(records_header);
    out += '\n';
    for (const auto& r : records) {
        csv::check_field(r.network);
        out += r.network;
        out += ',' + std::to_string(r.instance);
        out += ',' + std::string(to_string(r.method));
        out += r.mds_filtered ? ",1" : ",0";
        out += ',' + std::string(to_string(r.protocol));
        out += ',' + csv::format_double(r.mu);
        out += ',' + csv::format_double(r.budget);
        out += ',' + std::to_string(r.repetition);
        out += ',' + csv::optional_field(r.seed_count, csv::count_str);
        out += ',' + csv::optional_field(r.mds_size, csv::count_str);
        out += ',' + csv::optional_field(r.gamma, csv::format_double);
        out += ',' + csv::optional_field(r.lambda, csv::format_double);
        out += ',' + csv::optional_field(r.steps, csv::count_str);
        out += ',' + std::string(to_string(r.status));
        out += '\n';
    }
    return out;
}

inline std::vector<RunRecord> read_records_csv(std::string_view text) {
    static const auto names = csv::split(records_header);
    std::vector<RunRecord> out;
    for (const auto& f : csv::table(text, records_header)) {
        auto opt_count = [&](std::size_t i) -> std::optional<std::size_t> {
            if (f[i].empty())
                return std::nullopt;
            return csv::parse_count(f[i], names[i]);
        };
        auto opt_double = [&](std::size_t i) -> std::optional<double> {
            if (f[i].empty())
                return std::nullopt;
            return csv::parse_double(f[i], names[i]);
        };
        RunRecord r;
        r.network = std::string(f[0]);
        r.instance = csv::parse_count(f[1], names[1]);
        r.method = parse_method(f[2]);
        r.mds_filtered = csv::parse_flag(f[3], names[3]);
        r.protocol = parse_protocol(f[4]);
        r.mu = csv::parse_double(f[5], names[5]);
        r.budget = csv::parse_double(f[6], names[6]);
        r.repetition = csv::parse_count(f[7], names[7]);
        r.seed_count = opt_count(8);
        r.mds_size = opt_count(9);
        r.gamma = opt_double(10);
        r.lambda = opt_double(11);
        r.steps = opt_count(12);
        r.status = parse_status(f[13]);
        out.push_back(std::move(r));
    }
    return out;
}

inline constexpr std::string_view seeds_header =
    "network,instance,protocol,budget,repetition,method,mds_filtered,status,seeds";

inline std::string write_seeds_csv(const std::vector<SeedRow>& rows) {
    std::string out(seeds_header);
    out += '\n';
    for (const auto& r : rows) {
        csv::check_field(r.network);
        out += r.network + ',' + std::to_string(r.instance) + ',' + std::string(to_string(r.protocol)) + ',' +
               csv::format_double(r.budget) + ',' + std::to_string(r.repetition) + ',' +
               std::string(to_string(r.method)) + (r.mds_filtered ? ",1," : ",0,") + std::string(to_string(r.status)) +
               ',' + csv::join_names(r.seeds) + '\n';
    }
    return out;
}

inline std::vector<SeedRow> read_seeds_csv(std::string_view text) {
    static const auto names = csv::split(seeds_header);
    std::vector<SeedRow> out;
    for (const auto& f : csv::table(text, seeds_header)) {
        SeedRow r;
        r.network = std::string(f[0]);
        r.instance = csv::parse_count(f[1], names[1]);
        r.protocol = parse_protocol(f[2]);
        r.budget = csv::parse_double(f[3], names[3]);
        r.repetition = csv::parse_count(f[4], names[4]);
        r.method = parse_method(f[5]);
        r.mds_filtered = csv::parse_flag(f[6], names[6]);
        r.status = parse_status(f[7]);
        r.seeds = csv::split_names(f[8]);
        out.push_back(std::move(r));
    }
    return out;
}

inline constexpr std::string_view mds_header =
    "network,instance,protocol,budget,repetition,greedy_size,timed_out,members";

inline std::string write_mds_csv(const std::vector<MdsRow>& rows) {
    std::string out(mds_header);
    out += '\n';
    for (const auto& r : rows) {
        csv::check_field(r.network);
        out += r.network + ',' + std::to_string(r.instance) + ',' + std::string(to_string(r.protocol)) + ',' +
               csv::format_double(r.budget) + ',' + std::to_string(r.repetition) + ',' +
               std::to_string(r.greedy_size) + (r.timed_out ? ",1," : ",0,") + csv::join_names(r.members) + '\n';
    }
    return out;
}

inline std::vector<MdsRow> read_mds_csv(std::string_view text) {
    static const auto names = csv::split(mds_header);
    std::vector<MdsRow> out;
    for (const auto& f : csv::table(text, mds_header)) {
        MdsRow r;
        r.network = std::string(f[0]);
        r.instance = csv::parse_count(f[1], names[1]);
        r.protocol = parse_protocol(f[2]);
        r.budget = csv::parse_double(f[3], names[3]);
        r.repetition = csv::parse_count(f[4], names[4]);
        r.greedy_size = csv::parse_count(f[5], names[5]);
        r.timed_out = csv::parse_flag(f[6], names[6]);
        r.members = csv::split_names(f[7]);
        out.push_back(std::move(r));
    }
    return out;
}

inline constexpr std::string_view networks_header = "name,type,instance,actors,layers,edges";

inline std::string write_networks_csv(const std::vector<NetworkRow>& rows) {
    std::string out(networks_header);
    out += '\n';
    for (const auto& r : rows) {
        csv::check_field(r.name);
        csv::check_field(r.type);
        out += r.name + ',' + r.type + ',' + std::to_string(r.instance) + ',' + std::to_string(r.actors) + ',' +
               std::to_string(r.layers) + ',' + std::to_string(r.edges) + '\n';
    }
    return out;
}

inline std::vector<NetworkRow> read_networks_csv(std::string_view text) {
    static const auto names = csv::split(networks_header);
    std::vector<NetworkRow> out;
    for (const auto& f : csv::table(text, networks_header)) {
        NetworkRow r;
        r.name = std::string(f[0]);
        r.type = std::string(f[1]);
        r.instance = csv::parse_count(f[2], names[2]);
        r.actors = csv::parse_count(f[3], names[3]);
        r.layers = csv::parse_count(f[4], names[4]);
        r.edges = csv::parse_count(f[5], names[5]);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw Error("failed writing '" + path + "'");
}

} // namespace mlnds

#endif // MLNDS_IO_RECORDS_HPP_
