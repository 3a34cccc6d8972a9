#pragma once

#include <cstdio>
#include <json.hpp>
#include <string>
#include <vector>

#include "randla/stats.hpp"
#include "randla/types.hpp"

namespace randla::testbed {

// One named statistic column: the aggregate plus the retained per-trial
// values it was reduced from.
struct ReportColumn {
    std::string name;
    StatSummary stats;
    std::vector<double> values;
};

struct ExperimentReport {
    std::string label;
    std::size_t trials = 0;
    std::size_t failures = 0;  // failures + values-per-column == trials
    std::vector<ReportColumn> columns;

    std::uint64_t seed = 0;
    std::string multiplier = "none";
    std::size_t refine_steps = 0;
    std::size_t dimension = 0;

    const ReportColumn& column(const std::string& name) const {
        for (const auto& c : columns)
            if (c.name == name) return c;
        throw IoError("no column named " + name);
    }
};

enum class ReportFormat { Table, Csv, Json };

inline ReportFormat parse_format(const std::string& s) {
    if (s == "table") return ReportFormat::Table;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    throw IoError("unknown format: " + s);
}

namespace detail {
inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}
inline std::string e3(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}
}  // namespace detail

inline std::string emit_csv(const ExperimentReport& r) {
    std::string out = "label,trials,stat,mean,max,min,std\n";
    for (const auto& c : r.columns) {
        out += r.label + ',' + std::to_string(r.trials) + ',' + c.name + ',' + detail::g17(c.stats.mean) +
               ',' + detail::g17(c.stats.max) + ',' + detail::g17(c.stats.min) + ',' +
               detail::g17(c.stats.std) + '\n';
    }
    const auto f = static_cast<double>(r.failures);
    out += r.label + ',' + std::to_string(r.trials) + ",failures," + detail::g17(f) + ',' +
           detail::g17(f) + ',' + detail::g17(f) + ",0\n";
    return out;
}

inline std::string emit_table(const ExperimentReport& r) {
    std::string out;
    out += r.label + "  (n=" + std::to_string(r.dimension) + ", trials=" + std::to_string(r.trials) +
           ", failures=" + std::to_string(r.failures) + ", multiplier=" + r.multiplier +
           ", refine=" + std::to_string(r.refine_steps) + ", seed=" + std::to_string(r.seed) + ")\n";
    char line[160];
    std::snprintf(line, sizeof(line), "  %-22s %-12s %-12s %-12s %-12s\n", "stat", "mean", "max", "min",
                  "std");
    out += line;
    for (const auto& c : r.columns) {
        std::snprintf(line, sizeof(line), "  %-22s %-12s %-12s %-12s %-12s\n", c.name.c_str(),
                      detail::e3(c.stats.mean).c_str(), detail::e3(c.stats.max).c_str(),
                      detail::e3(c.stats.min).c_str(), detail::e3(c.stats.std).c_str());
        out += line;
    }
    return out;
}

inline nlohmann::json report_to_json(const ExperimentReport& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["label"] = r.label;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    j["metadata"] = {{"seed", r.seed},
                     {"multiplier", r.multiplier},
                     {"refine_steps", r.refine_steps},
                     {"dimension", r.dimension}};
    j["columns"] = nlohmann::json::array();
    for (const auto& c : r.columns) {
        j["columns"].push_back({{"name", c.name},
                                {"mean", c.stats.mean},
                                {"max", c.stats.max},
                                {"min", c.stats.min},
                                {"std", c.stats.std},
                                {"values", c.values}});
    }
    return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != 1) throw IoError("unsupported report schema version");
    ExperimentReport r;
    r.label = j.at("label").get<std::string>();
    r.trials = j.at("trials").get<std::size_t>();
    r.failures = j.at("failures").get<std::size_t>();
    const auto& md = j.at("metadata");
    r.seed = md.at("seed").get<std::uint64_t>();
    r.multiplier = md.at("multiplier").get<std::string>();
    r.refine_steps = md.at("refine_steps").get<std::size_t>();
    r.dimension = md.at("dimension").get<std::size_t>();
    for (const auto& cj : j.at("columns")) {
        ReportColumn c;
        c.name = cj.at("name").get<std::string>();
        c.stats.mean = cj.at("mean").get<double>();
        c.stats.max = cj.at("max").get<double>();
        c.stats.min = cj.at("min").get<double>();
        c.stats.std = cj.at("std").get<double>();
        c.values = cj.at("values").get<std::vector<double>>();
        r.columns.push_back(std::move(c));
    }
    return r;
}

inline std::string emit_report(const ExperimentReport& r, ReportFormat format) {
    switch (format) {
        case ReportFormat::Table: return emit_table(r);
        case ReportFormat::Csv: return emit_csv(r);
        case ReportFormat::Json: return report_to_json(r).dump(2) + "\n";
    }
    throw IoError("unknown format");
}

inline std::string emit_reports(const std::vector<ExperimentReport>& rs, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rs) arr.push_back(report_to_json(r));
        return arr.dump(2) + "\n";
    }
    std::string out;
    for (const auto& r : rs) {
        out += emit_report(r, format);
        if (format == ReportFormat::Table) out += '\n';
    }
    return out;
}

}  // namespace randla::testbed
