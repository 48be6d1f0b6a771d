#include "rsm/output.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "rsm/csv.hpp"
#include "rsm/error.hpp"

namespace rsm::output {

void write_ledger(std::ostream& os, const std::vector<DayLedger>& ledger) {
    std::vector<std::string> header{"day", "stage"};
    for (const auto& c : DayLedger::value_columns()) header.push_back(c);
    csv::write_row(os, header);
    for (const auto& row : ledger) {
        std::vector<std::string> fields{csv::format(std::int64_t{row.day}), row.stage};
        for (double v : row.values()) fields.push_back(csv::format(v));
        csv::write_row(os, fields);
    }
}

void write_trajectories(std::ostream& os, const std::vector<TrajectoryRecord>& records) {
    os << "day,side,agent_id,u_e,u_wom,u_m,probability,notified,participated\n";
    for (const auto& r : records) {
        csv::write_row(os, {csv::format(std::int64_t{r.day}),
                            r.side == Side::traveler ? "traveler" : "driver",
                            csv::format(r.agent_id), csv::format(r.u_e), csv::format(r.u_wom),
                            csv::format(r.u_m), csv::format(r.probability),
                            r.notified ? "1" : "0", r.participated ? "1" : "0"});
    }
}

void write_summary(std::ostream& os, const ReplicationSummary& summary,
                   const std::vector<DayLedger>& reference_days) {
    std::vector<std::string> header{"day", "stage"};
    for (const auto& c : DayLedger::value_columns()) {
        header.push_back(c + "_mean");
        header.push_back(c + "_std");
    }
    csv::write_row(os, header);
    for (std::size_t d = 0; d < summary.days.size(); ++d) {
        const auto& day = summary.days[d];
        std::vector<std::string> fields{csv::format(std::int64_t{reference_days.at(d).day}),
                                        reference_days.at(d).stage};
        for (std::size_t c = 0; c < day.mean.size(); ++c) {
            fields.push_back(csv::format(day.mean[c]));
            fields.push_back(csv::format(day.std[c]));
        }
        csv::write_row(os, fields);
    }
}

namespace {

std::ofstream open(const std::filesystem::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot write " + p.string());
    return os;
}

}  // namespace

WrittenFiles write_run(const std::filesystem::path& out_dir, const ReplicationResult& result) {
    std::filesystem::create_directories(out_dir);
    WrittenFiles files;
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
        auto path = out_dir / ("ledger_" + std::to_string(r) + ".csv");
        auto os = open(path);
        write_ledger(os, result.runs[r].ledger);
        files.paths.push_back(path);
        if (!result.runs[r].trajectories.empty()) {
            auto tpath = out_dir / ("trajectories_" + std::to_string(r) + ".csv");
            auto ts = open(tpath);
            write_trajectories(ts, result.runs[r].trajectories);
            files.paths.push_back(tpath);
        }
    }
    auto spath = out_dir / "summary.csv";
    auto ss = open(spath);
    write_summary(ss, result.summary, result.runs.front().ledger);
    files.paths.push_back(spath);
    return files;
}

std::string stage_report(const ReplicationResult& result) {
    const auto& days = result.runs.front().ledger;
    const auto& columns = DayLedger::value_columns();
    auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) return i;
        }
        return columns.size();
    };
    const auto served = col("served_share");
    const auto supply = col("supply_share");
    const auto wait = col("mean_wait");
    const auto profit = col("mean_driver_profit");
    const auto net = col("net");

    std::ostringstream os;
    char line[200];
    std::snprintf(line, sizeof line, "%-12s %9s %9s %9s %9s %10s %11s\n", "stage", "days",
                  "served", "supply", "wait[s]", "profit", "net/day");
    os << line;
    std::size_t d = 0;
    while (d < days.size()) {
        const auto& name = days[d].stage;
        const std::size_t start = d;
        double s_served = 0, s_supply = 0, s_wait = 0, s_profit = 0, s_net = 0;
        for (; d < days.size() && days[d].stage == name; ++d) {
            const auto& m = result.summary.days[d].mean;
            s_served += m[served];
            s_supply += m[supply];
            s_wait += m[wait];
            s_profit += m[profit];
            s_net += m[net];
        }
        const double n = static_cast<double>(d - start);
        char span[32];
        std::snprintf(span, sizeof span, "%zu-%zu", start, d);
        std::snprintf(line, sizeof line, "%-12s %9s %9.3f %9.3f %9.1f %10.2f %11.2f\n",
                      name.c_str(), span, s_served / n, s_supply / n, s_wait / n, s_profit / n,
                      s_net / n);
        os << line;
    }
    return os.str();
}

}  // namespace rsm::output
