#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rsm/experiment.hpp"

namespace rsm::output {

// Column order is fixed; changing it breaks downstream plotting scripts.
void write_ledger(std::ostream& os, const std::vector<DayLedger>& ledger);
void write_trajectories(std::ostream& os, const std::vector<TrajectoryRecord>& records);
/// `day,stage,<column>_mean,<column>_std,...` for every ledger value column.
void write_summary(std::ostream& os, const ReplicationSummary& summary,
                   const std::vector<DayLedger>& reference_days);

struct WrittenFiles {
    std::vector<std::filesystem::path> paths;
};

/// ledger_<rep>.csv, trajectories_<rep>.csv (when recorded), summary.csv.
WrittenFiles write_run(const std::filesystem::path& out_dir, const ReplicationResult& result);

/// Mean of each value column per stage, one line per stage, for the console.
std::string stage_report(const ReplicationResult& result);

}  // namespace rsm::output
