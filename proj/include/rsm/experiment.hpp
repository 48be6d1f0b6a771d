#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rsm/daily_pass.hpp"
#include "rsm/network.hpp"
#include "rsm/platform.hpp"
#include "rsm/population.hpp"
#include "rsm/withinday.hpp"

namespace rsm {

/// A fully resolved experiment: network, initial populations, levers and
/// behavioral parameters.
struct Scenario {
    std::shared_ptr<const NetworkGraph> graph;
    std::vector<TravelerAgent> travelers;
    std::vector<DriverAgent> drivers;
    int horizon = 400;
    DayParams day;
    StageSchedule schedule = StageSchedule::reference();
    AdaptationParams adaptation;
    std::uint64_t seed = 42;
    int replications = 1;
    bool record_trajectories = false;

    /// Throws ValidationError listing everything that is wrong.
    void validate() const;

    AdaptationParams effective_adaptation() const;
};

/// System KPIs of one day. Shares are fractions of the full pools; means over
/// served trips or working drivers are 0 when there are none.
struct DayLedger {
    int day = 0;
    std::string stage;
    double demand_share = 0.0;
    double served_share = 0.0;
    double supply_share = 0.0;
    double mean_wait = 0.0;
    double mean_matching = 0.0;
    double mean_pickup = 0.0;
    double mean_driver_profit = 0.0;
    double mean_idle = 0.0;
    double pax_km = 0.0;
    double veh_km = 0.0;
    CashRow cash;
    PerComponent<double> traveler_utility{};
    PerComponent<double> driver_utility{};

    /// Numeric fields in the CSV column order (everything after `stage`).
    std::vector<double> values() const;
    static const std::vector<std::string>& value_columns();
};

enum class Side { traveler, driver };

/// One agent's state at the end of a day: the utilities after learning,
/// tomorrow's participation probability, and whether it took part today.
struct TrajectoryRecord {
    int day = 0;
    Side side = Side::traveler;
    std::int64_t agent_id = 0;
    double u_e = 0.0;
    double u_wom = 0.0;
    double u_m = 0.0;
    double probability = 0.0;
    bool notified = false;
    bool participated = false;
};

struct RunResult {
    std::uint64_t seed = 0;
    std::vector<DayLedger> ledger;
    std::vector<TrajectoryRecord> trajectories;
};

/// Called after each simulated day with the within-day result of the
/// participants; used by tests and diagnostics.
using DayObserver = std::function<void(int day, const DayResult&)>;

/// Runs the whole horizon on a copy of the scenario's agents. A pure function
/// of (scenario, seed).
RunResult run_experiment(const Scenario& scenario, std::uint64_t seed,
                         const DayObserver& observer = {});

inline RunResult run_experiment(const Scenario& scenario) {
    return run_experiment(scenario, scenario.seed);
}

struct ColumnSummary {
    std::vector<double> mean;
    std::vector<double> std;  // sample standard deviation, 0 for one replication
};

/// Per-day across-replication statistics, indexed [day][column].
struct ReplicationSummary {
    std::vector<ColumnSummary> days;
};

struct ReplicationResult {
    std::vector<RunResult> runs;
    ReplicationSummary summary;
};

/// Replication r runs with replication_seed(master, r). Replications run on
/// up to `threads` worker threads (0 picks the hardware concurrency).
ReplicationResult run_replications(const Scenario& scenario, unsigned threads = 0);

ReplicationSummary summarize(const std::vector<RunResult>& runs);

}  // namespace rsm
