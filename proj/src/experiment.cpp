#include "rsm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "rsm/error.hpp"
#include "rsm/random.hpp"

namespace rsm {

void Scenario::validate() const {
    std::vector<std::string> problems;
    auto collect = [&](const std::string& where, auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            for (const auto& p : e.problems()) problems.push_back(where + ": " + p);
        }
    };
    if (!graph) problems.push_back("network: no graph");
    if (horizon < 1) problems.push_back("run.horizon must be >= 1");
    if (!(day.day_length_s > 0.0)) problems.push_back("run.day_length_s must be > 0");
    if (!(day.patience_s > 0.0)) problems.push_back("run.patience_s must be > 0");
    if (replications < 1) problems.push_back("run.replications must be >= 1");
    if (schedule.horizon() < horizon) {
        problems.push_back("platform.stages cover only " + std::to_string(schedule.horizon()) +
                           " days but run.horizon is " + std::to_string(horizon));
    }
    if (travelers.empty()) problems.push_back("population: no travelers");
    if (drivers.empty()) problems.push_back("population: no drivers");
    collect("adaptation", [&] { adaptation.learning.validate(); });
    collect("adaptation", [&] { adaptation.choice.validate(); });
    collect("adaptation", [&] { adaptation.cost.validate(); });
    collect("adaptation", [&] { adaptation.diffusion.validate(); });
    if (graph) {
        collect("population", [&] {
            validate_population(*graph, travelers, drivers, day.day_length_s);
        });
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

AdaptationParams Scenario::effective_adaptation() const {
    AdaptationParams a = adaptation;
    a.patience_s = day.patience_s;
    a.shift_hours = day.day_length_s / 3600.0;
    return a;
}

std::vector<double> DayLedger::values() const {
    return {demand_share,
            served_share,
            supply_share,
            mean_wait,
            mean_matching,
            mean_pickup,
            mean_driver_profit,
            mean_idle,
            pax_km,
            veh_km,
            cash.commission_income,
            cash.discount_spend,
            cash.marketing_spend,
            cash.net,
            cash.cumulative_net,
            traveler_utility[0],
            traveler_utility[1],
            traveler_utility[2],
            driver_utility[0],
            driver_utility[1],
            driver_utility[2]};
}

const std::vector<std::string>& DayLedger::value_columns() {
    static const std::vector<std::string> columns{
        "demand_share",       "served_share",       "supply_share",     "mean_wait",
        "mean_matching",      "mean_pickup",        "mean_driver_profit", "mean_idle",
        "pax_km",             "veh_km",             "commission_income", "discount_spend",
        "marketing_spend",    "net",                "cumulative_net",   "traveler_u_e",
        "traveler_u_wom",     "traveler_u_m",       "driver_u_e",       "driver_u_wom",
        "driver_u_m"};
    return columns;
}

namespace {

template <typename Agent>
double probability_of(const Agent& a, const AdaptationParams& p) {
    return participation_probability(perceived_utility(a.adaptive, p.learning, p.choice),
                                      p.choice.alternative_utility, p.choice.mu,
                                      a.adaptive.notified);
}

template <typename Agent>
PerComponent<double> mean_utilities(const std::vector<Agent>& agents, const LearningParams& l) {
    PerComponent<double> sum{};
    for (const auto& a : agents) {
        for (std::size_t c = 0; c < kComponents; ++c) {
            sum[c] += a.adaptive.utility(static_cast<Component>(c), l);
        }
    }
    for (auto& s : sum) s /= static_cast<double>(agents.size());
    return sum;
}

template <typename Agent>
void record(std::vector<TrajectoryRecord>& out, int day, Side side,
            const std::vector<Agent>& agents, const std::vector<bool>& participated,
            const AdaptationParams& p) {
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto& a = agents[i];
        out.push_back(TrajectoryRecord{day, side, a.id,
                                       a.adaptive.utility(Component::experience, p.learning),
                                       a.adaptive.utility(Component::wom, p.learning),
                                       a.adaptive.utility(Component::marketing, p.learning),
                                       probability_of(a, p), a.adaptive.notified,
                                       participated[i]});
    }
}

}  // namespace

RunResult run_experiment(const Scenario& scenario, std::uint64_t seed,
                         const DayObserver& observer) {
    scenario.validate();
    const auto params = scenario.effective_adaptation();
    const auto& g = *scenario.graph;

    auto travelers = scenario.travelers;
    auto drivers = scenario.drivers;
    const auto n_trav = travelers.size();
    const auto n_drv = drivers.size();
    const int pool = static_cast<int>(n_trav + n_drv);

    RunResult result;
    result.seed = seed;
    result.ledger.reserve(static_cast<std::size_t>(scenario.horizon));
    double cumulative = 0.0;

    std::vector<double> trav_prob(n_trav);
    std::vector<double> drv_prob(n_drv);
    std::vector<bool> trav_in(n_trav);
    std::vector<bool> drv_in(n_drv);

    for (int day = 0; day < scenario.horizon; ++day) {
        auto [levers, stage] = levers_for_day(scenario.schedule, day);

        for (std::size_t i = 0; i < n_trav; ++i) trav_prob[i] = probability_of(travelers[i], params);
        for (std::size_t i = 0; i < n_drv; ++i) drv_prob[i] = probability_of(drivers[i], params);

        // one draw per agent keeps the stream layout independent of awareness
        auto rng = rng_substream(seed, static_cast<std::uint64_t>(day), "participation");
        std::vector<TravelerAgent> active_trav;
        std::vector<double> active_prob;
        std::vector<std::size_t> trav_index;
        for (std::size_t i = 0; i < n_trav; ++i) {
            trav_in[i] = rng.uniform() < trav_prob[i];
            if (trav_in[i]) {
                active_trav.push_back(travelers[i]);
                active_prob.push_back(trav_prob[i]);
                trav_index.push_back(i);
            }
        }
        std::vector<DriverAgent> active_drv;
        std::vector<std::size_t> drv_index;
        for (std::size_t i = 0; i < n_drv; ++i) {
            drv_in[i] = rng.uniform() < drv_prob[i];
            if (drv_in[i]) {
                active_drv.push_back(drivers[i]);
                drv_index.push_back(i);
            }
        }

        auto day_result = run_day(g, active_trav, active_prob, active_drv, levers, scenario.day);
        if (observer) observer(day, day_result);

        auto cash = settle_day(day_result.trips, levers, pool, params.diffusion.p_marketing);
        accumulate(cash, cumulative);
        cumulative = cash.cumulative_net;

        DayLedger row;
        row.day = day;
        row.stage = stage;
        row.cash = cash;
        row.demand_share = static_cast<double>(active_trav.size()) / static_cast<double>(n_trav);
        row.supply_share = static_cast<double>(active_drv.size()) / static_cast<double>(n_drv);
        std::size_t served = 0;
        double matching = 0.0;
        double pickup = 0.0;
        double empty_km = 0.0;
        for (const auto& t : day_result.trips) {
            if (!t.served) continue;
            ++served;
            matching += t.matching_time;
            pickup += t.pickup_time;
            row.pax_km += t.trip_km;
            empty_km += t.pickup_km;
        }
        // vehicles drive every passenger km plus the pickup legs
        row.veh_km = row.pax_km + empty_km;
        row.served_share = static_cast<double>(served) / static_cast<double>(n_trav);
        if (served > 0) {
            row.mean_matching = matching / static_cast<double>(served);
            row.mean_pickup = pickup / static_cast<double>(served);
        }
        row.mean_wait = row.mean_matching + row.mean_pickup;
        double profit = 0.0;
        double idle = 0.0;
        for (const auto& d : day_result.drivers) {
            profit += d.profit;
            idle += d.idle_time;
        }
        if (!day_result.drivers.empty()) {
            row.mean_driver_profit = profit / static_cast<double>(day_result.drivers.size());
            row.mean_idle = idle / static_cast<double>(day_result.drivers.size());
        }

        std::vector<std::optional<TripOutcome>> trav_exp(n_trav);
        for (std::size_t k = 0; k < trav_index.size(); ++k) {
            trav_exp[trav_index[k]] = day_result.trips[k];
        }
        std::vector<std::optional<DriverDayResult>> drv_exp(n_drv);
        for (std::size_t k = 0; k < drv_index.size(); ++k) {
            drv_exp[drv_index[k]] = day_result.drivers[k];
        }
        DayExperience experience{trav_exp, drv_exp, levers.marketing_active};
        daily_adaptation_pass(travelers, drivers, experience, params, seed, day);

        row.traveler_utility = mean_utilities(travelers, params.learning);
        row.driver_utility = mean_utilities(drivers, params.learning);
        result.ledger.push_back(std::move(row));

        if (scenario.record_trajectories) {
            record(result.trajectories, day, Side::traveler, travelers, trav_in, params);
            record(result.trajectories, day, Side::driver, drivers, drv_in, params);
        }
    }
    return result;
}

ReplicationSummary summarize(const std::vector<RunResult>& runs) {
    ReplicationSummary summary;
    if (runs.empty()) return summary;
    const std::size_t days = runs.front().ledger.size();
    const std::size_t cols = DayLedger::value_columns().size();
    const auto n = static_cast<double>(runs.size());
    summary.days.resize(days);
    for (std::size_t d = 0; d < days; ++d) {
        auto& out = summary.days[d];
        out.mean.assign(cols, 0.0);
        out.std.assign(cols, 0.0);
        std::vector<std::vector<double>> values;
        values.reserve(runs.size());
        for (const auto& r : runs) values.push_back(r.ledger.at(d).values());
        for (std::size_t c = 0; c < cols; ++c) {
            double sum = 0.0;
            for (const auto& v : values) sum += v[c];
            const double mean = sum / n;
            out.mean[c] = mean;
            if (runs.size() > 1) {
                double ss = 0.0;
                for (const auto& v : values) ss += (v[c] - mean) * (v[c] - mean);
                out.std[c] = std::sqrt(ss / (n - 1.0));
            }
        }
    }
    return summary;
}

ReplicationResult run_replications(const Scenario& scenario, unsigned threads) {
    scenario.validate();
    const auto reps = static_cast<std::size_t>(scenario.replications);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));

    ReplicationResult out;
    out.runs.resize(reps);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t r = next++; r < reps; r = next++) {
            try {
                out.runs[r] = run_experiment(scenario, replication_seed(scenario.seed, r));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    out.summary = summarize(out.runs);
    return out;
}

}  // namespace rsm
