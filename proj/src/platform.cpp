#include "rsm/platform.hpp"

#include <cmath>

#include "rsm/error.hpp"

namespace rsm {

void PlatformLevers::validate() const {
    std::vector<std::string> problems;
    if (!(commission >= 0.0 && commission < 1.0)) problems.push_back("commission must be in [0, 1)");
    if (!(discount_rate >= 0.0 && discount_rate < 1.0)) {
        problems.push_back("discount_rate must be in [0, 1)");
    }
    if (!(marketing_cost_per_agent >= 0.0)) {
        problems.push_back("marketing_cost_per_agent must be >= 0");
    }
    if (!(per_km_fare > 0.0)) problems.push_back("per_km_fare must be > 0");
    if (!(min_fare > 0.0)) problems.push_back("min_fare must be > 0");
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

StageSchedule::StageSchedule(std::vector<Stage> stages) : stages_(std::move(stages)) {
    std::vector<std::string> problems;
    if (stages_.empty()) problems.push_back("stage schedule is empty");
    int expected = 0;
    for (std::size_t i = 0; i < stages_.size(); ++i) {
        const auto& s = stages_[i];
        auto who = "stage " + std::to_string(i) + " '" + s.name + "'";
        if (s.start_day != expected) {
            problems.push_back(who + (s.start_day < expected ? " overlaps" : " leaves a gap after") +
                               " the previous stage (starts at day " +
                               std::to_string(s.start_day) + ", expected " +
                               std::to_string(expected) + "); stages must be contiguous");
        }
        if (s.end_day <= s.start_day) problems.push_back(who + " is empty or reversed");
        try {
            s.levers.validate();
        } catch (const ValidationError& e) {
            for (const auto& p : e.problems()) problems.push_back(who + ": " + p);
        }
        expected = s.end_day;
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

const Stage& StageSchedule::stage_for_day(int day) const {
    for (const auto& s : stages_) {
        if (day >= s.start_day && day < s.end_day) return s;
    }
    throw Error("day " + std::to_string(day) + " outside schedule horizon [0, " +
                std::to_string(horizon()) + ")");
}

StageSchedule StageSchedule::reference() {
    auto levers = [](double commission, double discount, double marketing_cost) {
        PlatformLevers l;
        l.commission = commission;
        l.discount_rate = discount;
        l.marketing_active = marketing_cost > 0.0;
        l.marketing_cost_per_agent = marketing_cost;
        return l;
    };
    return StageSchedule({
        {0, 25, "Kick-off", levers(0.10, 0.0, 0.0)},
        {25, 50, "Discount", levers(0.10, 0.40, 0.0)},
        {50, 100, "Launch", levers(0.10, 0.40, 5.0)},
        {100, 200, "Growth", levers(0.10, 0.40, 0.0)},
        {200, 300, "Maturity", levers(0.10, 0.0, 0.0)},
        {300, 400, "Greed", levers(0.50, 0.0, 0.0)},
    });
}

std::pair<PlatformLevers, std::string> levers_for_day(const StageSchedule& schedule, int day) {
    const auto& s = schedule.stage_for_day(day);
    return {s.levers, s.name};
}

bool discount_eligible(double traveler_probability, double discount_rate) {
    return discount_rate > 0.0 && traveler_probability < 0.5;
}

CashRow settle_day(std::span<const TripOutcome> outcomes, const PlatformLevers& levers,
                   int target_pool_size, double p_marketing) {
    CashRow row;
    for (const auto& o : outcomes) {
        if (!o.served) continue;
        row.commission_income += o.gross_fare * levers.commission;
        row.discount_spend += o.gross_fare - o.fare_paid;
    }
    if (levers.marketing_active) {
        row.marketing_spend = levers.marketing_cost_per_agent * target_pool_size * p_marketing;
    }
    row.net = row.commission_income - row.discount_spend - row.marketing_spend;
    row.cumulative_net = row.net;
    return row;
}

void accumulate(CashRow& row, double previous_cumulative) {
    row.cumulative_net = previous_cumulative + row.net;
}

}  // namespace rsm
