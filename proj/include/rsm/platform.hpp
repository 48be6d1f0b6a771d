#pragma once

#include <span>
#include <string>
#include <vector>

#include "rsm/outcomes.hpp"

namespace rsm {

/// Levers the platform controls on a given day.
struct PlatformLevers {
    double commission = 0.1;
    double discount_rate = 0.0;
    bool marketing_active = false;
    double marketing_cost_per_agent = 0.0;  // per reached agent per day
    double per_km_fare = 1.2;
    double min_fare = 2.0;

    void validate() const;
};

struct Stage {
    int start_day = 0;  // inclusive
    int end_day = 0;    // exclusive
    std::string name;
    PlatformLevers levers;
};

/// Contiguous, ordered stages covering [0, horizon).
class StageSchedule {
public:
    /// Throws ValidationError on gaps, overlaps, empty stages or bad levers.
    explicit StageSchedule(std::vector<Stage> stages);

    const std::vector<Stage>& stages() const noexcept { return stages_; }
    int horizon() const noexcept { return stages_.back().end_day; }

    /// The stage covering `day`. Throws Error outside [0, horizon).
    const Stage& stage_for_day(int day) const;

    /// Six-stage entry strategy: kick-off, discount, launch, growth,
    /// maturity, greed over 400 days.
    static StageSchedule reference();

private:
    std::vector<Stage> stages_;
};

/// Levers and stage name for `day`.
std::pair<PlatformLevers, std::string> levers_for_day(const StageSchedule& schedule, int day);

/// Discounts go only to travelers not yet loyal (probability below 0.5).
bool discount_eligible(double traveler_probability, double discount_rate);

struct CashRow {
    double commission_income = 0.0;
    double discount_spend = 0.0;
    double marketing_spend = 0.0;
    double net = 0.0;
    double cumulative_net = 0.0;
};

/// Variable cash flows of one day. Marketing is charged for the agents the
/// campaign actually reaches: cost × pool × p_marketing. `cumulative_net` is
/// left at `net`; the caller chains days with `accumulate`.
CashRow settle_day(std::span<const TripOutcome> outcomes, const PlatformLevers& levers,
                   int target_pool_size, double p_marketing);

/// Sets row.cumulative_net = previous_cumulative + row.net.
void accumulate(CashRow& row, double previous_cumulative);

}  // namespace rsm
