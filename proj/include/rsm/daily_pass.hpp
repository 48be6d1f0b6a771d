#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "rsm/adaptation.hpp"
#include "rsm/outcomes.hpp"
#include "rsm/population.hpp"

namespace rsm {

/// How awareness, marketing and word of mouth spread.
struct DiffusionParams {
    double p_marketing = 0.1;
    double p_wom = 0.1;
    // false: only agents exposed on a campaign day get a marketing delta;
    // true: every notified agent accumulates marketing each campaign day
    bool marketing_every_day = false;

    void validate() const;
};

struct AdaptationParams {
    LearningParams learning;
    ChoiceParams choice;
    TravelCostParams cost;
    DiffusionParams diffusion;
    double patience_s = 600.0;
    double shift_hours = 4.0;
};

/// Yesterday's experience, aligned with the full agent pools. Empty entries
/// mark agents that did not participate.
struct DayExperience {
    std::span<const std::optional<TripOutcome>> travelers;
    std::span<const std::optional<DriverDayResult>> drivers;
    bool campaign_active = false;
};

/// Platform-experience delta for a traveler's trip outcome.
double traveler_delta(const TravelerAgent& t, const TripOutcome& outcome,
                      const AdaptationParams& params);

/// Platform-experience delta for a driver's day.
double driver_delta(const DriverAgent& d, const DriverDayResult& result,
                    const AdaptationParams& params);

/// End-of-day learning step for both sides, in order: awareness and
/// marketing exposure (campaign days only), word of mouth among a sampled
/// fraction of each side paired at random, then experience for yesterday's
/// participants. Every delta reads only start-of-pass values, so the phases
/// do not see each other's updates. Randomness comes from substreams of
/// (seed, day).
void daily_adaptation_pass(std::span<TravelerAgent> travelers, std::span<DriverAgent> drivers,
                           const DayExperience& experience, const AdaptationParams& params,
                           std::uint64_t seed, int day);

}  // namespace rsm
