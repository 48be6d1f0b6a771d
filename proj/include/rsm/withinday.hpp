#pragma once

#include <span>
#include <vector>

#include "rsm/network.hpp"
#include "rsm/outcomes.hpp"
#include "rsm/platform.hpp"
#include "rsm/population.hpp"

namespace rsm {

struct DayParams {
    double day_length_s = 4 * 3600.0;
    double patience_s = 600.0;
};

struct FareQuote {
    double traveler_pays = 0.0;
    double gross_fare = 0.0;
};

/// gross = max(min_fare, per_km_fare · km); travelers with a discount pay
/// gross · (1 − discount_rate). Drivers are always paid from gross.
FareQuote compute_fare(double distance_km, double per_km_fare, double min_fare,
                       double discount_rate, bool discounted);

/// Revenue and profit of one worked day from the gross fares of its trips.
DriverDayResult driver_settlement(std::int64_t driver_id, std::span<const double> gross_fares,
                                  double commission, double operating_cost_km,
                                  double distance_km, double idle_time);

struct DayResult {
    std::vector<TripOutcome> trips;         // aligned with the active travelers
    std::vector<DriverDayResult> drivers;   // aligned with the active drivers
};

/// Simulates one operating day with first-dispatch matching.
///
/// Matching instants are request arrivals and drivers becoming idle. All
/// arrivals and idle transitions sharing a timestamp are applied first, then
/// pending requests are scanned oldest first (ties by traveler id) and each
/// takes the idle driver with the shortest pickup time (ties by driver id).
/// A request still pending `patience_s` after it was issued leaves unserved;
/// a match at exactly that instant still counts. Drivers wait at their last
/// drop-off, stop accepting work at `day_length_s`, and finish any trip in
/// progress.
///
/// `probabilities[i]` is traveler i's participation probability at the start
/// of the day and decides discount eligibility.
DayResult run_day(const NetworkGraph& g, std::span<const TravelerAgent> travelers,
                  std::span<const double> probabilities, std::span<const DriverAgent> drivers,
                  const PlatformLevers& levers, const DayParams& params);

}  // namespace rsm
