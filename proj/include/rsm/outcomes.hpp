#pragma once

#include <cstdint>

namespace rsm {

/// What happened to one traveler's request during a day.
struct TripOutcome {
    std::int64_t traveler_id = 0;
    bool served = false;
    std::int64_t driver_id = -1;  // -1 when unserved
    double request_time = 0.0;
    double matching_time = 0.0;
    double pickup_time = 0.0;
    double in_vehicle_time = 0.0;
    double trip_km = 0.0;
    double pickup_km = 0.0;
    double gross_fare = 0.0;
    double fare_paid = 0.0;
    double discount_granted = 0.0;

    double waiting_time() const noexcept { return matching_time + pickup_time; }

    friend bool operator==(const TripOutcome&, const TripOutcome&) = default;
};

/// One driver's day. All zeros when the driver did not work.
struct DriverDayResult {
    std::int64_t driver_id = 0;
    bool worked = false;
    double revenue = 0.0;
    double distance_km = 0.0;
    double profit = 0.0;
    double idle_time = 0.0;
    int trips_served = 0;

    friend bool operator==(const DriverDayResult&, const DriverDayResult&) = default;
};

}  // namespace rsm
