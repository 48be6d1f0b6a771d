#include "rsm/withinday.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "rsm/error.hpp"

namespace rsm {

FareQuote compute_fare(double distance_km, double per_km_fare, double min_fare,
                       double discount_rate, bool discounted) {
    FareQuote q;
    q.gross_fare = std::max(min_fare, per_km_fare * distance_km);
    q.traveler_pays = discounted ? q.gross_fare * (1.0 - discount_rate) : q.gross_fare;
    return q;
}

DriverDayResult driver_settlement(std::int64_t driver_id, std::span<const double> gross_fares,
                                  double commission, double operating_cost_km,
                                  double distance_km, double idle_time) {
    DriverDayResult r;
    r.driver_id = driver_id;
    r.worked = true;
    for (double fare : gross_fares) r.revenue += fare * (1.0 - commission);
    r.distance_km = distance_km;
    r.profit = r.revenue - operating_cost_km * distance_km;
    r.idle_time = idle_time;
    r.trips_served = static_cast<int>(gross_fares.size());
    return r;
}

namespace {

enum class EventKind { driver_idle = 0, request = 1, expiry = 2 };

struct Event {
    double time;
    EventKind kind;
    std::int64_t agent_id;  // for deterministic ordering within an instant
    std::size_t index;

    auto key() const { return std::tuple(time, static_cast<int>(kind), agent_id, index); }
    bool operator>(const Event& other) const { return key() > other.key(); }
};

struct DriverState {
    NodeId node = 0;
    bool idle = true;
    bool on_shift = true;
    double busy_in_day = 0.0;
    double meters = 0.0;
    std::vector<double> fares;
};

}  // namespace

DayResult run_day(const NetworkGraph& g, std::span<const TravelerAgent> travelers,
                  std::span<const double> probabilities, std::span<const DriverAgent> drivers,
                  const PlatformLevers& levers, const DayParams& params) {
    if (probabilities.size() != travelers.size()) {
        throw Error("run_day: one probability per active traveler is required");
    }

    DayResult result;
    result.trips.resize(travelers.size());
    std::vector<DriverState> state(drivers.size());
    for (std::size_t d = 0; d < drivers.size(); ++d) state[d].node = drivers[d].start_node;

    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    for (std::size_t i = 0; i < travelers.size(); ++i) {
        const auto& t = travelers[i];
        auto& out = result.trips[i];
        out.traveler_id = t.id;
        out.request_time = t.departure_s;
        events.push({t.departure_s, EventKind::request, t.id, i});
        events.push({t.departure_s + params.patience_s, EventKind::expiry, t.id, i});
    }

    // pending requests ordered by (request time, traveler id)
    std::vector<std::size_t> pending;
    std::vector<bool> resolved(travelers.size(), false);
    auto older = [&](std::size_t a, std::size_t b) {
        return std::pair(travelers[a].departure_s, travelers[a].id) <
               std::pair(travelers[b].departure_s, travelers[b].id);
    };

    auto dispatch = [&](double now) {
        if (now >= params.day_length_s) return;
        for (auto it = pending.begin(); it != pending.end();) {
            const std::size_t r = *it;
            const auto& traveler = travelers[r];
            std::size_t best = drivers.size();
            Trip best_pickup{std::numeric_limits<double>::infinity(), 0.0};
            for (std::size_t d = 0; d < drivers.size(); ++d) {
                if (!state[d].idle || !state[d].on_shift) continue;
                auto pickup = g.travel_time(state[d].node, traveler.origin);
                if (pickup.seconds < best_pickup.seconds ||
                    (pickup.seconds == best_pickup.seconds && best < drivers.size() &&
                     drivers[d].id < drivers[best].id)) {
                    best = d;
                    best_pickup = pickup;
                }
            }
            if (best == drivers.size()) return;  // nobody idle

            auto service = g.travel_time(traveler.origin, traveler.destination);
            auto& ds = state[best];
            const double trip_km = service.meters / 1000.0;
            const bool discounted = discount_eligible(probabilities[r], levers.discount_rate);
            auto fare = compute_fare(trip_km, levers.per_km_fare, levers.min_fare,
                                     levers.discount_rate, discounted);

            auto& out = result.trips[r];
            out.served = true;
            out.driver_id = drivers[best].id;
            out.matching_time = std::min(now - traveler.departure_s, params.patience_s);
            out.pickup_time = best_pickup.seconds;
            out.in_vehicle_time = service.seconds;
            out.trip_km = trip_km;
            out.pickup_km = best_pickup.meters / 1000.0;
            out.gross_fare = fare.gross_fare;
            out.fare_paid = fare.traveler_pays;
            out.discount_granted = fare.gross_fare - fare.traveler_pays;

            const double free_at = now + best_pickup.seconds + service.seconds;
            ds.idle = false;
            ds.node = traveler.destination;
            ds.meters += best_pickup.meters + service.meters;
            ds.busy_in_day += std::min(free_at, params.day_length_s) - now;
            ds.fares.push_back(fare.gross_fare);
            events.push({free_at, EventKind::driver_idle, drivers[best].id, best});

            resolved[r] = true;
            it = pending.erase(it);
        }
    };

    while (!events.empty()) {
        const double now = events.top().time;
        bool matching_instant = false;
        while (!events.empty() && events.top().time == now &&
               events.top().kind != EventKind::expiry) {
            auto e = events.top();
            events.pop();
            if (e.kind == EventKind::driver_idle) {
                auto& ds = state[e.index];
                if (now < params.day_length_s) {
                    ds.idle = true;
                } else {
                    ds.on_shift = false;
                }
            } else {
                pending.insert(std::upper_bound(pending.begin(), pending.end(), e.index, older),
                               e.index);
            }
            matching_instant = true;
        }
        if (matching_instant) dispatch(now);
        while (!events.empty() && events.top().time == now &&
               events.top().kind == EventKind::expiry) {
            auto e = events.top();
            events.pop();
            if (resolved[e.index]) continue;
            resolved[e.index] = true;
            pending.erase(std::find(pending.begin(), pending.end(), e.index));
            auto& out = result.trips[e.index];
            out.served = false;
            out.matching_time = params.patience_s;
        }
    }

    result.drivers.reserve(drivers.size());
    for (std::size_t d = 0; d < drivers.size(); ++d) {
        const auto& ds = state[d];
        result.drivers.push_back(driver_settlement(
            drivers[d].id, ds.fares, levers.commission, drivers[d].operating_cost_km,
            ds.meters / 1000.0, params.day_length_s - ds.busy_in_day));
    }
    return result;
}

}  // namespace rsm
