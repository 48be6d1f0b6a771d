#pragma once

// Slow reference simulator for one operating day. Distances come from
// Floyd-Warshall over the edge list and time advances by scanning every
// agent for the next instant, so nothing here shares logic with the
// event-queue engine under test.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "rsm/network.hpp"
#include "rsm/outcomes.hpp"
#include "rsm/platform.hpp"
#include "rsm/population.hpp"

namespace oracle {

struct DayOutcome {
    std::vector<rsm::TripOutcome> trips;
    std::vector<rsm::DriverDayResult> drivers;
};

class AllPairs {
public:
    explicit AllPairs(const rsm::NetworkGraph& g) : speed_kmh_(g.speed_kmh()) {
        std::size_t k = 0;
        for (const auto& n : g.nodes()) pos_[n.id] = k++;
        const double inf = std::numeric_limits<double>::infinity();
        d_.assign(k, std::vector<double>(k, inf));
        for (std::size_t i = 0; i < k; ++i) d_[i][i] = 0.0;
        for (const auto& e : g.edges()) {
            auto& cell = d_[pos_.at(e.from)][pos_.at(e.to)];
            cell = std::min(cell, e.length_m);
        }
        for (std::size_t m = 0; m < k; ++m)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    d_[i][j] = std::min(d_[i][j], d_[i][m] + d_[m][j]);
    }

    double meters(rsm::NodeId a, rsm::NodeId b) const { return d_[pos_.at(a)][pos_.at(b)]; }
    double seconds(rsm::NodeId a, rsm::NodeId b) const {
        return meters(a, b) / (speed_kmh_ / 3.6);
    }

private:
    double speed_kmh_;
    std::map<rsm::NodeId, std::size_t> pos_;
    std::vector<std::vector<double>> d_;
};

inline DayOutcome simulate_day(const rsm::NetworkGraph& g,
                               const std::vector<rsm::TravelerAgent>& travelers,
                               const std::vector<double>& probabilities,
                               const std::vector<rsm::DriverAgent>& drivers,
                               const rsm::PlatformLevers& levers, double day_length,
                               double patience) {
    const AllPairs paths(g);
    const double inf = std::numeric_limits<double>::infinity();

    enum class Req { waiting_to_arrive, pending, done };
    std::vector<Req> req(travelers.size(), Req::waiting_to_arrive);

    struct Drv {
        rsm::NodeId at;
        bool idle = true;
        bool off = false;
        double release = -1.0;  // time the current trip ends, -1 when none
        double busy = 0.0;
        double meters = 0.0;
        std::vector<double> fares;
    };
    std::vector<Drv> drv;
    for (const auto& d : drivers) drv.push_back(Drv{d.start_node});

    DayOutcome out;
    out.trips.resize(travelers.size());
    for (std::size_t i = 0; i < travelers.size(); ++i) {
        out.trips[i].traveler_id = travelers[i].id;
        out.trips[i].request_time = travelers[i].departure_s;
    }

    for (;;) {
        double t = inf;
        for (std::size_t i = 0; i < travelers.size(); ++i) {
            if (req[i] == Req::waiting_to_arrive) t = std::min(t, travelers[i].departure_s);
            if (req[i] == Req::pending) t = std::min(t, travelers[i].departure_s + patience);
        }
        for (const auto& d : drv)
            if (d.release >= 0.0) t = std::min(t, d.release);
        if (t == inf) break;

        bool changed = false;
        for (std::size_t i = 0; i < travelers.size(); ++i) {
            if (req[i] == Req::waiting_to_arrive && travelers[i].departure_s == t) {
                req[i] = Req::pending;
                changed = true;
            }
        }
        for (auto& d : drv) {
            if (d.release == t) {
                d.release = -1.0;
                if (t < day_length) d.idle = true; else d.off = true;
                changed = true;
            }
        }

        if (changed && t < day_length) {
            std::vector<std::size_t> queue;
            for (std::size_t i = 0; i < travelers.size(); ++i)
                if (req[i] == Req::pending) queue.push_back(i);
            std::sort(queue.begin(), queue.end(), [&](std::size_t a, std::size_t b) {
                if (travelers[a].departure_s != travelers[b].departure_s)
                    return travelers[a].departure_s < travelers[b].departure_s;
                return travelers[a].id < travelers[b].id;
            });
            for (std::size_t i : queue) {
                const auto& tr = travelers[i];
                std::size_t pick = drv.size();
                for (std::size_t k = 0; k < drv.size(); ++k) {
                    if (!drv[k].idle || drv[k].off) continue;
                    if (pick == drv.size()) { pick = k; continue; }
                    const double a = paths.seconds(drv[k].at, tr.origin);
                    const double b = paths.seconds(drv[pick].at, tr.origin);
                    if (a < b || (a == b && drivers[k].id < drivers[pick].id)) pick = k;
                }
                if (pick == drv.size()) break;

                auto& d = drv[pick];
                const double pickup_m = paths.meters(d.at, tr.origin);
                const double pickup_s = paths.seconds(d.at, tr.origin);
                const double ride_m = paths.meters(tr.origin, tr.destination);
                const double ride_s = paths.seconds(tr.origin, tr.destination);
                const double km = ride_m / 1000.0;
                const double gross = std::max(levers.min_fare, levers.per_km_fare * km);
                const bool disc = levers.discount_rate > 0.0 && probabilities[i] < 0.5;
                const double paid = disc ? gross * (1.0 - levers.discount_rate) : gross;

                auto& o = out.trips[i];
                o.served = true;
                o.driver_id = drivers[pick].id;
                o.matching_time = t - tr.departure_s;
                o.pickup_time = pickup_s;
                o.in_vehicle_time = ride_s;
                o.trip_km = km;
                o.pickup_km = pickup_m / 1000.0;
                o.gross_fare = gross;
                o.fare_paid = paid;
                o.discount_granted = gross - paid;

                const double end = t + pickup_s + ride_s;
                d.idle = false;
                d.at = tr.destination;
                d.release = end;
                d.meters += pickup_m + ride_m;
                d.busy += std::min(end, day_length) - t;
                d.fares.push_back(gross);
                req[i] = Req::done;
            }
        }

        for (std::size_t i = 0; i < travelers.size(); ++i) {
            if (req[i] == Req::pending && travelers[i].departure_s + patience == t) {
                req[i] = Req::done;
                out.trips[i].served = false;
                out.trips[i].matching_time = patience;
            }
        }
    }

    for (std::size_t k = 0; k < drivers.size(); ++k) {
        rsm::DriverDayResult r;
        r.driver_id = drivers[k].id;
        r.worked = true;
        for (double f : drv[k].fares) r.revenue += f * (1.0 - levers.commission);
        r.distance_km = drv[k].meters / 1000.0;
        r.profit = r.revenue - drivers[k].operating_cost_km * r.distance_km;
        r.idle_time = day_length - drv[k].busy;
        r.trips_served = static_cast<int>(drv[k].fares.size());
        out.drivers.push_back(r);
    }
    return out;
}

}  // namespace oracle
