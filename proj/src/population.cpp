#include "rsm/population.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "rsm/csv.hpp"
#include "rsm/error.hpp"
#include "rsm/random.hpp"

namespace rsm {

namespace {

constexpr int kMaxDrawsPerTraveler = 10000;

NodeId random_node(const NetworkGraph& g, Rng& rng) {
    return g.nodes()[rng.below(g.nodes().size())].id;
}

}  // namespace

double pt_generalized_cost(const NetworkGraph& g, NodeId origin, NodeId destination,
                           double pt_factor, double pt_overhead_s) {
    return pt_factor * g.travel_time(origin, destination).seconds + pt_overhead_s;
}

std::vector<TravelerAgent> generate_demand(const NetworkGraph& g, const DemandParams& params,
                                           const LearningParams& learning, std::uint64_t seed) {
    if (params.n < 1) throw ValidationError("demand size n must be >= 1");
    if (!(params.day_length_s > 0.0)) throw ValidationError("day_length must be > 0");
    if (!(params.pt_factor > 0.0)) throw ValidationError("pt_factor must be > 0");
    if (!(params.pt_overhead_s >= 0.0)) throw ValidationError("pt_overhead must be >= 0");

    Rng rng(splitmix64(seed ^ 0x6465'6d61'6e64ULL));
    std::vector<TravelerAgent> out;
    out.reserve(static_cast<std::size_t>(params.n));
    for (int i = 0; i < params.n; ++i) {
        bool found = false;
        TravelerAgent t;
        for (int attempt = 0; attempt < kMaxDrawsPerTraveler; ++attempt) {
            t.origin = random_node(g, rng);
            t.destination = random_node(g, rng);
            if (t.origin == t.destination) continue;
            if (g.travel_time(t.origin, t.destination).meters >= params.min_trip_distance_m) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw ValidationError("cannot draw a trip of at least " +
                                  csv::format(params.min_trip_distance_m) + " m after " +
                                  std::to_string(kMaxDrawsPerTraveler) +
                                  " draws; graph too small for the minimum trip distance");
        }
        t.id = i;
        t.departure_s = rng.uniform(0.0, params.day_length_s);
        t.pt_cost = pt_generalized_cost(g, t.origin, t.destination, params.pt_factor,
                                        params.pt_overhead_s);
        t.adaptive = AdaptiveState::initial(learning);
        out.push_back(t);
    }
    return out;
}

std::vector<DriverAgent> generate_supply(const NetworkGraph& g, const SupplyParams& params,
                                         const LearningParams& learning, std::uint64_t seed) {
    if (params.n < 1) throw ValidationError("supply size n must be >= 1");
    if (!(params.reservation_wage > 0.0)) throw ValidationError("reservation_wage must be > 0");
    if (!(params.operating_cost_km >= 0.0)) throw ValidationError("operating_cost must be >= 0");

    Rng rng(splitmix64(seed ^ 0x7375'7070'6c79ULL));
    std::vector<DriverAgent> out;
    out.reserve(static_cast<std::size_t>(params.n));
    for (int i = 0; i < params.n; ++i) {
        out.push_back(DriverAgent{i, random_node(g, rng), params.reservation_wage,
                                  params.operating_cost_km, AdaptiveState::initial(learning)});
    }
    return out;
}

std::vector<TravelerAgent> load_travelers(const std::filesystem::path& file,
                                          const LearningParams& learning) {
    std::vector<TravelerAgent> out;
    for (const auto& row : csv::read(file, "id,origin,destination,departure_s,pt_cost")) {
        TravelerAgent t;
        t.id = csv::to_int(row, 0, file);
        t.origin = csv::to_int(row, 1, file);
        t.destination = csv::to_int(row, 2, file);
        t.departure_s = csv::to_double(row, 3, file);
        t.pt_cost = csv::to_double(row, 4, file);
        if (!(t.pt_cost > 0.0)) {
            throw ValidationError(file.string() + ":" + std::to_string(row.line) +
                                  ": pt_cost must be > 0");
        }
        t.adaptive = AdaptiveState::initial(learning);
        out.push_back(t);
    }
    return out;
}

std::vector<DriverAgent> load_drivers(const std::filesystem::path& file,
                                      const LearningParams& learning) {
    std::vector<DriverAgent> out;
    for (const auto& row : csv::read(file, "id,start_node,reservation_wage,operating_cost_km")) {
        DriverAgent d;
        d.id = csv::to_int(row, 0, file);
        d.start_node = csv::to_int(row, 1, file);
        d.reservation_wage = csv::to_double(row, 2, file);
        d.operating_cost_km = csv::to_double(row, 3, file);
        if (!(d.reservation_wage > 0.0) || !(d.operating_cost_km >= 0.0)) {
            throw ValidationError(file.string() + ":" + std::to_string(row.line) +
                                  ": reservation_wage must be > 0 and operating_cost_km >= 0");
        }
        d.adaptive = AdaptiveState::initial(learning);
        out.push_back(d);
    }
    return out;
}

void validate_population(const NetworkGraph& g, const std::vector<TravelerAgent>& travelers,
                         const std::vector<DriverAgent>& drivers, double day_length_s) {
    std::vector<std::string> problems;
    for (const auto& t : travelers) {
        auto who = "traveler " + std::to_string(t.id);
        if (!g.contains(t.origin)) problems.push_back(who + ": unknown origin node");
        if (!g.contains(t.destination)) problems.push_back(who + ": unknown destination node");
        if (t.origin == t.destination) problems.push_back(who + ": origin equals destination");
        if (!(t.departure_s >= 0.0 && t.departure_s < day_length_s)) {
            problems.push_back(who + ": departure outside [0, day_length)");
        }
        if (!(t.pt_cost > 0.0)) problems.push_back(who + ": pt_cost must be > 0");
    }
    for (const auto& d : drivers) {
        auto who = "driver " + std::to_string(d.id);
        if (!g.contains(d.start_node)) problems.push_back(who + ": unknown start node");
        if (!(d.reservation_wage > 0.0)) problems.push_back(who + ": reservation_wage must be > 0");
        if (!(d.operating_cost_km >= 0.0)) problems.push_back(who + ": operating_cost must be >= 0");
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

void save_travelers(const std::vector<TravelerAgent>& travelers, const std::filesystem::path& file) {
    std::ofstream os(file);
    if (!os) throw Error("cannot write " + file.string());
    os << "id,origin,destination,departure_s,pt_cost\n";
    for (const auto& t : travelers) {
        csv::write_row(os, {csv::format(t.id), csv::format(t.origin), csv::format(t.destination),
                            csv::format(t.departure_s), csv::format(t.pt_cost)});
    }
}

void save_drivers(const std::vector<DriverAgent>& drivers, const std::filesystem::path& file) {
    std::ofstream os(file);
    if (!os) throw Error("cannot write " + file.string());
    os << "id,start_node,reservation_wage,operating_cost_km\n";
    for (const auto& d : drivers) {
        csv::write_row(os, {csv::format(d.id), csv::format(d.start_node),
                            csv::format(d.reservation_wage), csv::format(d.operating_cost_km)});
    }
}

}  // namespace rsm
