#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rsm/adaptation.hpp"
#include "rsm/network.hpp"

namespace rsm {

struct TravelerAgent {
    std::int64_t id = 0;
    NodeId origin = 0;
    NodeId destination = 0;
    double departure_s = 0.0;
    // generalized cost of the public-transport alternative, lower is better
    double pt_cost = 0.0;
    AdaptiveState adaptive;
};

struct DriverAgent {
    std::int64_t id = 0;
    NodeId start_node = 0;
    double reservation_wage = 0.0;  // per hour
    double operating_cost_km = 0.0;
    AdaptiveState adaptive;
};

struct DemandParams {
    int n = 200;
    double day_length_s = 4 * 3600.0;
    double pt_factor = 1.8;
    double pt_overhead_s = 600.0;
    double min_trip_distance_m = 2000.0;
};

struct SupplyParams {
    int n = 20;
    double reservation_wage = 10.63;
    double operating_cost_km = 0.25;
};

/// pt_factor × in-vehicle seconds at network speed + overhead.
double pt_generalized_cost(const NetworkGraph& g, NodeId origin, NodeId destination,
                           double pt_factor, double pt_overhead_s);

/// Uniform O/D pairs at least `min_trip_distance_m` apart on the network,
/// uniform departures over the day. Throws ValidationError when the
/// distance filter cannot be met.
std::vector<TravelerAgent> generate_demand(const NetworkGraph& g, const DemandParams& params,
                                           const LearningParams& learning, std::uint64_t seed);

/// Drivers with start nodes drawn uniformly once.
std::vector<DriverAgent> generate_supply(const NetworkGraph& g, const SupplyParams& params,
                                         const LearningParams& learning, std::uint64_t seed);

std::vector<TravelerAgent> load_travelers(const std::filesystem::path& file,
                                          const LearningParams& learning);
std::vector<DriverAgent> load_drivers(const std::filesystem::path& file,
                                      const LearningParams& learning);

/// Checks agent invariants and that every referenced node exists in `g`.
void validate_population(const NetworkGraph& g, const std::vector<TravelerAgent>& travelers,
                         const std::vector<DriverAgent>& drivers, double day_length_s);

void save_travelers(const std::vector<TravelerAgent>& travelers, const std::filesystem::path& file);
void save_drivers(const std::vector<DriverAgent>& drivers, const std::filesystem::path& file);

}  // namespace rsm
