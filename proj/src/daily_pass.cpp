#include "rsm/daily_pass.hpp"

#include <string>
#include <vector>

#include "rsm/error.hpp"
#include "rsm/random.hpp"

namespace rsm {

void DiffusionParams::validate() const {
    std::vector<std::string> problems;
    if (!(p_marketing >= 0.0 && p_marketing <= 1.0)) {
        problems.push_back("p_marketing must be in [0, 1]");
    }
    if (!(p_wom >= 0.0 && p_wom <= 1.0)) problems.push_back("p_wom must be in [0, 1]");
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

double traveler_delta(const TravelerAgent& t, const TripOutcome& outcome,
                      const AdaptationParams& params) {
    const double rs_cost =
        outcome.served ? rs_cost_served(outcome.waiting_time(), outcome.in_vehicle_time,
                                        outcome.fare_paid, params.cost)
                       : rs_cost_unserved(t.pt_cost, params.patience_s, params.cost);
    return traveler_experience_delta(t.pt_cost, rs_cost);
}

double driver_delta(const DriverAgent& d, const DriverDayResult& result,
                    const AdaptationParams& params) {
    return driver_experience_delta(d.reservation_wage, params.shift_hours, result.profit);
}

namespace {

template <typename Agent, typename DeltaFn>
void adapt_side(std::span<Agent> agents, const DeltaFn& experience_delta, bool campaign_active,
                const AdaptationParams& params, std::uint64_t seed, int day,
                const std::string& side) {
    const auto& learning = params.learning;
    const auto& diffusion = params.diffusion;
    const std::size_t n = agents.size();

    // start-of-pass snapshot: every delta below reads from here
    std::vector<AdaptiveState> before(n);
    std::vector<double> shared(n);
    for (std::size_t i = 0; i < n; ++i) {
        before[i] = agents[i].adaptive;
        shared[i] = weighted_utility(before[i], learning, params.choice);
    }

    auto apply = [&](std::size_t i, Component c, double delta) {
        auto& cu = agents[i].adaptive.cu[idx(c)];
        cu = update_component(cu, delta, learning, c);
    };

    if (campaign_active) {
        auto rng = rng_substream(seed, static_cast<std::uint64_t>(day), "marketing-" + side);
        for (std::size_t i = 0; i < n; ++i) {
            const bool exposed = rng.bernoulli(diffusion.p_marketing);
            if (exposed) agents[i].adaptive.notified = true;
            const bool receives =
                diffusion.marketing_every_day ? agents[i].adaptive.notified : exposed;
            if (receives) {
                const double u_m = before[i].utility(Component::marketing, learning);
                apply(i, Component::marketing, marketing_delta(u_m, diffusion.p_marketing));
            }
        }
    }

    const auto sampled = static_cast<std::size_t>(diffusion.p_wom * static_cast<double>(n));
    if (sampled >= 2) {
        auto rng = rng_substream(seed, static_cast<std::uint64_t>(day), "wom-pairing-" + side);
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        // partial Fisher-Yates: the first `sampled` slots are a uniform sample
        for (std::size_t i = 0; i < sampled; ++i) {
            std::swap(order[i], order[i + rng.below(n - i)]);
        }
        for (std::size_t k = 0; k + 1 < sampled; k += 2) {
            const auto a = order[k];
            const auto b = order[k + 1];
            const double wom_a = before[a].utility(Component::wom, learning);
            const double wom_b = before[b].utility(Component::wom, learning);
            apply(a, Component::wom, wom_delta(wom_a, shared[b], diffusion.p_wom));
            apply(b, Component::wom, wom_delta(wom_b, shared[a], diffusion.p_wom));
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (auto delta = experience_delta(i)) apply(i, Component::experience, *delta);
    }
}

}  // namespace

void daily_adaptation_pass(std::span<TravelerAgent> travelers, std::span<DriverAgent> drivers,
                           const DayExperience& experience, const AdaptationParams& params,
                           std::uint64_t seed, int day) {
    if (experience.travelers.size() != travelers.size() ||
        experience.drivers.size() != drivers.size()) {
        throw Error("daily_adaptation_pass: experience must align with the agent pools");
    }
    adapt_side(
        travelers,
        [&](std::size_t i) -> std::optional<double> {
            const auto& o = experience.travelers[i];
            if (!o) return std::nullopt;
            return traveler_delta(travelers[i], *o, params);
        },
        experience.campaign_active, params, seed, day, "travelers");
    adapt_side(
        drivers,
        [&](std::size_t i) -> std::optional<double> {
            const auto& r = experience.drivers[i];
            if (!r || !r->worked) return std::nullopt;
            return driver_delta(drivers[i], *r, params);
        },
        experience.campaign_active, params, seed, day, "drivers");
}

}  // namespace rsm
