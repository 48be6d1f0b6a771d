#pragma once

#include <array>
#include <cstddef>

namespace rsm {

/// The three learned components of an agent's perceived utility.
enum class Component : std::size_t { experience = 0, wom = 1, marketing = 2 };

inline constexpr std::size_t kComponents = 3;

template <typename T>
using PerComponent = std::array<T, kComponents>;

constexpr std::size_t idx(Component c) noexcept { return static_cast<std::size_t>(c); }

/// Step sizes and S-curve steepness for the cumulative-utility updates.
struct LearningParams {
    PerComponent<double> alpha{1.0, 1.0, 1.0};
    PerComponent<double> beta{1.0, 1.0, 1.0};
    // CU is clamped to ±cu_max_scale / beta
    double cu_max_scale = 8.0;
    double u_e_init = 0.02;

    double cu_max(Component c) const noexcept { return cu_max_scale / beta[idx(c)]; }

    /// Throws ValidationError listing every violated invariant.
    void validate() const;
};

/// Logit choice between the platform and the fixed alternative.
struct ChoiceParams {
    double mu = 5.0;
    PerComponent<double> weights{0.80, 0.18, 0.02};
    double asc = 0.0;
    // utility of public transport (travelers) or not working (drivers)
    double alternative_utility = 0.5;

    void validate() const;
};

/// Generalized-cost conversion for a traveler's platform experience.
struct TravelCostParams {
    double wait_weight = 1.5;
    double time_value_scale = 1.0;
    // euros per hour used to turn fares into seconds
    double value_of_time = 10.63;

    double fare_to_time(double fare) const noexcept { return fare / value_of_time * 3600.0; }

    void validate() const;
};

/// Per-agent learning state. Stored in cumulative-utility space; utilities
/// are derived through the decreasing sigmoid.
struct AdaptiveState {
    bool notified = false;
    PerComponent<double> cu{0.0, 0.0, 0.0};

    /// Neutral WOM and marketing, experience starting at `u_e_init`.
    static AdaptiveState initial(const LearningParams& params);

    double utility(Component c, const LearningParams& params) const;

    friend bool operator==(const AdaptiveState&, const AdaptiveState&) = default;
};

/// U = 1 / (1 + exp(beta * cu)); strictly decreasing in cu, 0.5 at cu = 0.
double sigmoid_utility(double cu, double beta);

/// Inverse of sigmoid_utility: cu = ln(1/u - 1) / beta.
double inverse_sigmoid(double utility, double beta);

/// cu + alpha_c * delta, clamped to ±cu_max. A zero delta returns `cu` unchanged.
double update_component(double cu, double delta, const LearningParams& params, Component c);

/// (RW·shift − income) / (RW·shift). Positive when the day paid below the
/// reservation wage.
double driver_experience_delta(double reservation_wage, double shift_hours, double income);

/// (rs_cost − pt_cost) / pt_cost. Positive when the platform trip was worse.
double traveler_experience_delta(double pt_cost, double rs_cost);

/// Generalized cost of a served platform trip, in seconds-equivalent.
double rs_cost_served(double waiting_s, double in_vehicle_s, double fare_paid,
                      const TravelCostParams& params);

/// Generalized cost of a request that timed out: strictly worse than PT.
double rs_cost_unserved(double pt_cost, double patience_s, const TravelCostParams& params);

/// p_wom · (own WOM utility − peer perceived utility).
double wom_delta(double own_wom_utility, double peer_perceived_utility, double p_wom);

/// p_m · (own marketing utility − 1); never positive.
double marketing_delta(double own_marketing_utility, double p_m);

/// Weighted component sum without the constant. This is what agents share
/// through word of mouth.
double weighted_utility(const AdaptiveState& state, const LearningParams& learning,
                        const ChoiceParams& choice);

/// weighted_utility + asc.
double perceived_utility(const AdaptiveState& state, const LearningParams& learning,
                         const ChoiceParams& choice);

/// Binary logit against the alternative, gated by awareness.
double participation_probability(double perceived, double alternative, double mu, bool notified);

}  // namespace rsm
