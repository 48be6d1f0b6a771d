#include "rsm/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rsm/error.hpp"

namespace rsm {

namespace {

constexpr const char* kNames[kComponents] = {"experience", "wom", "marketing"};

}  // namespace

void LearningParams::validate() const {
    std::vector<std::string> problems;
    for (std::size_t c = 0; c < kComponents; ++c) {
        if (!(alpha[c] > 0.0) || !std::isfinite(alpha[c])) {
            problems.push_back(std::string("alpha.") + kNames[c] + " must be > 0");
        }
        if (!(beta[c] > 0.0) || !std::isfinite(beta[c])) {
            problems.push_back(std::string("beta.") + kNames[c] + " must be > 0");
        }
    }
    if (!(cu_max_scale > 0.0) || !std::isfinite(cu_max_scale)) {
        problems.push_back("cu_max_scale must be finite and > 0");
    } else if (!(sigmoid_utility(cu_max_scale, 1.0) > 0.0 &&
                 sigmoid_utility(-cu_max_scale, 1.0) < 1.0)) {
        problems.push_back("cu_max_scale saturates the sigmoid to 0 or 1");
    }
    if (!(u_e_init > 0.0 && u_e_init < 0.5)) problems.push_back("u_e_init must lie in (0, 0.5)");
    if (problems.empty()) {
        double cu0 = inverse_sigmoid(u_e_init, beta[idx(Component::experience)]);
        if (cu0 > cu_max(Component::experience)) {
            problems.push_back("u_e_init lies outside the clamp range");
        }
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

void ChoiceParams::validate() const {
    std::vector<std::string> problems;
    if (!(mu >= 0.0) || !std::isfinite(mu)) problems.push_back("mu must be >= 0");
    double sum = 0.0;
    for (std::size_t c = 0; c < kComponents; ++c) {
        if (!(weights[c] > 0.0)) {
            problems.push_back(std::string("weights.") + kNames[c] + " must be > 0");
        }
        sum += weights[c];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        problems.push_back("weights must sum to 1 (got " + std::to_string(sum) + ")");
    }
    if (!std::isfinite(asc)) problems.push_back("asc must be finite");
    if (!std::isfinite(alternative_utility)) problems.push_back("alternative_utility must be finite");
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

void TravelCostParams::validate() const {
    std::vector<std::string> problems;
    if (!(wait_weight >= 0.0)) problems.push_back("wait_weight must be >= 0");
    if (!(time_value_scale > 0.0)) problems.push_back("time_value_scale must be > 0");
    if (!(value_of_time > 0.0)) problems.push_back("value_of_time must be > 0");
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

AdaptiveState AdaptiveState::initial(const LearningParams& params) {
    AdaptiveState s;
    s.cu[idx(Component::experience)] =
        inverse_sigmoid(params.u_e_init, params.beta[idx(Component::experience)]);
    return s;
}

double AdaptiveState::utility(Component c, const LearningParams& params) const {
    return sigmoid_utility(cu[idx(c)], params.beta[idx(c)]);
}

double sigmoid_utility(double cu, double beta) { return 1.0 / (1.0 + std::exp(beta * cu)); }

double inverse_sigmoid(double utility, double beta) {
    return std::log(1.0 / utility - 1.0) / beta;
}

double update_component(double cu, double delta, const LearningParams& params, Component c) {
    if (delta == 0.0) return cu;
    const double bound = params.cu_max(c);
    return std::clamp(cu + params.alpha[idx(c)] * delta, -bound, bound);
}

double driver_experience_delta(double reservation_wage, double shift_hours, double income) {
    const double rw_day = reservation_wage * shift_hours;
    return (rw_day - income) / rw_day;
}

double traveler_experience_delta(double pt_cost, double rs_cost) {
    return (rs_cost - pt_cost) / pt_cost;
}

double rs_cost_served(double waiting_s, double in_vehicle_s, double fare_paid,
                      const TravelCostParams& params) {
    return params.time_value_scale * (params.wait_weight * waiting_s + in_vehicle_s) +
           params.fare_to_time(fare_paid);
}

double rs_cost_unserved(double pt_cost, double patience_s, const TravelCostParams& params) {
    return pt_cost + params.time_value_scale * params.wait_weight * patience_s;
}

double wom_delta(double own_wom_utility, double peer_perceived_utility, double p_wom) {
    return p_wom * (own_wom_utility - peer_perceived_utility);
}

double marketing_delta(double own_marketing_utility, double p_m) {
    return p_m * (own_marketing_utility - 1.0);
}

double weighted_utility(const AdaptiveState& state, const LearningParams& learning,
                        const ChoiceParams& choice) {
    double u = 0.0;
    for (std::size_t c = 0; c < kComponents; ++c) {
        u += choice.weights[c] * sigmoid_utility(state.cu[c], learning.beta[c]);
    }
    return u;
}

double perceived_utility(const AdaptiveState& state, const LearningParams& learning,
                         const ChoiceParams& choice) {
    return weighted_utility(state, learning, choice) + choice.asc;
}

double participation_probability(double perceived, double alternative, double mu, bool notified) {
    if (!notified) return 0.0;
    return 1.0 / (1.0 + std::exp(mu * (alternative - perceived)));
}

}  // namespace rsm
