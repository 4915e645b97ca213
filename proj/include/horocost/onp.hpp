#pragma once

#include <horocost/balls.hpp>
#include <horocost/group.hpp>

#include <cstdint>
#include <vector>

namespace horocost {

// Counts pairs (x,y) in B(n)^2 whose triple intersection
// B(r) ∩ B(x, n+C) ∩ B(y, n+C) has fewer than m elements.
struct OnpQuery {
    GroupPtr group;
    long long n = 0;
    long long r = 0;
    long long C = 0;  // neighborhood enlargement; 2*eps + C_q is the product-group default
    long long m = 1;
    bool sampled = false;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
    bool collect_pairs = false;  // exact mode: keep the counted pairs for cross-checks
};

struct OnpResult {
    OnpQuery query;
    bool exact = true;
    Int numerator = 0;    // counted pairs (exact) or hits (sampled)
    Int denominator = 1;  // |B(n)|^2 (exact) or sample count
    double estimate = 0.0;
    double ci_halfwidth = 0.0;  // 95% normal-approximation half-width, sampled mode
    std::vector<std::pair<Element, Element>> counted_pairs;

    Rat ratio() const { return Rat(numerator, denominator); }
};

OnpResult onp_statistic(const OnpQuery& query);

std::vector<OnpResult> onp_sweep(const GroupPtr& group, const std::vector<long long>& n_list,
                                 const std::vector<long long>& r_list, long long C, long long m,
                                 bool sampled = false, std::uint64_t sample_count = 0,
                                 std::uint64_t seed = 0);

long long default_onp_constant(const GroupPtr& group);  // 2*eps + C_q

// Discrete path rho(t) = (xi1(t), zeta2(t)) through a two-factor product,
// t = 0..min(|x1|,|y2|), with the three verified distance bounds per step.
struct WitnessPath {
    struct Step {
        Element point;
        long long d_x = 0, d_y = 0, d_e = 0;
    };
    std::vector<Step> steps;
    long long bound_x = 0;  // |x| + 2 eps + C_q
    long long bound_y = 0;
    long long eps = 0;      // d(e, rho(t)) <= 2t + 2 eps

    bool all_bounds_hold() const {
        for (std::size_t t = 0; t < steps.size(); ++t) {
            if (steps[t].d_x > bound_x || steps[t].d_y > bound_y) return false;
            if (steps[t].d_e > 2 * static_cast<long long>(t) + 2 * eps) return false;
        }
        return true;
    }
};

WitnessPath witness_path(const GroupPtr& product, const Element& x, const Element& y,
                         long long eps);

}  // namespace horocost
