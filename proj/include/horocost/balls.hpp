#pragma once

#include <horocost/group.hpp>
#include <horocost/rational.hpp>

#include <optional>
#include <vector>

namespace horocost {

// Exact BFS enumeration of the closed ball B(center, radius), sorted in
// canonical order (norm first, then payload). Throws BudgetError past the
// element cap.
std::vector<Element> ball(const GroupPtr& group, const Element& center, long long radius);

inline std::vector<Element> ball(const GroupPtr& group, long long radius) {
    return ball(group, group->identity(), radius);
}

// Spherical shell SS(n, eps) = {x : n-eps <= |x| <= n+eps}; shell(n, 0) is
// the sphere S(n).
std::vector<Element> shell(const GroupPtr& group, long long n, long long eps);

struct GrowthTable {
    GroupPtr group;
    std::vector<Int> ball_counts;    // |B(n)|, n = 0..n_max
    std::vector<Int> sphere_counts;  // |S(n)|
    std::vector<double> log_ratio;   // log|B(n)| / n, n >= 1
    // inf_n (log|B(n)| + C)/n with C = 2 log|B(3 eps)|
    double fekete_bound = 0.0;
    double fekete_constant = 0.0;
    int eps = 1;

    const Int& ball_count(long long n) const { return ball_counts.at(static_cast<std::size_t>(n)); }
};

GrowthTable growth_table(const GroupPtr& group, long long n_max);

struct SubadditivityReport {
    long long n = 0, m = 0, eps = 0;
    bool passed = false;
    std::optional<Element> uncovered;  // first sphere element with no shell factorization
    std::size_t sphere_size = 0;
};

// Verifies SS(n,eps) * SS(m,eps) covers S(n+m), element by element.
SubadditivityReport check_subadditivity(const GroupPtr& group, long long n, long long m,
                                        long long eps);

// |B(factor, n)| / |B(product, n)| as an exact rational; `factor` must be a
// declared factor of `product`.
Rat balanced_ratio(const GroupPtr& factor, const GroupPtr& product, long long n);

struct DecayResult {
    Rat ratio;                    // |B(n-m)| / |B(n)|
    std::optional<double> c_na;   // -log(ratio)/m, absent when m = 0
};

DecayResult decay_ratio(const GroupPtr& group, long long n, long long m);

struct GrowthComparison {
    long long eps = 1;
    // f1[n] * |SS(g1,n,eps)| = |SS(g2,n,eps)| with equality; f2 symmetric.
    std::vector<Rat> f1, f2;
    // partial sums of f_i(2*k*eps + m) per residue m (stride max(1, 2*eps))
    std::vector<std::vector<Rat>> f1_partial_sums, f2_partial_sums;
    std::vector<bool> f1_diverging_trend, f2_diverging_trend;
};

GrowthComparison comparable_growth_report(const GroupPtr& g1, const GroupPtr& g2,
                                          long long eps, long long n_max);

class SeparationError : public std::runtime_error {
public:
    SeparationError(std::size_t achieved_)
        : std::runtime_error("search radius exhausted; max separated size achieved: " +
                             std::to_string(achieved_)),
          achieved(achieved_) {}
    std::size_t achieved;
};

// Greedily selects `size` pairwise F^2-separated elements of B(search_radius)
// in canonical order. F must be finite, symmetric and contain e.
std::vector<Element> find_separated_set(const GroupPtr& group, const std::vector<Element>& F,
                                        std::size_t size, long long search_radius);

}  // namespace horocost
