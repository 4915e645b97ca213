#include <horocost/onp.hpp>

#include <horocost/budget.hpp>
#include <horocost/rng.hpp>

#include <algorithm>
#include <cmath>

namespace horocost {

namespace {

// |B(r) ∩ B(x, n+C) ∩ B(y, n+C)| < m, with early exit once m is reached.
// B(r) is the enumerated set; the other two memberships are metric tests.
bool few_overlaps(const GroupPtr& g, const std::vector<Element>& ball_r, const Element& x,
                  const Element& y, long long reach, long long m) {
    long long hits = 0;
    for (const Element& z : ball_r) {
        if (g->distance(x, z) <= reach && g->distance(y, z) <= reach) {
            if (++hits >= m) return false;
        }
    }
    return true;
}

}  // namespace

long long default_onp_constant(const GroupPtr& group) {
    return 2LL * group->slack() + group->quasi_constant();
}

OnpResult onp_statistic(const OnpQuery& query) {
    OnpResult result;
    result.query = query;
    const GroupPtr& g = query.group;
    auto ball_n = ball(g, query.n);
    auto ball_r = ball(g, query.r);
    long long reach = query.n + query.C;

    if (!query.sampled) {
        std::size_t pairs = ball_n.size() * ball_n.size();
        if (pairs > element_budget())
            throw BudgetError("onp exact pair loop; use sampled mode", ball_n.size());
        result.exact = true;
        Int counted = 0;
        for (const Element& x : ball_n) {
            for (const Element& y : ball_n) {
                if (few_overlaps(g, ball_r, x, y, reach, query.m)) {
                    counted += 1;
                    if (query.collect_pairs) result.counted_pairs.emplace_back(x, y);
                }
            }
        }
        result.numerator = counted;
        result.denominator = Int(ball_n.size()) * Int(ball_n.size());
        result.estimate = result.ratio().convert_to<double>();
        return result;
    }

    result.exact = false;
    CounterRng rng(query.seed, 0x6f6e70ull);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < query.sample_count; ++i) {
        const Element& x = ball_n[rng.next_below(ball_n.size())];
        const Element& y = ball_n[rng.next_below(ball_n.size())];
        if (few_overlaps(g, ball_r, x, y, reach, query.m)) ++hits;
    }
    result.numerator = hits;
    result.denominator = query.sample_count;
    double p = static_cast<double>(hits) / static_cast<double>(query.sample_count);
    result.estimate = p;
    result.ci_halfwidth =
        1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(query.sample_count));
    return result;
}

std::vector<OnpResult> onp_sweep(const GroupPtr& group, const std::vector<long long>& n_list,
                                 const std::vector<long long>& r_list, long long C, long long m,
                                 bool sampled, std::uint64_t sample_count, std::uint64_t seed) {
    std::vector<OnpResult> out;
    for (long long n : n_list) {
        for (long long r : r_list) {
            OnpQuery q;
            q.group = group;
            q.n = n;
            q.r = r;
            q.C = C;
            q.m = m;
            q.sampled = sampled;
            q.sample_count = sample_count;
            q.seed = CounterRng::mix(seed ^ (static_cast<std::uint64_t>(n) << 32 |
                                             static_cast<std::uint64_t>(r)));
            out.push_back(onp_statistic(q));
        }
    }
    return out;
}

WitnessPath witness_path(const GroupPtr& product, const Element& x, const Element& y,
                         long long eps) {
    auto prod = std::dynamic_pointer_cast<const ProductGroup>(product);
    if (!prod) throw GroupError("witness_path needs a two-factor product group");
    const GroupPtr& g1 = prod->left();
    const GroupPtr& g2 = prod->right();
    auto [x1, x2] = prod->split(x);
    auto [y1, y2] = prod->split(y);
    long long nx1 = g1->norm(x1);
    long long ny2 = g2->norm(y2);
    long long T = std::min(nx1, ny2);

    // lexicographically least shell element u with |u^{-1} target| within
    // [residual - eps, residual + eps]
    auto pick = [eps](const GroupPtr& g, long long t, const Element& target,
                      long long residual) -> Element {
        auto candidates = shell(g, t, eps);
        std::sort(candidates.begin(), candidates.end(),
                  [](const Element& a, const Element& b) { return a.payload < b.payload; });
        for (const Element& u : candidates) {
            long long rest = g->distance(u, target);
            if (rest >= residual - eps && rest <= residual + eps) return u;
        }
        throw GroupError("sub-additivity hypothesis failed at t=" + std::to_string(t) +
                         ", residual=" + std::to_string(residual));
    };

    WitnessPath path;
    path.eps = eps;
    path.bound_x = product->norm(x) + 2 * eps + product->quasi_constant();
    path.bound_y = product->norm(y) + 2 * eps + product->quasi_constant();
    for (long long t = 0; t <= T; ++t) {
        Element xi = pick(g1, t, x1, nx1 - t);
        Element zeta = pick(g2, t, y2, ny2 - t);
        Element rho = prod->pair(xi, zeta);
        WitnessPath::Step step;
        step.point = rho;
        step.d_x = product->distance(x, rho);
        step.d_y = product->distance(y, rho);
        step.d_e = product->norm(rho);
        path.steps.push_back(std::move(step));
    }
    return path;
}

}  // namespace horocost
