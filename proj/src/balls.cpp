#include <horocost/balls.hpp>

#include <horocost/budget.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_set>

namespace horocost {

std::vector<Element> ball(const GroupPtr& group, const Element& center, long long radius) {
    if (radius < 0) throw GroupError("ball radius must be nonnegative");
    std::vector<Element> out;
    std::unordered_set<Element, ElementHash> seen;
    std::deque<Element> frontier;
    seen.insert(center);
    out.push_back(center);
    frontier.push_back(center);
    const std::size_t cap = element_budget();
    while (!frontier.empty()) {
        Element cur = frontier.front();
        frontier.pop_front();
        for (const Element& s : group->steps()) {
            Element next = group->multiply(cur, s);
            if (seen.count(next)) continue;
            if (group->distance(center, next) > radius) continue;
            if (out.size() >= cap) throw BudgetError("ball enumeration", out.size());
            seen.insert(next);
            out.push_back(next);
            frontier.push_back(next);
        }
    }
    std::sort(out.begin(), out.end(), [&](const Element& a, const Element& b) {
        long long na = group->distance(center, a), nb = group->distance(center, b);
        if (na != nb) return na < nb;
        return a < b;
    });
    return out;
}

std::vector<Element> shell(const GroupPtr& group, long long n, long long eps) {
    if (n < 0 || eps < 0) throw GroupError("shell parameters must be nonnegative");
    std::vector<Element> out;
    for (Element& g : ball(group, n + eps)) {
        if (group->norm(g) >= n - eps) out.push_back(std::move(g));
    }
    return out;
}

GrowthTable growth_table(const GroupPtr& group, long long n_max) {
    GrowthTable table;
    table.group = group;
    table.eps = group->slack();
    table.ball_counts.assign(static_cast<std::size_t>(n_max) + 1, 0);
    table.sphere_counts.assign(static_cast<std::size_t>(n_max) + 1, 0);
    for (const Element& g : ball(group, n_max)) {
        table.sphere_counts[static_cast<std::size_t>(group->norm(g))] += 1;
    }
    Int acc = 0;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n_max); ++k) {
        acc += table.sphere_counts[k];
        table.ball_counts[k] = acc;
    }
    for (long long n = 1; n <= n_max; ++n) {
        double lb = std::log(table.ball_counts[static_cast<std::size_t>(n)].convert_to<double>());
        table.log_ratio.push_back(lb / static_cast<double>(n));
    }
    // C = 2 log|B(3 eps)|; |B(0)| = 1 gives C = 0 when eps = 0
    Int b3e = static_cast<std::size_t>(3 * table.eps) < table.ball_counts.size()
                  ? table.ball_counts[static_cast<std::size_t>(3 * table.eps)]
                  : Int(ball(group, 3 * table.eps).size());
    table.fekete_constant = 2.0 * std::log(b3e.convert_to<double>());
    double best = std::numeric_limits<double>::infinity();
    for (long long n = 1; n <= n_max; ++n) {
        double lb = std::log(table.ball_counts[static_cast<std::size_t>(n)].convert_to<double>());
        best = std::min(best, (lb + table.fekete_constant) / static_cast<double>(n));
    }
    table.fekete_bound = best;
    return table;
}

SubadditivityReport check_subadditivity(const GroupPtr& group, long long n, long long m,
                                        long long eps) {
    if (n < eps || m < eps) throw GroupError("check_subadditivity requires n, m >= eps");
    SubadditivityReport report;
    report.n = n;
    report.m = m;
    report.eps = eps;
    auto sphere = shell(group, n + m, 0);
    auto left = shell(group, n, eps);
    report.sphere_size = sphere.size();
    for (const Element& s : sphere) {
        bool covered = false;
        for (const Element& u : left) {
            long long rest = group->distance(u, s);  // |u^{-1} s|
            if (rest >= m - eps && rest <= m + eps) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            report.passed = false;
            report.uncovered = s;
            return report;
        }
    }
    report.passed = true;
    return report;
}

Rat balanced_ratio(const GroupPtr& factor, const GroupPtr& product, long long n) {
    auto prod = std::dynamic_pointer_cast<const ProductGroup>(product);
    if (!prod) throw GroupError("balanced_ratio needs a product group");
    if (factor != prod->left() && factor != prod->right())
        throw GroupError("factor is not a declared factor of the product");
    Int num(ball(factor, n).size());
    Int den(ball(product, n).size());
    return Rat(num, den);
}

DecayResult decay_ratio(const GroupPtr& group, long long n, long long m) {
    if (m < 0 || m > n) throw GroupError("decay_ratio requires 0 <= m <= n");
    auto table = growth_table(group, n);
    DecayResult out;
    out.ratio = Rat(table.ball_count(n - m), table.ball_count(n));
    if (m > 0) {
        out.c_na = -std::log(out.ratio.convert_to<double>()) / static_cast<double>(m);
    }
    return out;
}

GrowthComparison comparable_growth_report(const GroupPtr& g1, const GroupPtr& g2,
                                          long long eps, long long n_max) {
    GrowthComparison cmp;
    cmp.eps = eps;
    for (long long n = 0; n <= n_max; ++n) {
        Int s1(shell(g1, n, eps).size());
        Int s2(shell(g2, n, eps).size());
        if (s1 == 0 || s2 == 0)
            throw GroupError("empty shell at n=" + std::to_string(n) + "; widen eps");
        cmp.f1.push_back(Rat(s2, s1));
        cmp.f2.push_back(Rat(s1, s2));
    }
    long long stride = std::max<long long>(1, 2 * eps);
    auto sums = [&](const std::vector<Rat>& f, std::vector<std::vector<Rat>>& out,
                    std::vector<bool>& trend) {
        out.assign(static_cast<std::size_t>(stride), {});
        trend.assign(static_cast<std::size_t>(stride), false);
        for (long long m = 0; m < stride; ++m) {
            Rat acc = 0;
            bool nondecreasing = true;
            Rat prev = -1;
            for (long long n = m; n <= n_max; n += stride) {
                const Rat& term = f[static_cast<std::size_t>(n)];
                if (prev >= 0 && term < prev) nondecreasing = false;
                prev = term;
                acc += term;
                out[static_cast<std::size_t>(m)].push_back(acc);
            }
            auto& series = out[static_cast<std::size_t>(m)];
            trend[static_cast<std::size_t>(m)] = nondecreasing && series.size() >= 2;
        }
    };
    sums(cmp.f1, cmp.f1_partial_sums, cmp.f1_diverging_trend);
    sums(cmp.f2, cmp.f2_partial_sums, cmp.f2_diverging_trend);
    return cmp;
}

std::vector<Element> find_separated_set(const GroupPtr& group, const std::vector<Element>& F,
                                        std::size_t size, long long search_radius) {
    bool saw_identity = false;
    for (const Element& f : F) {
        if (f == group->identity()) saw_identity = true;
        if (std::find(F.begin(), F.end(), group->inverse(f)) == F.end())
            throw GroupError("F must be symmetric");
    }
    if (!saw_identity) throw GroupError("F must contain the identity");

    std::unordered_set<Element, ElementHash> f_squared;
    for (const Element& a : F)
        for (const Element& b : F) f_squared.insert(group->multiply(a, b));

    std::vector<Element> chosen;
    for (const Element& g : ball(group, search_radius)) {
        bool ok = true;
        for (const Element& h : chosen) {
            // g f = h for some f in F^2  <=>  g^{-1} h in F^2
            if (f_squared.count(group->multiply(group->inverse(g), h))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            chosen.push_back(g);
            if (chosen.size() == size) return chosen;
        }
    }
    throw SeparationError(chosen.size());
}

}  // namespace horocost
