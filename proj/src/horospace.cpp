#include <horocost/horospace.hpp>

#include <algorithm>
#include <map>

namespace horocost {

long long WindowHorofunction::value_at(const Element& g) const {
    auto it = std::find(window.begin(), window.end(), g);
    if (it == window.end()) throw GroupError("element outside horofunction window");
    return values[static_cast<std::size_t>(it - window.begin())];
}

WindowHorofunction horofunction_window(const GroupPtr& group, const Element& x, long long n,
                                       long long R) {
    WindowHorofunction h;
    h.group = group;
    h.window_radius = R;
    h.window = ball(group, R);
    h.values.reserve(h.window.size());
    for (const Element& g : h.window) h.values.push_back(group->distance(x, g) - n);
    h.provenance = WindowHorofunction::Provenance{x, n};
    return h;
}

WindowHorofunction expand(const WindowHorofunction& h, long long k) {
    WindowHorofunction out = h;
    for (long long& v : out.values) v -= k;
    if (out.provenance) out.provenance->level += k;
    return out;
}

bool is_window_lipschitz(const WindowHorofunction& h) {
    for (std::size_t i = 0; i < h.window.size(); ++i) {
        for (std::size_t j = i + 1; j < h.window.size(); ++j) {
            long long diff = h.values[i] - h.values[j];
            if (diff < 0) diff = -diff;
            if (diff > h.group->distance(h.window[i], h.window[j])) return false;
        }
    }
    return true;
}

MuMass mu_mass(const GroupPtr& group, long long n, long long t) {
    if (n < 0) throw GroupError("mu_mass requires n >= 0");
    MuMass out;
    if (n + t < 0) {
        out.mass = 0;
        return out;
    }
    auto table = growth_table(group, std::max(n, n + t));
    out.mass = Rat(table.ball_count(n + t), table.ball_count(n));
    if (t >= 0) {
        Int b3e(ball(group, 3LL * group->slack()).size());
        Rat bound = 1;
        for (long long i = 0; i < t; ++i) bound *= b3e;
        out.upper_bound = bound;
        out.bound_ok = out.mass <= bound;
    }
    return out;
}

BoundaryCensus boundary_census(const GroupPtr& group, long long n, long long R) {
    if (R > n) throw GroupError("boundary_census requires R <= n");
    BoundaryCensus census;
    census.n = n;
    census.R = R;
    auto window = ball(group, R);
    std::map<std::vector<long long>, Int> seen;
    for (const Element& x : shell(group, n, 0)) {
        std::vector<long long> pattern;
        pattern.reserve(window.size());
        for (const Element& g : window) pattern.push_back(group->distance(x, g) - n);
        seen[pattern] += 1;
    }
    census.patterns.assign(seen.begin(), seen.end());
    return census;
}

Element section_witness(const GroupPtr& group, const WindowHorofunction& h, long long eps) {
    if (!h.provenance) throw GroupError("section_witness needs a horofunction with provenance");
    const Element& x = h.provenance->base;
    long long n = h.provenance->level;
    long long he = group->norm(x) - n;  // h(e)
    if (he <= 0) throw GroupError("section_witness requires h(e) > 0");
    if (h.window_radius < he + 2 * eps)
        throw GroupError("window radius too small for section search");
    auto value = [&](const Element& y) { return group->distance(x, y) - n; };
    // the factorization in the construction lands in SS(h(e)+eps, eps)
    for (const Element& y : shell(group, he + eps, eps)) {
        long long v = value(y);
        if (v >= -2 * eps && v <= 0) return y;
    }
    for (const Element& y : ball(group, he + 2 * eps)) {
        long long v = value(y);
        if (v >= -2 * eps && v <= 0) return y;
    }
    throw GroupError("no section witness inside the window; hypothesis violated");
}

}  // namespace horocost
