#pragma once

#include <horocost/balls.hpp>
#include <horocost/group.hpp>

#include <optional>
#include <vector>

namespace horocost {

// A horofunction seen through a finite window: values on B(R) in canonical
// order. When it arises as d_x - n the provenance is kept so Expand can track
// the level.
struct WindowHorofunction {
    GroupPtr group;
    long long window_radius = 0;
    std::vector<Element> window;      // canonical order of B(R)
    std::vector<long long> values;    // parallel to window
    struct Provenance {
        Element base;
        long long level = 0;
    };
    std::optional<Provenance> provenance;

    long long value_at(const Element& g) const;
    long long value_at_identity() const { return value_at(group->identity()); }
};

WindowHorofunction horofunction_window(const GroupPtr& group, const Element& x, long long n,
                                       long long R);

// Expand^k: subtract k from every value; a provenance level n becomes n + k.
WindowHorofunction expand(const WindowHorofunction& h, long long k);

// |v(g) - v(f)| <= d(g,f) on all window pairs.
bool is_window_lipschitz(const WindowHorofunction& h);

struct MuMass {
    Rat mass;                  // |B(n+t)| / |B(n)|, or 0 when n + t < 0
    std::optional<Rat> upper_bound;  // |B(3 eps)|^t, present for t >= 0
    bool bound_ok = true;
};

MuMass mu_mass(const GroupPtr& group, long long n, long long t);

struct BoundaryCensus {
    long long n = 0, R = 0;
    // distinct window restrictions of d_x - |x| over |x| = n, with counts
    std::vector<std::pair<std::vector<long long>, Int>> patterns;
};

BoundaryCensus boundary_census(const GroupPtr& group, long long n, long long R);

// Finds y with h(y) in [-2 eps, 0] for h = d_x - n with h(e) > 0, searching
// the shell SS(h(e)+eps, eps) first and then all of B(h(e)+2 eps).
Element section_witness(const GroupPtr& group, const WindowHorofunction& h, long long eps);

}  // namespace horocost
