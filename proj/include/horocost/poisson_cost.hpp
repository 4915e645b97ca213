#pragma once

#include <horocost/group.hpp>
#include <horocost/rational.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace horocost {

// Atoms carry opaque Element ids; when modeling the translation action on the
// group itself they are group elements.
struct WeightedFiniteSpace {
    std::vector<Element> atoms;
    std::vector<Rat> weights;

    std::size_t size() const { return atoms.size(); }
    Rat total_mass() const;
    std::size_t index_of(const Element& a) const;
    void validate() const;
};

struct FiniteRelation {
    std::vector<int> class_of;  // parallel to atoms
    int class_count = 0;

    static FiniteRelation from_classes(const std::vector<int>& class_of);
    std::vector<std::vector<std::size_t>> classes() const;
};

struct PointConfiguration {
    std::vector<std::uint64_t> counts;  // parallel to atoms

    bool empty() const {
        for (auto c : counts)
            if (c) return false;
        return true;
    }
};

// Independent Poisson counts per atom, means equal to atom weights; every
// variate is a pure function of (seed, atom index).
PointConfiguration poisson_sample(const WeightedFiniteSpace& space, std::uint64_t seed);

// Cost of a measure-preserving finite relation: sum over classes of
// w_c * (|c| - 1), the spanning-forest optimum. Throws when atoms within a
// class carry unequal weights.
Rat finite_cost(const WeightedFiniteSpace& space, const FiniteRelation& rel);

// Graphing cost (1/2) sum_x w(x) deg(x) of an explicit symmetric edge set
// over atom indices.
Rat graphing_cost(const WeightedFiniteSpace& space,
                  const std::vector<std::pair<std::size_t, std::size_t>>& edges);

struct NormalizedCost {
    Rat value;           // cost(R|S) + 1 - mu(S)
    Rat restricted;      // cost(R|S)
    Rat section_mass;    // mu(S)
    bool gaboriau_holds; // cost(R) == cost(R|S) + mu(X \ S), checked exactly
};

NormalizedCost normalized_cost(const WeightedFiniteSpace& space, const FiniteRelation& rel,
                               const std::vector<std::size_t>& section);

// Bernoulli percolation Bern(p) on the window: each unordered edge {g, gh}
// with g in B(window_radius) appears once with probability p(h).
struct PercolationGraph {
    GroupPtr group;
    long long window_radius = 0;
    std::vector<std::pair<Element, Element>> edges;
    long long deg_e = 0;
    double p_total = 0.0;  // |p| = sum of p(h) over the support
};

PercolationGraph bern_percolation_sample(const GroupPtr& group,
                                         const std::vector<std::pair<Element, double>>& p,
                                         long long window_radius, std::uint64_t seed);

// E(x) = {(f, g) : (f^{-1} x, g^{-1} x) in G}; its vertex support is
// Ret(x, S)^{-1} = {g : g^{-1} x in S}, isolated vertices included.
struct GroupGraph {
    std::vector<Element> support;
    std::vector<std::pair<Element, Element>> edges;
};

GroupGraph build_graphing_E(const GroupPtr& group, const std::vector<Element>& S_atoms,
                            const std::vector<std::pair<Element, Element>>& G_edges,
                            const Element& x);

struct ComponentReport {
    std::vector<Element> support;  // of the union graph, sorted
    bool identity_in_support = false;
    long long deg_e = 0;
    std::size_t component_count = 0;
    std::size_t identity_component_size = 0;
};

// Union of E(x) over the points of the configuration, plus the percolation
// edges; components via union-find.
ComponentReport union_component_graph(const GroupPtr& group, const WeightedFiniteSpace& space,
                                      const PointConfiguration& config,
                                      const std::vector<Element>& S_atoms,
                                      const std::vector<std::pair<Element, Element>>& G_edges,
                                      const PercolationGraph* percolation = nullptr);

struct GraphingReport {
    int trials = 0;
    std::uint64_t seed = 0;
    double weight_mean = 0.0, weight_sigma = 0.0;      // P(e in supp Ê), sigma of the mean
    double dege_mean = 0.0, dege_sigma = 0.0;          // E[deg_e(Ê)]
    double perc_dege_mean = 0.0, perc_dege_sigma = 0.0;
    double exp_neg_mass = 0.0;                          // exp(-mu(S))
    double p_total = 0.0;                               // |p|
    Rat graph_cost = 0;                                 // cost(G|S)
    double assembled_bound = 0.0;  // exp(-mu(S)) + |p| + cost(G|S)
    std::size_t degree_subadditivity_violations = 0;
};

GraphingReport cost_bound_estimate(const GroupPtr& group, const WeightedFiniteSpace& S,
                                   const std::vector<std::pair<Element, Element>>& G_edges,
                                   const std::vector<std::pair<Element, double>>& p, int trials,
                                   std::uint64_t seed);

struct FixedProbResult {
    double value = 0.0;  // sum_k (e^{-m} m^k / k!)^2
    double bound = 0.0;  // pmf at the mode floor(m)
    bool value_le_bound = false;
};

// P(two independent Poisson(m) draws agree), summed to 1e-12 tail tolerance,
// against the mode bound max_k pmf(k) = pmf(floor(m)).
FixedProbResult poisson_fixed_prob(const Rat& mass);

}  // namespace horocost
