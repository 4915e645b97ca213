#include <horocost/poisson_cost.hpp>

#include <horocost/balls.hpp>
#include <horocost/rng.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace horocost {

namespace {

std::pair<Element, Element> canonical_edge(Element a, Element b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

struct UnionFind {
    std::vector<std::size_t> parent, rank_;
    explicit UnionFind(std::size_t n) : parent(n), rank_(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }
};

double online_sigma_of_mean(double sum, double sum_sq, int n) {
    if (n < 2) return 0.0;
    double mean = sum / n;
    double var = (sum_sq - n * mean * mean) / (n - 1);
    if (var < 0) var = 0;
    return std::sqrt(var / n);
}

}  // namespace

Rat WeightedFiniteSpace::total_mass() const {
    Rat total = 0;
    for (const Rat& w : weights) total += w;
    return total;
}

std::size_t WeightedFiniteSpace::index_of(const Element& a) const {
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i] == a) return i;
    throw GroupError("atom not in space");
}

void WeightedFiniteSpace::validate() const {
    if (atoms.size() != weights.size()) throw GroupError("atoms/weights size mismatch");
    for (const Rat& w : weights)
        if (w <= 0) throw GroupError("atom weights must be positive");
}

FiniteRelation FiniteRelation::from_classes(const std::vector<int>& class_of) {
    FiniteRelation rel;
    rel.class_of = class_of;
    int max_class = -1;
    for (int c : class_of) {
        if (c < 0) throw GroupError("class ids must be nonnegative");
        max_class = std::max(max_class, c);
    }
    rel.class_count = max_class + 1;
    return rel;
}

std::vector<std::vector<std::size_t>> FiniteRelation::classes() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(class_count));
    for (std::size_t i = 0; i < class_of.size(); ++i)
        out[static_cast<std::size_t>(class_of[i])].push_back(i);
    return out;
}

PointConfiguration poisson_sample(const WeightedFiniteSpace& space, std::uint64_t seed) {
    space.validate();
    PointConfiguration config;
    config.counts.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        CounterRng rng(seed, 0x706f6973ull ^ i);
        config.counts[i] = rng.next_poisson(space.weights[i].convert_to<double>());
    }
    return config;
}

Rat finite_cost(const WeightedFiniteSpace& space, const FiniteRelation& rel) {
    space.validate();
    if (rel.class_of.size() != space.size()) throw GroupError("relation/space size mismatch");
    Rat cost = 0;
    for (const auto& cls : rel.classes()) {
        if (cls.empty()) continue;
        const Rat& w = space.weights[cls.front()];
        for (std::size_t i : cls) {
            if (space.weights[i] != w)
                throw GroupError("relation is not measure-preserving: unequal weights in a class");
        }
        cost += w * static_cast<int>(cls.size() - 1);
    }
    return cost;
}

Rat graphing_cost(const WeightedFiniteSpace& space,
                  const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    space.validate();
    std::vector<int> degree(space.size(), 0);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : edges) {
        if (a >= space.size() || b >= space.size()) throw GroupError("edge endpoint out of range");
        if (a == b) continue;
        auto key = std::minmax(a, b);
        if (!seen.insert({key.first, key.second}).second) continue;
        degree[a]++;
        degree[b]++;
    }
    Rat cost = 0;
    for (std::size_t i = 0; i < space.size(); ++i) cost += space.weights[i] * degree[i];
    return cost / 2;
}

NormalizedCost normalized_cost(const WeightedFiniteSpace& space, const FiniteRelation& rel,
                               const std::vector<std::size_t>& section) {
    Rat full_cost = finite_cost(space, rel);
    std::vector<bool> in_section(space.size(), false);
    for (std::size_t i : section) {
        if (i >= space.size()) throw GroupError("section index out of range");
        in_section[i] = true;
    }
    // restricted relation: classes intersected with the section
    Rat restricted = 0;
    Rat outside_mass = 0;
    for (const auto& cls : rel.classes()) {
        if (cls.empty()) continue;
        std::size_t inside = 0;
        for (std::size_t i : cls) {
            if (in_section[i])
                ++inside;
            else
                outside_mass += space.weights[i];
        }
        if (inside == 0) throw GroupError("section misses an equivalence class");
        restricted += space.weights[cls.front()] * static_cast<int>(inside - 1);
    }
    NormalizedCost out;
    out.restricted = restricted;
    out.section_mass = space.total_mass() - outside_mass;
    out.value = restricted + 1 - out.section_mass;
    out.gaboriau_holds = (full_cost == restricted + outside_mass);
    return out;
}

PercolationGraph bern_percolation_sample(const GroupPtr& group,
                                         const std::vector<std::pair<Element, double>>& p,
                                         long long window_radius, std::uint64_t seed) {
    // p must be symmetric: p(h) = p(h^{-1}), no identity loops
    std::unordered_map<Element, double, ElementHash> pmap;
    for (const auto& [h, q] : p) {
        if (q < 0.0 || q > 1.0) throw GroupError("edge probability outside [0,1]");
        if (h == group->identity()) throw GroupError("p may not weight the identity");
        pmap[h] = q;
    }
    for (const auto& [h, q] : pmap) {
        auto it = pmap.find(group->inverse(h));
        if (it == pmap.end() || it->second != q)
            throw GroupError("p must be symmetric: p(h) = p(h^-1)");
    }

    PercolationGraph graph;
    graph.group = group;
    graph.window_radius = window_radius;
    for (const auto& [h, q] : pmap) graph.p_total += q;

    ElementHash hasher;
    std::set<std::pair<Element, Element>> edges;
    for (const Element& g : ball(group, window_radius)) {
        for (const auto& [h, q] : pmap) {
            Element gh = group->multiply(g, h);
            auto edge = canonical_edge(g, gh);
            if (edges.count(edge)) continue;
            // decision keyed to the unordered edge so {g,gh} and {gh,g h^-1...}
            // agree no matter which endpoint the window loop reaches first
            std::uint64_t key = CounterRng::mix(hasher(edge.first)) ^
                                CounterRng::mix(hasher(edge.second) * 0x9e3779b97f4a7c15ull);
            CounterRng rng(seed, key);
            if (rng.next_double() < q) edges.insert(edge);
        }
    }
    Element e = group->identity();
    for (const auto& [a, b] : edges) {
        graph.edges.push_back({a, b});
        if (a == e || b == e) graph.deg_e++;
    }
    return graph;
}

GroupGraph build_graphing_E(const GroupPtr& group, const std::vector<Element>& S_atoms,
                            const std::vector<std::pair<Element, Element>>& G_edges,
                            const Element& x) {
    std::unordered_set<Element, ElementHash> S_set(S_atoms.begin(), S_atoms.end());
    for (const auto& [a, b] : G_edges) {
        if (!S_set.count(a) || !S_set.count(b))
            throw GroupError("G edge endpoint outside S");
        bool mirrored = false;
        for (const auto& [c, d] : G_edges)
            if (c == b && d == a) mirrored = true;
        if (!mirrored) throw GroupError("G edge set must be symmetric");
    }
    GroupGraph out;
    std::set<std::pair<Element, Element>> edges;
    for (const Element& s : S_atoms)
        out.support.push_back(group->multiply(x, group->inverse(s)));  // g with g^{-1}x = s
    std::sort(out.support.begin(), out.support.end());
    out.support.erase(std::unique(out.support.begin(), out.support.end()), out.support.end());
    for (const auto& [a, b] : G_edges) {
        if (a == b) continue;
        Element f = group->multiply(x, group->inverse(a));
        Element g = group->multiply(x, group->inverse(b));
        edges.insert(canonical_edge(f, g));
    }
    out.edges.assign(edges.begin(), edges.end());
    return out;
}

ComponentReport union_component_graph(const GroupPtr& group, const WeightedFiniteSpace& space,
                                      const PointConfiguration& config,
                                      const std::vector<Element>& S_atoms,
                                      const std::vector<std::pair<Element, Element>>& G_edges,
                                      const PercolationGraph* percolation) {
    if (config.counts.size() != space.size())
        throw GroupError("configuration/space size mismatch");

    std::set<Element> support;
    std::set<std::pair<Element, Element>> edges;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (config.counts[i] == 0) continue;
        // atoms are group elements; each point contributes its translated copy of G
        GroupGraph ex = build_graphing_E(group, S_atoms, G_edges, space.atoms[i]);
        support.insert(ex.support.begin(), ex.support.end());
        edges.insert(ex.edges.begin(), ex.edges.end());
    }
    if (percolation) {
        for (const auto& [a, b] : percolation->edges) {
            edges.insert(canonical_edge(a, b));
            support.insert(a);
            support.insert(b);
        }
    }

    ComponentReport report;
    report.support.assign(support.begin(), support.end());
    std::map<Element, std::size_t> index;
    for (std::size_t i = 0; i < report.support.size(); ++i) index[report.support[i]] = i;

    UnionFind uf(report.support.size());
    Element e = group->identity();
    for (const auto& [a, b] : edges) {
        uf.unite(index.at(a), index.at(b));
        if (a == e || b == e) report.deg_e++;
    }
    report.identity_in_support = index.count(e) > 0;
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < report.support.size(); ++i) roots.insert(uf.find(i));
    report.component_count = roots.size();
    if (report.identity_in_support) {
        std::size_t root = uf.find(index.at(e));
        for (std::size_t i = 0; i < report.support.size(); ++i)
            if (uf.find(i) == root) report.identity_component_size++;
    }
    return report;
}

GraphingReport cost_bound_estimate(const GroupPtr& group, const WeightedFiniteSpace& S,
                                   const std::vector<std::pair<Element, Element>>& G_edges,
                                   const std::vector<std::pair<Element, double>>& p, int trials,
                                   std::uint64_t seed) {
    S.validate();
    if (S.size() == 0) throw GroupError("degenerate S: zero mass");
    if (trials < 1) throw GroupError("trials must be >= 1");

    GraphingReport report;
    report.trials = trials;
    report.seed = seed;
    double mass = S.total_mass().convert_to<double>();
    report.exp_neg_mass = std::exp(-mass);
    for (const auto& [h, q] : p) report.p_total += q;
    {
        std::vector<std::pair<std::size_t, std::size_t>> idx_edges;
        for (const auto& [a, b] : G_edges) idx_edges.emplace_back(S.index_of(a), S.index_of(b));
        report.graph_cost = graphing_cost(S, idx_edges);
    }
    report.assembled_bound =
        report.exp_neg_mass + report.p_total + report.graph_cost.convert_to<double>();

    // adjacency of G for per-point deg_e contributions
    std::unordered_map<Element, std::vector<Element>, ElementHash> g_adj;
    for (const auto& [a, b] : G_edges)
        if (!(a == b)) g_adj[a].push_back(b);

    double w_sum = 0, w_sq = 0, d_sum = 0, d_sq = 0, pd_sum = 0, pd_sq = 0;
    Element e = group->identity();
    for (int t = 0; t < trials; ++t) {
        std::uint64_t trial_seed = CounterRng::mix(seed ^ static_cast<std::uint64_t>(t));
        PointConfiguration config = poisson_sample(S, trial_seed);

        // e lies in supp Ê(Π) iff Π has a point (atoms of S are the returns)
        double hit = config.empty() ? 0.0 : 1.0;
        w_sum += hit;
        w_sq += hit;

        // deg_e(Ê(Π)): neighbors of e across all translated copies
        std::unordered_set<Element, ElementHash> neighbors;
        std::uint64_t per_point_total = 0;
        for (std::size_t i = 0; i < S.size(); ++i) {
            if (config.counts[i] == 0) continue;
            const Element& x = S.atoms[i];
            auto it = g_adj.find(x);  // f = x a^{-1} = e needs a = x
            if (it == g_adj.end()) continue;
            per_point_total += it->second.size();
            for (const Element& b : it->second)
                neighbors.insert(group->multiply(x, group->inverse(b)));
        }
        double deg = static_cast<double>(neighbors.size());
        if (neighbors.size() > per_point_total) report.degree_subadditivity_violations++;
        d_sum += deg;
        d_sq += deg * deg;

        if (!p.empty()) {
            auto perc = bern_percolation_sample(group, p, 0, trial_seed ^ 0x70657263ull);
            double pd = static_cast<double>(perc.deg_e);
            pd_sum += pd;
            pd_sq += pd * pd;
        }
    }
    report.weight_mean = w_sum / trials;
    report.weight_sigma = online_sigma_of_mean(w_sum, w_sq, trials);
    report.dege_mean = d_sum / trials;
    report.dege_sigma = online_sigma_of_mean(d_sum, d_sq, trials);
    report.perc_dege_mean = pd_sum / trials;
    report.perc_dege_sigma = online_sigma_of_mean(pd_sum, pd_sq, trials);
    return report;
}

FixedProbResult poisson_fixed_prob(const Rat& mass) {
    if (mass <= 0) throw GroupError("mass must be positive");
    double m = mass.convert_to<double>();
    FixedProbResult out;
    // pmf(k) computed iteratively: pmf(0) = e^{-m}, pmf(k) = pmf(k-1) * m / k
    double pmf = std::exp(-m);
    double sum = pmf * pmf;
    double k = 0;
    while (true) {
        k += 1;
        pmf *= m / k;
        double term = pmf * pmf;
        sum += term;
        if (k > m && term < 1e-12 * (sum + 1e-300)) break;
    }
    out.value = sum;
    double mode = std::floor(m);
    double log_pmf_mode = -m + mode * std::log(m) - std::lgamma(mode + 1.0);
    out.bound = std::exp(log_pmf_mode);
    out.value_le_bound = out.value <= out.bound + 1e-15;
    return out;
}

}  // namespace horocost
