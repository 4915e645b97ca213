#include <horocost/correlations.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace horocost {

FiniteAction::FiniteAction(std::shared_ptr<const FreeGroup> group, std::vector<Rat> weights,
                           std::vector<std::vector<int>> generator_maps)
    : group_(std::move(group)), weights_(std::move(weights)), maps_(std::move(generator_maps)) {
    int n = static_cast<int>(weights_.size());
    if (static_cast<int>(maps_.size()) != group_->rank())
        throw GroupError("need one permutation per generator");
    for (const auto& perm : maps_) {
        if (static_cast<int>(perm.size()) != n) throw GroupError("permutation size mismatch");
        std::vector<int> inv(n, -1);
        for (int i = 0; i < n; ++i) {
            if (perm[i] < 0 || perm[i] >= n || inv[perm[i]] >= 0)
                throw GroupError("generator map is not a bijection");
            inv[perm[i]] = i;
        }
        inv_maps_.push_back(std::move(inv));
    }
    for (const auto& perm : maps_) {
        for (int i = 0; i < n; ++i) {
            if (weights_[i] != weights_[static_cast<std::size_t>(perm[i])])
                throw GroupError("generator map does not preserve atom weights");
        }
    }
}

Rat FiniteAction::weight(const Atom& x) const {
    if (x.payload.size() != 1) throw GroupError("bad finite-action atom");
    return weights_.at(static_cast<std::size_t>(x.payload[0]));
}

Atom FiniteAction::act(const Element& f, const Atom& x) const {
    if (x.payload.size() != 1) throw GroupError("bad finite-action atom");
    int idx = x.payload[0];
    // f = l1 l2 ... lk acts as l1 after l2 after ... after lk
    for (auto it = f.payload.rbegin(); it != f.payload.rend(); ++it) {
        std::int32_t letter = *it;
        const auto& perm = letter > 0 ? maps_[static_cast<std::size_t>(letter - 1)]
                                      : inv_maps_[static_cast<std::size_t>(-letter - 1)];
        idx = perm[static_cast<std::size_t>(idx)];
    }
    return {{idx}};
}

Observable load_observable_csv(const std::string& path, const GroupPtr& group) {
    std::ifstream in(path);
    if (!in) throw GroupError("cannot open observable file: " + path);
    Observable obs;
    std::unordered_map<std::string, int> label_index;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw GroupError("observable rows are: atom,label");
        std::string atom_text = line.substr(0, comma);
        std::string label = line.substr(comma + 1);
        auto [it, inserted] = label_index.try_emplace(label, static_cast<int>(obs.alphabet.size()));
        if (inserted) obs.alphabet.push_back(label);
        obs.support.emplace_back(group->parse(atom_text), it->second);
    }
    return obs;
}

namespace {

std::vector<Element> canonical_window(const GroupPtr& group, std::vector<Element> window) {
    bool has_identity = false;
    for (const Element& f : window) {
        if (f == group->identity()) has_identity = true;
    }
    if (!has_identity) throw GroupError("window must contain the identity");
    std::sort(window.begin(), window.end());
    window.erase(std::unique(window.begin(), window.end()), window.end());
    return window;
}

}  // namespace

CorrelationTable correlation_table(const ActionPtr& action, const Observable& obs,
                                   std::vector<Element> window) {
    CorrelationTable table;
    table.window = canonical_window(action->group(), std::move(window));
    table.alphabet = obs.alphabet;
    for (const auto& [x, a] : obs.support) {
        Rat w = action->weight(x);
        for (std::size_t fi = 0; fi < table.window.size(); ++fi) {
            int b = obs.label_of(action->act(table.window[fi], x));
            table.entries[{a, b, static_cast<int>(fi)}] += w;
        }
    }
    return table;
}

PatternMeasure pushforward_F(const ActionPtr& action, const Observable& obs,
                             std::vector<Element> window) {
    PatternMeasure pm;
    pm.window = canonical_window(action->group(), std::move(window));
    pm.alphabet = obs.alphabet;
    const GroupPtr& g = action->group();

    // phi^F(x)(f) = phi(f^{-1} x); patterns with a(e) != * come from the
    // support, the rest of F*support only contributes aggregate star mass.
    std::unordered_set<Atom, ElementHash> support_atoms;
    for (const auto& [x, a] : obs.support) support_atoms.insert(x);

    for (const auto& [x, a] : obs.support) {
        std::vector<int> pattern;
        pattern.reserve(pm.window.size());
        for (const Element& f : pm.window)
            pattern.push_back(obs.label_of(action->act(g->inverse(f), x)));
        pm.masses[pattern] += action->weight(x);
    }

    std::unordered_set<Atom, ElementHash> star_seen;
    for (const Element& f : pm.window) {
        for (const auto& [s, a] : obs.support) {
            Atom x = action->act(f, s);  // then f^{-1} x = s is in the support
            if (support_atoms.count(x) || star_seen.count(x)) continue;
            star_seen.insert(x);
            pm.star_mass += action->weight(x);
        }
    }
    return pm;
}

Rat wc_distance(const PatternMeasure& pm1, const PatternMeasure& pm2) {
    if (pm1.window != pm2.window) throw GroupError("wc_distance: window mismatch");
    if (pm1.alphabet != pm2.alphabet) throw GroupError("wc_distance: alphabet mismatch");
    Rat total = 0;
    auto it1 = pm1.masses.begin();
    auto it2 = pm2.masses.begin();
    while (it1 != pm1.masses.end() || it2 != pm2.masses.end()) {
        if (it2 == pm2.masses.end() || (it1 != pm1.masses.end() && it1->first < it2->first)) {
            total += abs(it1->second);
            ++it1;
        } else if (it1 == pm1.masses.end() || it2->first < it1->first) {
            total += abs(it2->second);
            ++it2;
        } else {
            total += abs(it1->second - it2->second);
            ++it1;
            ++it2;
        }
    }
    return total;
}

}  // namespace horocost
