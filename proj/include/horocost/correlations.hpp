#pragma once

#include <horocost/group.hpp>
#include <horocost/rational.hpp>

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace horocost {

// Atoms are Elements: group elements for the regular action, single-index
// payloads for finite actions.
using Atom = Element;

class AtomicAction {
public:
    virtual ~AtomicAction() = default;
    virtual GroupPtr group() const = 0;
    virtual Rat weight(const Atom& x) const = 0;
    virtual Atom act(const Element& f, const Atom& x) const = 0;
};

using ActionPtr = std::shared_ptr<const AtomicAction>;

// Left-translation action of the group on itself with uniform atom weight.
class RegularAction final : public AtomicAction {
public:
    RegularAction(GroupPtr group, Rat atom_weight)
        : group_(std::move(group)), weight_(std::move(atom_weight)) {
        if (weight_ <= 0) throw GroupError("atom weight must be positive");
    }
    GroupPtr group() const override { return group_; }
    Rat weight(const Atom&) const override { return weight_; }
    Atom act(const Element& f, const Atom& x) const override { return group_->multiply(f, x); }

private:
    GroupPtr group_;
    Rat weight_;
};

// A free group acting on finitely many weighted atoms by one permutation per
// generator; words act letter by letter.
class FiniteAction final : public AtomicAction {
public:
    FiniteAction(std::shared_ptr<const FreeGroup> group, std::vector<Rat> weights,
                 std::vector<std::vector<int>> generator_maps);
    GroupPtr group() const override { return group_; }
    Rat weight(const Atom& x) const override;
    Atom act(const Element& f, const Atom& x) const override;

    std::size_t atom_count() const { return weights_.size(); }

private:
    std::shared_ptr<const FreeGroup> group_;
    std::vector<Rat> weights_;
    std::vector<std::vector<int>> maps_;      // per generator
    std::vector<std::vector<int>> inv_maps_;
};

// A (mu,A)-finite observable: labels on a finite support, star elsewhere.
struct Observable {
    std::vector<std::string> alphabet;
    std::vector<std::pair<Atom, int>> support;  // atom -> alphabet index

    int label_of(const Atom& x) const {  // -1 is star
        for (const auto& [a, l] : support)
            if (a == x) return l;
        return -1;
    }
};

Observable load_observable_csv(const std::string& path, const GroupPtr& group);

// C(a, b, f) = total weight of atoms x with phi(x) = a and phi(f x) = b;
// a ranges over A, b over A U {star} (star encoded as -1).
struct CorrelationTable {
    std::vector<Element> window;  // F, canonically ordered
    std::vector<std::string> alphabet;
    std::map<std::tuple<int, int, int>, Rat> entries;  // (a, b, window index)

    Rat at(int a, int b, int f) const {
        auto it = entries.find({a, b, f});
        return it == entries.end() ? Rat(0) : it->second;
    }
};

CorrelationTable correlation_table(const ActionPtr& action, const Observable& obs,
                                   std::vector<Element> window);

// Pushforward of the atom measure under x -> (f -> phi(f^{-1} x)). Patterns
// with a star at e are aggregated into star_mass; the pseudo-norm ignores
// them.
struct PatternMeasure {
    std::vector<Element> window;
    std::vector<std::string> alphabet;
    std::map<std::vector<int>, Rat> masses;  // label index per window slot, -1 star
    Rat star_mass = 0;
};

PatternMeasure pushforward_F(const ActionPtr& action, const Observable& obs,
                             std::vector<Element> window);

// Pseudo-norm distance: sum of |pm1 - pm2| over patterns with a(e) != star.
Rat wc_distance(const PatternMeasure& pm1, const PatternMeasure& pm2);

}  // namespace horocost
