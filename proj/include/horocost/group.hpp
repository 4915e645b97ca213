#pragma once

#include <horocost/element.hpp>
#include <horocost/rational.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace horocost {

class GroupError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class MetricGroup;
using GroupPtr = std::shared_ptr<const MetricGroup>;

// A countable group carrying an integer-valued, left-invariant, proper
// quasi-metric: d(x,z) <= d(x,y) + d(y,z) + C_q. Word metrics have C_q = 0;
// combinators (l1 product, ceiling-scaled metric) may not.
class MetricGroup : public std::enable_shared_from_this<MetricGroup> {
public:
    enum class Kind { Free, Finite, Product, Scaled };

    virtual ~MetricGroup() = default;

    virtual Kind kind() const = 0;
    virtual Element identity() const = 0;
    virtual Element multiply(const Element& a, const Element& b) const = 0;
    virtual Element inverse(const Element& a) const = 0;
    virtual long long norm(const Element& a) const = 0;

    long long distance(const Element& a, const Element& b) const {
        return norm(multiply(inverse(a), b));
    }

    // Symmetric generator step set driving ball BFS. Along every geodesic
    // the metric is monotone under these steps for all built-in families.
    virtual const std::vector<Element>& steps() const = 0;

    virtual std::string describe() const = 0;
    virtual std::string format(const Element& a) const = 0;
    virtual Element parse(const std::string& text) const = 0;

    int quasi_constant() const { return cq_; }
    int slack() const { return eps_; }

protected:
    int cq_ = 0;
    int eps_ = 1;
};

class FreeGroup final : public MetricGroup {
public:
    explicit FreeGroup(int rank);

    Kind kind() const override { return Kind::Free; }
    Element identity() const override { return {}; }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    long long norm(const Element& a) const override {
        return static_cast<long long>(a.payload.size());
    }
    const std::vector<Element>& steps() const override { return steps_; }
    std::string describe() const override;
    std::string format(const Element& a) const override;
    Element parse(const std::string& text) const override;

    int rank() const { return rank_; }

private:
    int rank_;
    std::vector<Element> steps_;
};

// Finite group given by an explicit multiplication table (index 0 is the
// identity) and a declared symmetric generating set; the word metric is
// computed once by BFS and cached.
class FiniteGroup final : public MetricGroup {
public:
    FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> generators);

    static std::shared_ptr<const FiniteGroup> trivial();
    static std::shared_ptr<const FiniteGroup> cyclic(int order);
    static std::shared_ptr<const FiniteGroup> from_csv(const std::string& path);

    Kind kind() const override { return Kind::Finite; }
    Element identity() const override { return {{0}}; }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    long long norm(const Element& a) const override;
    const std::vector<Element>& steps() const override { return steps_; }
    std::string describe() const override;
    std::string format(const Element& a) const override;
    Element parse(const std::string& text) const override;

    int order() const { return static_cast<int>(table_.size()); }

private:
    int index_of(const Element& a) const;

    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    std::vector<long long> norms_;
    std::vector<Element> steps_;
};

// l1 product: d((a1,a2),(b1,b2)) = d1(a1,b1) + d2(a2,b2). The payload is the
// left payload length followed by both payloads.
class ProductGroup final : public MetricGroup {
public:
    // cq_override < 0 means max(C_q of factors); make_product certifies that
    // choice and falls back to the sum when certification fails.
    ProductGroup(GroupPtr left, GroupPtr right, int cq_override = -1);

    Kind kind() const override { return Kind::Product; }
    Element identity() const override;
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    long long norm(const Element& a) const override;
    const std::vector<Element>& steps() const override { return steps_; }
    std::string describe() const override;
    std::string format(const Element& a) const override;
    Element parse(const std::string& text) const override;

    const GroupPtr& left() const { return left_; }
    const GroupPtr& right() const { return right_; }

    Element pair(const Element& l, const Element& r) const;
    std::pair<Element, Element> split(const Element& a) const;

private:
    GroupPtr left_;
    GroupPtr right_;
    std::vector<Element> steps_;
};

// Same underlying group, metric ceil(alpha * d). Declared constants are
// certified upper bounds, not tight: C_q' = ceil(alpha*C_q) + 1 and
// eps' = ceil(alpha*eps) + 1.
class ScaledGroup final : public MetricGroup {
public:
    ScaledGroup(GroupPtr base, const Rat& alpha);

    Kind kind() const override { return Kind::Scaled; }
    Element identity() const override { return base_->identity(); }
    Element multiply(const Element& a, const Element& b) const override {
        return base_->multiply(a, b);
    }
    Element inverse(const Element& a) const override { return base_->inverse(a); }
    long long norm(const Element& a) const override;
    const std::vector<Element>& steps() const override { return base_->steps(); }
    std::string describe() const override;
    std::string format(const Element& a) const override { return base_->format(a); }
    Element parse(const std::string& text) const override { return base_->parse(text); }

    const GroupPtr& base() const { return base_; }
    const Rat& alpha() const { return alpha_; }

private:
    GroupPtr base_;
    Rat alpha_;
};

GroupPtr make_free(int rank);
GroupPtr make_product(GroupPtr left, GroupPtr right);
GroupPtr make_scaled(GroupPtr base, const Rat& alpha);

// Text descriptors: free(2), product(free(2), free(2)), scaled(free(2), 3/2),
// finite(path/to/table.csv), cyclic(6), trivial.
GroupPtr parse_group_descriptor(const std::string& text);

struct AxiomViolation {
    std::string axiom;
    std::vector<Element> witnesses;
    std::string detail;
};

struct AxiomReport {
    int trials = 0;
    std::vector<AxiomViolation> violations;
    bool passed() const { return violations.empty(); }
};

// Samples triples from B(radius) and checks symmetry, identity of
// indiscernibles, left-invariance and the quasi-triangle inequality with the
// declared C_q. Violations are collected, never thrown.
AxiomReport validate_metric_axioms(const GroupPtr& group, int trials, int radius,
                                   std::uint64_t seed);

}  // namespace horocost
