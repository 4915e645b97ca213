#include <horocost/group.hpp>

#include <horocost/budget.hpp>
#include <horocost/rng.hpp>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace horocost {

namespace {

std::size_t budget_value = 0;

std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') depth++;
        if (c == ')') depth--;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::size_t element_budget() {
    if (budget_value != 0) return budget_value;
    if (const char* env = std::getenv("HOROCOST_BUDGET")) {
        long long v = std::atoll(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 5'000'000;
}

void set_element_budget(std::size_t b) { budget_value = b; }

// ---------------------------------------------------------------- FreeGroup

FreeGroup::FreeGroup(int rank) : rank_(rank) {
    if (rank < 1 || rank > 26) throw GroupError("free group rank must be in [1, 26]");
    for (int i = 1; i <= rank; ++i) {
        steps_.push_back({{i}});
        steps_.push_back({{-i}});
    }
}

Element FreeGroup::multiply(const Element& a, const Element& b) const {
    Element out = a;
    for (std::int32_t letter : b.payload) {
        if (!out.payload.empty() && out.payload.back() == -letter) {
            out.payload.pop_back();
        } else {
            out.payload.push_back(letter);
        }
    }
    return out;
}

Element FreeGroup::inverse(const Element& a) const {
    Element out;
    out.payload.reserve(a.payload.size());
    for (auto it = a.payload.rbegin(); it != a.payload.rend(); ++it) {
        out.payload.push_back(-*it);
    }
    return out;
}

std::string FreeGroup::describe() const { return "free(" + std::to_string(rank_) + ")"; }

std::string FreeGroup::format(const Element& a) const {
    if (a.payload.empty()) return "e";
    std::string out;
    for (std::int32_t letter : a.payload) {
        int idx = std::abs(letter) - 1;
        if (idx >= rank_) throw GroupError("letter outside group rank");
        out += static_cast<char>((letter > 0 ? 'a' : 'A') + idx);
    }
    return out;
}

Element FreeGroup::parse(const std::string& text) const {
    Element out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == ' ' || c == '*' || c == '.') continue;
        if (c == 'e' && out.payload.empty() && text.find_first_of("abcdefghijklmnopqrstuvwxyz", i + 1) == std::string::npos) {
            continue;  // lone identity marker
        }
        std::int32_t letter;
        if (c >= 'a' && c <= 'z') {
            letter = c - 'a' + 1;
        } else if (c >= 'A' && c <= 'Z') {
            letter = -(c - 'A' + 1);
        } else {
            throw GroupError("bad free-group word: " + text);
        }
        if (std::abs(letter) > rank_) throw GroupError("letter outside rank: " + text);
        if (text.compare(i + 1, 3, "^-1") == 0) {
            letter = -letter;
            i += 3;
        }
        out = multiply(out, Element{{letter}});
    }
    return out;
}

// -------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> generators)
    : table_(std::move(table)) {
    int n = static_cast<int>(table_.size());
    if (n == 0) throw GroupError("empty multiplication table");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n) throw GroupError("table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw GroupError("table entry out of range");
    }
    for (int i = 0; i < n; ++i) {
        if (table_[0][i] != i || table_[i][0] != i)
            throw GroupError("index 0 must be the identity");
    }
    inverse_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (table_[i][j] == 0) {
                inverse_[i] = j;
                break;
            }
        }
        if (inverse_[i] < 0) throw GroupError("element without inverse");
    }

    std::vector<int> gens = std::move(generators);
    if (gens.empty() && n > 1) throw GroupError("finite group needs a generating set");
    std::unordered_set<int> gen_set;
    for (int g : gens) {
        if (g <= 0 || g >= n) throw GroupError("generator index out of range");
        gen_set.insert(g);
        gen_set.insert(inverse_[g]);
    }
    for (int g : gen_set) steps_.push_back({{g}});
    std::sort(steps_.begin(), steps_.end());

    // word metric by BFS from the identity
    norms_.assign(n, -1);
    norms_[0] = 0;
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int cur = frontier.front();
        frontier.pop_front();
        for (int g : gen_set) {
            int nxt = table_[cur][g];
            if (norms_[nxt] < 0) {
                norms_[nxt] = norms_[cur] + 1;
                frontier.push_back(nxt);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (norms_[i] < 0) throw GroupError("declared generators do not generate the group");
    }
}

std::shared_ptr<const FiniteGroup> FiniteGroup::trivial() {
    return std::make_shared<FiniteGroup>(std::vector<std::vector<int>>{{0}}, std::vector<int>{});
}

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(int order) {
    if (order < 1) throw GroupError("cyclic order must be positive");
    if (order == 1) return trivial();
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) table[i][j] = (i + j) % order;
    return std::make_shared<FiniteGroup>(std::move(table), std::vector<int>{1});
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GroupError("cannot open table file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw GroupError("empty table file: " + path);
    // header row: generator indices, e.g. "gens,1,2"
    std::vector<int> gens;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cell = strip(cell);
            if (cell.empty() || cell == "gens") continue;
            gens.push_back(std::stoi(cell));
        }
    }
    std::vector<std::vector<int>> table;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        std::vector<int> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stoi(strip(cell)));
        table.push_back(std::move(row));
    }
    return std::make_shared<FiniteGroup>(std::move(table), std::move(gens));
}

int FiniteGroup::index_of(const Element& a) const {
    if (a.payload.size() != 1 || a.payload[0] < 0 ||
        a.payload[0] >= static_cast<int>(table_.size()))
        throw GroupError("element does not belong to this finite group");
    return a.payload[0];
}

Element FiniteGroup::multiply(const Element& a, const Element& b) const {
    return {{table_[index_of(a)][index_of(b)]}};
}

Element FiniteGroup::inverse(const Element& a) const { return {{inverse_[index_of(a)]}}; }

long long FiniteGroup::norm(const Element& a) const { return norms_[index_of(a)]; }

std::string FiniteGroup::describe() const {
    return "finite(order=" + std::to_string(table_.size()) + ")";
}

std::string FiniteGroup::format(const Element& a) const {
    return std::to_string(index_of(a));
}

Element FiniteGroup::parse(const std::string& text) const {
    Element out{{std::stoi(strip(text))}};
    index_of(out);
    return out;
}

// ------------------------------------------------------------- ProductGroup

ProductGroup::ProductGroup(GroupPtr left, GroupPtr right, int cq_override)
    : left_(std::move(left)), right_(std::move(right)) {
    cq_ = cq_override >= 0 ? cq_override
                           : std::max(left_->quasi_constant(), right_->quasi_constant());
    eps_ = std::max(left_->slack(), right_->slack());
    for (const Element& s : left_->steps()) steps_.push_back(pair(s, right_->identity()));
    for (const Element& s : right_->steps()) steps_.push_back(pair(left_->identity(), s));
}

Element ProductGroup::pair(const Element& l, const Element& r) const {
    Element out;
    out.payload.reserve(1 + l.payload.size() + r.payload.size());
    out.payload.push_back(static_cast<std::int32_t>(l.payload.size()));
    out.payload.insert(out.payload.end(), l.payload.begin(), l.payload.end());
    out.payload.insert(out.payload.end(), r.payload.begin(), r.payload.end());
    return out;
}

std::pair<Element, Element> ProductGroup::split(const Element& a) const {
    if (a.payload.empty()) throw GroupError("malformed product element");
    std::size_t n = static_cast<std::size_t>(a.payload[0]);
    if (1 + n > a.payload.size()) throw GroupError("malformed product element");
    Element l, r;
    l.payload.assign(a.payload.begin() + 1, a.payload.begin() + 1 + n);
    r.payload.assign(a.payload.begin() + 1 + n, a.payload.end());
    return {std::move(l), std::move(r)};
}

Element ProductGroup::identity() const { return pair(left_->identity(), right_->identity()); }

Element ProductGroup::multiply(const Element& a, const Element& b) const {
    auto [al, ar] = split(a);
    auto [bl, br] = split(b);
    return pair(left_->multiply(al, bl), right_->multiply(ar, br));
}

Element ProductGroup::inverse(const Element& a) const {
    auto [l, r] = split(a);
    return pair(left_->inverse(l), right_->inverse(r));
}

long long ProductGroup::norm(const Element& a) const {
    auto [l, r] = split(a);
    return left_->norm(l) + right_->norm(r);
}

std::string ProductGroup::describe() const {
    return "product(" + left_->describe() + ", " + right_->describe() + ")";
}

std::string ProductGroup::format(const Element& a) const {
    auto [l, r] = split(a);
    return "(" + left_->format(l) + "," + right_->format(r) + ")";
}

Element ProductGroup::parse(const std::string& text) const {
    std::string t = strip(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw GroupError("product element must be (left,right): " + text);
    auto parts = split_top_level(t.substr(1, t.size() - 2));
    if (parts.size() != 2) throw GroupError("product element must have two components");
    return pair(left_->parse(strip(parts[0])), right_->parse(strip(parts[1])));
}

// -------------------------------------------------------------- ScaledGroup

ScaledGroup::ScaledGroup(GroupPtr base, const Rat& alpha)
    : base_(std::move(base)), alpha_(alpha) {
    if (alpha_ <= 0) throw GroupError("scale factor must be positive");
    auto ceil_scale = [&](long long v) {
        Int num = numerator(alpha_) * v + denominator(alpha_) - 1;
        return static_cast<long long>(num / denominator(alpha_));
    };
    cq_ = static_cast<int>(ceil_scale(base_->quasi_constant())) + 1;
    eps_ = static_cast<int>(ceil_scale(base_->slack())) + 1;
}

long long ScaledGroup::norm(const Element& a) const {
    long long d = base_->norm(a);
    Int num = numerator(alpha_) * d + denominator(alpha_) - 1;
    return static_cast<long long>(num / denominator(alpha_));
}

std::string ScaledGroup::describe() const {
    return "scaled(" + base_->describe() + ", " + rat_string(alpha_) + ")";
}

// -------------------------------------------------------------- combinators

GroupPtr make_free(int rank) { return std::make_shared<FreeGroup>(rank); }

GroupPtr make_product(GroupPtr left, GroupPtr right) {
    auto g = std::make_shared<ProductGroup>(left, right);
    // The stored product constant is max of the factor constants; certify it
    // on a small sample and fall back to the sum if it fails.
    auto report = validate_metric_axioms(g, 200, 2, 0);
    if (!report.passed()) {
        int sum = left->quasi_constant() + right->quasi_constant();
        g = std::make_shared<ProductGroup>(std::move(left), std::move(right), sum);
    }
    return g;
}

GroupPtr make_scaled(GroupPtr base, const Rat& alpha) {
    return std::make_shared<ScaledGroup>(std::move(base), alpha);
}

GroupPtr parse_group_descriptor(const std::string& text) {
    std::string t = strip(text);
    if (t == "trivial") return FiniteGroup::trivial();
    auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')')
        throw GroupError("bad group descriptor: " + text);
    std::string head = strip(t.substr(0, open));
    std::string body = t.substr(open + 1, t.size() - open - 2);
    if (head == "free") return make_free(std::stoi(strip(body)));
    if (head == "cyclic") return FiniteGroup::cyclic(std::stoi(strip(body)));
    if (head == "finite") return FiniteGroup::from_csv(strip(body));
    auto parts = split_top_level(body);
    if (head == "product") {
        if (parts.size() != 2) throw GroupError("product needs two factors: " + text);
        return make_product(parse_group_descriptor(parts[0]), parse_group_descriptor(parts[1]));
    }
    if (head == "scaled") {
        if (parts.size() != 2) throw GroupError("scaled needs base and factor: " + text);
        std::string a = strip(parts[1]);
        Rat alpha;
        auto slash = a.find('/');
        if (slash == std::string::npos) {
            alpha = Rat(Int(a));
        } else {
            alpha = Rat(Int(a.substr(0, slash)), Int(a.substr(slash + 1)));
        }
        return make_scaled(parse_group_descriptor(parts[0]), alpha);
    }
    throw GroupError("unknown group family: " + head);
}

// --------------------------------------------------------------- validation

namespace {

std::vector<Element> small_ball(const GroupPtr& group, int radius) {
    std::vector<Element> out;
    std::unordered_set<Element, ElementHash> seen;
    std::deque<Element> frontier;
    Element e = group->identity();
    seen.insert(e);
    out.push_back(e);
    frontier.push_back(e);
    while (!frontier.empty()) {
        Element cur = frontier.front();
        frontier.pop_front();
        for (const Element& s : group->steps()) {
            Element next = group->multiply(cur, s);
            if (seen.count(next)) continue;
            if (group->norm(next) > radius) continue;
            if (out.size() >= element_budget())
                throw BudgetError("validate_metric_axioms ball", out.size());
            seen.insert(next);
            out.push_back(next);
            frontier.push_back(next);
        }
    }
    return out;
}

}  // namespace

AxiomReport validate_metric_axioms(const GroupPtr& group, int trials, int radius,
                                   std::uint64_t seed) {
    AxiomReport report;
    report.trials = trials;
    auto ball = small_ball(group, radius);
    CounterRng rng(seed, 0x6d657472ull);
    auto pick = [&]() { return ball[rng.next_below(ball.size())]; };
    auto add = [&](const std::string& axiom, std::vector<Element> w, std::string detail) {
        if (report.violations.size() < 16)
            report.violations.push_back({axiom, std::move(w), std::move(detail)});
    };
    for (int t = 0; t < trials; ++t) {
        Element g = pick(), h = pick(), f = pick();
        long long dgh = group->distance(g, h);
        long long dhg = group->distance(h, g);
        if (dgh != dhg) add("symmetry", {g, h}, "d(g,h) != d(h,g)");
        if ((dgh == 0) != (g == h)) add("identity", {g, h}, "d(g,h)=0 iff g=h fails");
        if (group->distance(group->multiply(f, g), group->multiply(f, h)) != dgh)
            add("left-invariance", {f, g, h}, "d(fg,fh) != d(g,h)");
        long long lhs = group->distance(g, f);
        long long rhs = dgh + group->distance(h, f) + group->quasi_constant();
        if (lhs > rhs)
            add("quasi-triangle", {g, h, f},
                "d(g,f)=" + std::to_string(lhs) + " > " + std::to_string(rhs));
    }
    return report;
}

}  // namespace horocost
