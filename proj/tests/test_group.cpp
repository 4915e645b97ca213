#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <horocost/balls.hpp>
#include <horocost/group.hpp>
#include <horocost/rng.hpp>

using namespace horocost;

TEST_CASE("free group multiplication reduces words") {
    auto f2 = make_free(2);
    Element a = f2->parse("a"), b = f2->parse("b"), e = f2->identity();
    CHECK(f2->multiply(a, f2->inverse(a)) == e);
    CHECK(f2->multiply(f2->parse("ab"), f2->parse("Ba")) == f2->parse("aa"));
    CHECK(f2->format(f2->multiply(f2->parse("ab"), f2->parse("Ba"))) == "aa");
}

TEST_CASE("free group inversion reverses and negates") {
    auto f2 = make_free(2);
    CHECK(f2->inverse(f2->parse("ab")) == f2->parse("BA"));
    CHECK(f2->inverse(f2->identity()) == f2->identity());
}

TEST_CASE("product multiplication and inversion are componentwise") {
    auto f2 = make_free(2);
    auto prod = std::dynamic_pointer_cast<const ProductGroup>(make_product(f2, f2));
    Element ae = prod->pair(f2->parse("a"), f2->identity());
    Element eb = prod->pair(f2->identity(), f2->parse("b"));
    CHECK(prod->multiply(ae, eb) == prod->pair(f2->parse("a"), f2->parse("b")));
    Element abinv = prod->pair(f2->parse("a"), f2->parse("B"));
    CHECK(prod->inverse(abinv) == prod->pair(f2->parse("A"), f2->parse("b")));
}

TEST_CASE("distances: word length, l1 sum, ceiling scale") {
    auto f2 = make_free(2);
    CHECK(f2->distance(f2->identity(), f2->parse("aBa")) == 3);

    auto prod = std::dynamic_pointer_cast<const ProductGroup>(make_product(f2, f2));
    Element x = prod->pair(f2->parse("ab"), f2->parse("a"));
    CHECK(prod->norm(x) == 3);

    auto scaled = make_scaled(f2, Rat(3, 2));
    CHECK(scaled->norm(f2->parse("ab")) == 3);  // ceil(2 * 3/2)
}

TEST_CASE("product ball count and trivial factor") {
    auto f2 = make_free(2);
    auto prod = make_product(f2, f2);
    CHECK(ball(prod, 1).size() == 9);

    auto with_trivial = make_product(f2, FiniteGroup::trivial());
    auto t1 = growth_table(with_trivial, 4);
    auto t2 = growth_table(f2, 4);
    CHECK(t1.ball_counts == t2.ball_counts);
}

TEST_CASE("product quasi-constant is the max of the factors") {
    auto f2 = make_free(2);
    auto cq1 = make_scaled(f2, 1);            // certified C_q = 1
    auto cq2 = make_scaled(cq1, 1);           // certified C_q = 2
    CHECK(f2->quasi_constant() == 0);
    CHECK(cq2->quasi_constant() == 2);
    auto prod = make_product(f2, cq2);
    CHECK(prod->quasi_constant() == 2);
}

TEST_CASE("scaled metric balls") {
    auto f2 = make_free(2);
    auto same = make_scaled(f2, 1);
    CHECK(growth_table(same, 4).ball_counts == growth_table(f2, 4).ball_counts);

    auto doubled = make_scaled(f2, 2);
    CHECK(ball(doubled, 3).size() == 5);  // ceil(2k) <= 3 iff k <= 1

    auto halved = make_scaled(f2, Rat(1, 2));
    CHECK(ball(halved, 1).size() == 17);  // = |B_base(2)|
}

TEST_CASE("scale factor must be positive") {
    CHECK_THROWS_AS(make_scaled(make_free(2), Rat(0)), GroupError);
    CHECK_THROWS_AS(parse_group_descriptor("scaled(free(2), 0)"), GroupError);
}

TEST_CASE("descriptor round trips") {
    CHECK(parse_group_descriptor("free(2)")->describe() == "free(2)");
    CHECK(parse_group_descriptor("product(free(2), free(2))")->describe() ==
          "product(free(2), free(2))");
    CHECK(parse_group_descriptor("scaled(free(2), 3/2)")->describe() ==
          "scaled(free(2), 3/2)");
    CHECK(parse_group_descriptor("trivial")->describe() == "finite(order=1)");
    CHECK(parse_group_descriptor("cyclic(6)")->describe() == "finite(order=6)");
    CHECK_THROWS_AS(parse_group_descriptor("dihedral(3)"), GroupError);
}

TEST_CASE("metric axioms hold for built-in families") {
    CHECK(validate_metric_axioms(make_free(2), 500, 3, 1).passed());
    CHECK(validate_metric_axioms(make_product(make_free(2), make_free(2)), 500, 2, 1).passed());
    CHECK(validate_metric_axioms(make_scaled(make_free(2), Rat(3, 2)), 500, 3, 1).passed());
    CHECK(validate_metric_axioms(GroupPtr(FiniteGroup::cyclic(12)), 500, 6, 1).passed());
}

TEST_CASE("corrupted finite table is reported, not hidden") {
    // cyclic(6) with one botched product entry: identity row/column and
    // inverses stay valid so construction succeeds, the metric does not
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) table[i][j] = (i + j) % 6;
    table[2][3] = 2;
    auto corrupted = std::make_shared<FiniteGroup>(table, std::vector<int>{1});
    auto report = validate_metric_axioms(corrupted, 2000, 6, 7);
    CHECK_FALSE(report.passed());
}

TEST_CASE("left-invariance exhaustive on small balls") {
    auto f2 = make_free(2);
    auto b2 = ball(f2, 2);
    for (const auto& g : b2)
        for (const auto& h : b2)
            for (const auto& f : b2)
                CHECK(f2->distance(f2->multiply(f, g), f2->multiply(f, h)) ==
                      f2->distance(g, h));

    auto c12 = GroupPtr(FiniteGroup::cyclic(12));
    auto all = ball(c12, 6);
    REQUIRE(all.size() == 12);
    for (const auto& g : all)
        for (const auto& h : all)
            for (const auto& f : all)
                CHECK(c12->distance(c12->multiply(f, g), c12->multiply(f, h)) ==
                      c12->distance(g, h));
}

TEST_CASE("product distance equals sum of factor distances, exhaustive") {
    auto f2 = make_free(2);
    auto prod = std::dynamic_pointer_cast<const ProductGroup>(make_product(f2, f2));
    auto b = ball(GroupPtr(prod), 3);
    CounterRng rng(3, 0);
    for (int t = 0; t < 2000; ++t) {
        const Element& x = b[rng.next_below(b.size())];
        const Element& y = b[rng.next_below(b.size())];
        auto [x1, x2] = prod->split(x);
        auto [y1, y2] = prod->split(y);
        CHECK(prod->distance(x, y) == f2->distance(x1, y1) + f2->distance(x2, y2));
    }
}

TEST_CASE("associativity and involution on random triples") {
    auto f2 = make_free(2);
    auto b = ball(f2, 4);
    CounterRng rng(11, 0);
    for (int t = 0; t < 1000; ++t) {
        const Element& g = b[rng.next_below(b.size())];
        const Element& h = b[rng.next_below(b.size())];
        const Element& f = b[rng.next_below(b.size())];
        CHECK(f2->multiply(f2->multiply(g, h), f) == f2->multiply(g, f2->multiply(h, f)));
        CHECK(f2->inverse(f2->inverse(g)) == g);
        CHECK((f2->distance(f2->identity(), g) == 0) == (g == f2->identity()));
    }
}
