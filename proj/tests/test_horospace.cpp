#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <horocost/horospace.hpp>
#include <horocost/rng.hpp>

using namespace horocost;

TEST_CASE("horofunction window values") {
    auto f2 = make_free(2);
    auto h = horofunction_window(f2, f2->identity(), 0, 1);
    CHECK(h.value_at_identity() == 0);
    for (const Element& s : f2->steps()) CHECK(h.value_at(s) == 1);

    auto g = horofunction_window(f2, f2->parse("aaa"), 3, 1);
    CHECK(g.value_at_identity() == 0);
    CHECK(g.value_at(f2->parse("a")) == -1);
    CHECK(g.value_at(f2->parse("A")) == 1);
    CHECK(g.value_at(f2->parse("b")) == 1);
    CHECK(g.value_at(f2->parse("B")) == 1);
}

TEST_CASE("every generated window is 1-Lipschitz") {
    auto f2 = make_free(2);
    auto sphere = shell(f2, 4, 0);
    for (std::size_t i = 0; i < sphere.size(); i += 7) {
        auto h = horofunction_window(f2, sphere[i], 4, 2);
        CHECK(is_window_lipschitz(h));
    }
}

TEST_CASE("expand shifts values and level") {
    auto f2 = make_free(2);
    auto h = horofunction_window(f2, f2->parse("abA"), 2, 1);
    CHECK(expand(h, 0).values == h.values);
    CHECK(expand(expand(h, 1), -1).values == h.values);

    auto shifted = expand(h, 2);
    CHECK(shifted.provenance->level == 4);
    auto direct = horofunction_window(f2, f2->parse("abA"), 4, 1);
    CHECK(shifted.values == direct.values);
}

TEST_CASE("mu masses are exact ball ratios") {
    auto f2 = make_free(2);
    CHECK(mu_mass(f2, 3, 0).mass == 1);
    CHECK(mu_mass(f2, 2, 1).mass == Rat(53, 17));
    CHECK(mu_mass(f2, 5, -2).mass == Rat(53, 485));
    CHECK(mu_mass(f2, 5, -3).mass == Rat(17, 485));
    CHECK(mu_mass(f2, 1, -2).mass == 0);  // n + t < 0

    // upper bound |B(3 eps)|^t respected for t >= 0
    auto m = mu_mass(f2, 4, 2);
    CHECK(m.upper_bound.has_value());
    CHECK(m.bound_ok);

    // telescoping: mass(n, t+s) = (|B(n+t+s)|/|B(n)|)
    auto lhs = mu_mass(f2, 2, 3).mass;
    auto rhs = mu_mass(f2, 2, 1).mass * mu_mass(f2, 3, 2).mass;
    CHECK(lhs == rhs);
}

TEST_CASE("boundary census pattern counts") {
    auto f2 = make_free(2);
    for (long long n = 2; n <= 5; ++n) {
        auto census = boundary_census(f2, n, 1);
        CHECK(census.patterns.size() == 4);  // one per first letter
        Int total = 0;
        for (const auto& [pattern, count] : census.patterns) total += count;
        CHECK(total == Int(shell(f2, n, 0).size()));
    }
    CHECK(boundary_census(f2, 3, 0).patterns.size() == 1);
    for (long long n = 4; n <= 6; ++n)
        CHECK(boundary_census(f2, n, 2).patterns.size() == 12);

    // census granularity is nondecreasing in the window radius
    std::size_t prev = 0;
    for (long long R = 0; R <= 3; ++R) {
        auto census = boundary_census(f2, 6, R);
        CHECK(census.patterns.size() >= prev);
        prev = census.patterns.size();
    }
}

TEST_CASE("section witnesses land in [-2 eps, 0]") {
    auto f2 = make_free(2);
    {
        // word metric: the geodesic prefix of length h(e) has h(y) = 0
        Element x = f2->parse("abaB");
        auto h = horofunction_window(f2, x, 2, 4);
        Element y = section_witness(f2, h, 0);
        CHECK(f2->distance(x, y) - 2 == 0);
    }
    {
        Element x = f2->parse("abaBa");
        auto h = horofunction_window(f2, x, 3, 4);
        Element y = section_witness(f2, h, 1);
        long long v = f2->distance(x, y) - 3;
        CHECK(v >= -2);
        CHECK(v <= 0);
    }
    {
        // h(e) <= 0 is a precondition violation
        Element x = f2->parse("ab");
        auto h = horofunction_window(f2, x, 2, 4);
        CHECK_THROWS_AS(section_witness(f2, h, 0), GroupError);
    }
}

TEST_CASE("seeded section witnesses across the sphere") {
    auto f2 = make_free(2);
    auto sphere = shell(f2, 5, 0);
    CounterRng rng(23, 0);
    for (int t = 0; t < 100; ++t) {
        const Element& x = sphere[rng.next_below(sphere.size())];
        long long n = 3;  // h(e) = 2
        auto h = horofunction_window(f2, x, n, 5);
        for (long long eps : {0LL, 1LL}) {
            Element y = section_witness(f2, h, eps);
            long long v = f2->distance(x, y) - n;
            CHECK(v >= -2 * eps);
            CHECK(v <= 0);
        }
    }
}
