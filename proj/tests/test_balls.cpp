#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <horocost/balls.hpp>
#include <horocost/budget.hpp>
#include <horocost/group.hpp>

using namespace horocost;

namespace {

// closed forms for the free group F_k: |S(n)| = 2k (2k-1)^{n-1}, |B(n)| by sum
Int free_sphere(int k, long long n) {
    if (n == 0) return 1;
    Int s = 2 * k;
    for (long long i = 1; i < n; ++i) s *= 2 * k - 1;
    return s;
}

Int free_ball(int k, long long n) {
    Int b = 0;
    for (long long i = 0; i <= n; ++i) b += free_sphere(k, i);
    return b;
}

}  // namespace

TEST_CASE("F2 balls match the closed form") {
    auto f2 = make_free(2);
    CHECK(ball(f2, 1).size() == 5);
    CHECK(ball(f2, 3).size() == 53);
    CHECK(ball(f2, 0) == std::vector<Element>{f2->identity()});

    // off-center balls have the same size (left-invariance)
    CHECK(ball(f2, f2->parse("ab"), 2).size() == 17);
}

TEST_CASE("shells are unions of spheres") {
    auto f2 = make_free(2);
    CHECK(shell(f2, 2, 0).size() == 12);
    CHECK(shell(f2, 2, 1).size() == 52);  // 4 + 12 + 36
    CHECK(shell(f2, 0, 0) == std::vector<Element>{f2->identity()});

    auto table = growth_table(f2, 6);
    for (long long n = 0; n <= 4; ++n) {
        for (long long eps = 0; eps <= 2; ++eps) {
            Int expected = 0;
            for (long long k = std::max<long long>(0, n - eps); k <= n + eps; ++k)
                expected += table.sphere_counts[static_cast<std::size_t>(k)];
            CHECK(Int(shell(f2, n, eps).size()) == expected);
        }
    }
}

TEST_CASE("growth tables") {
    auto f1 = make_free(1);
    auto t1 = growth_table(f1, 20);
    for (long long n = 0; n <= 20; ++n) CHECK(t1.ball_count(n) == 2 * n + 1);

    auto f2 = make_free(2);
    auto t2 = growth_table(f2, 4);
    CHECK(t2.ball_counts == std::vector<Int>{1, 5, 17, 53, 161});
    for (long long n = 0; n <= 4; ++n) CHECK(t2.ball_count(n) == free_ball(2, n));

    auto prod = make_product(f2, f2);
    auto tp = growth_table(prod, 4);
    CHECK(tp.ball_counts == std::vector<Int>{1, 9, 49, 217, 865});
    // independent convolution oracle: |B_prod(n)| = sum_k |S_1(k)| |B_2(n-k)|
    for (long long n = 0; n <= 4; ++n) {
        Int conv = 0;
        for (long long k = 0; k <= n; ++k) conv += free_sphere(2, k) * free_ball(2, n - k);
        CHECK(tp.ball_count(n) == conv);
    }

    CHECK(t2.fekete_bound >= t2.log_ratio.back());
    CHECK(t2.fekete_constant == doctest::Approx(2.0 * std::log(53.0)));  // |B(3)| at eps=1
}

TEST_CASE("approximate sub-additivity holds for word metrics") {
    auto f2 = make_free(2);
    CHECK(check_subadditivity(f2, 2, 2, 1).passed);
    CHECK(check_subadditivity(f2, 1, 1, 0).passed);
    auto prod = make_product(f2, f2);
    CHECK(check_subadditivity(prod, 2, 1, 1).passed);
}

TEST_CASE("balanced ratios are exact and shrink") {
    auto f2 = make_free(2);
    auto prod = make_product(f2, f2);
    CHECK(balanced_ratio(f2, prod, 0) == 1);
    CHECK(balanced_ratio(f2, prod, 1) == Rat(5, 9));
    CHECK(balanced_ratio(f2, prod, 2) == Rat(17, 49));
    CHECK_THROWS_AS(balanced_ratio(make_free(3), prod, 1), GroupError);
}

TEST_CASE("decay ratios") {
    auto f2 = make_free(2);
    auto d = decay_ratio(f2, 6, 1);
    CHECK(d.ratio == Rat(485, 1457));
    CHECK(d.c_na.value() == doctest::Approx(-std::log(485.0 / 1457.0)));

    auto d0 = decay_ratio(f2, 6, 0);
    CHECK(d0.ratio == 1);
    CHECK_FALSE(d0.c_na.has_value());

    auto f1 = make_free(1);
    auto amen = decay_ratio(f1, 100, 1);
    CHECK(amen.ratio == Rat(199, 201));
    CHECK(amen.c_na.value() < 0.02);  // amenable-like decay

    // stepwise telescoping: |B(n-m1-m2)|/|B(n)| factors exactly
    auto r1 = decay_ratio(f2, 6, 2).ratio;
    auto step = decay_ratio(f2, 6, 1).ratio * decay_ratio(f2, 5, 1).ratio;
    CHECK(r1 == step);
}

TEST_CASE("comparable growth report") {
    auto f2 = make_free(2);
    auto same = comparable_growth_report(f2, f2, 1, 6);
    for (const Rat& f : same.f1) CHECK(f == 1);
    // partial sums of the constant-1 sequence count their terms
    for (const auto& sums : same.f1_partial_sums) {
        for (std::size_t i = 0; i < sums.size(); ++i) CHECK(sums[i] == Int(i + 1));
    }

    auto f3 = make_free(3);
    auto cmp = comparable_growth_report(f2, f3, 0, 8);
    // f2 direction: |S(F2,n)| / |S(F3,n)| tends to zero
    for (std::size_t n = 2; n < cmp.f2.size(); ++n) CHECK(cmp.f2[n] < cmp.f2[n - 1]);
    CHECK(cmp.f2.back() < Rat(1, 50));

    auto tiny = comparable_growth_report(f2, f3, 0, 0);
    CHECK(tiny.f1 == std::vector<Rat>{1});
}

TEST_CASE("separated sets") {
    auto f2 = make_free(2);
    auto F = ball(f2, 1);
    auto pair = find_separated_set(f2, F, 2, 4);
    REQUIRE(pair.size() == 2);
    // verify separation by exhaustive F^2 products
    for (const Element& a : F)
        for (const Element& b : F) {
            Element f = f2->multiply(a, b);
            CHECK(f2->multiply(pair[0], f) != pair[1]);
            CHECK(f2->multiply(pair[1], f) != pair[0]);
        }

    CHECK(find_separated_set(f2, F, 1, 0) == std::vector<Element>{f2->identity()});

    auto c8 = GroupPtr(FiniteGroup::cyclic(8));
    auto whole = ball(c8, 4);
    REQUIRE(whole.size() == 8);
    CHECK_THROWS_AS(find_separated_set(c8, whole, 2, 4), SeparationError);
}

TEST_CASE("budget errors are structured, never silent") {
    auto f2 = make_free(2);
    set_element_budget(100);
    CHECK_THROWS_AS(ball(f2, 6), BudgetError);
    try {
        ball(f2, 6);
    } catch (const BudgetError& e) {
        CHECK(e.reached >= 100);
    }
    set_element_budget(0);  // back to default
}
