#include <doctest.h>

#include <map>
#include <random>

#include "cmsq/quadorder.hpp"
#include "support/oracles.hpp"

using namespace cmsq;

TEST_CASE("fundamental discriminant validation") {
    CHECK(Order::is_fundamental(Int(-3)));
    CHECK(Order::is_fundamental(Int(-4)));
    CHECK(Order::is_fundamental(Int(-8)));
    CHECK(Order::is_fundamental(Int(-5460)));
    CHECK_FALSE(Order::is_fundamental(Int(-12)));    // -12 = 4*(-3), conductor 2
    CHECK_FALSE(Order::is_fundamental(Int(-9)));     // not squarefree
    CHECK_FALSE(Order::is_fundamental(Int(-7000))); // -7000/4 not squarefree
    CHECK_FALSE(Order::is_fundamental(Int(5)));
    CHECK_FALSE(Order::is_fundamental(Int(-5)));    // -5 = 3 mod 4
    CHECK_THROWS_AS(Order(Int(-12)), std::domain_error);
    CHECK_THROWS_AS(Order(Int(4)), std::domain_error);
}

TEST_CASE("element arithmetic and norm identities") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> coord(-20, 20);
    const long deltas[] = {-3, -4, -8, -11, -20, -24, -52, -163, -5460};
    for (long d : deltas) {
        Order O{Int(d)};
        for (int i = 0; i < 200; ++i) {
            OrderElement u{Int(coord(rng)), Int(coord(rng))};
            OrderElement v{Int(coord(rng)), Int(coord(rng))};
            CHECK(norm(O, mul(O, u, v)) == norm(O, u) * norm(O, v));
            OrderElement ucu = mul(O, u, conj(O, u));
            CHECK(ucu.y == 0);
            CHECK(ucu.x == norm(O, u));
            CHECK(norm(O, u) >= 0);
            if (norm(O, u) == 0) CHECK(is_zero(u));
            CHECK(trace(O, u) == u.x * 2 + O.trace_omega() * u.y);
            // conj is an involution and a ring hom
            CHECK(conj(O, conj(O, u)) == u);
            CHECK(conj(O, mul(O, u, v)) == mul(O, conj(O, u), conj(O, v)));
        }
    }
}

TEST_CASE("total order on O") {
    Order O{Int(-8)};
    OrderElement one{1, 0}, mone{-1, 0}, w{0, 1}, mw{0, -1}, zero{0, 0};
    CHECK(elem_positive(O, one));
    CHECK_FALSE(elem_positive(O, mone));
    CHECK(elem_positive(O, w));   // trace 0, positive imaginary part
    CHECK_FALSE(elem_positive(O, mw));
    CHECK(elem_cmp(O, mone, zero) < 0);
    CHECK(elem_cmp(O, zero, w) < 0);
    CHECK(elem_cmp(O, w, one) < 0);  // Tr(1 - w) = 2 > 0
    CHECK(elem_cmp(O, one, one) == 0);
}

TEST_CASE("class numbers: paper and derived values") {
    CHECK(class_group(Order{Int(-4)}).h == 1);
    CHECK(class_group(Order{Int(-23)}).h == 3);
    CHECK(class_group(Order{Int(-5460)}).h == 16);
    CHECK(class_group(Order{Int(-5460)}).t == 16);
}

TEST_CASE("exponent <= 2 test and composition cross-check") {
    CHECK(has_exponent_at_most_two(class_group(Order{Int(-3)})));
    CHECK(has_exponent_at_most_two(class_group(Order{Int(-5460)})));
    CHECK_FALSE(has_exponent_at_most_two(class_group(Order{Int(-23)})));

    // Gauss composition oracle agrees with the genus-theory identity.
    for (long n = 3; n <= 500; ++n) {
        Int d = -Int(n);
        if (!Order::is_fundamental(d)) continue;
        ClassGroup cg = class_group(Order{d});
        CHECK(exponent_at_most_two_by_composition(cg) ==
              has_exponent_at_most_two(cg));
    }
}

TEST_CASE("class group agrees with brute-force form count up to 2000") {
    for (long n = 3; n <= 2000; ++n) {
        Int d = -Int(n);
        if (!Order::is_fundamental(d)) continue;
        ClassGroup cg = class_group(Order{d});
        CHECK(cg.h == testing::count_reduced_forms_oracle(d));
        // ideal reps are primitive and normalized
        for (const QuadIdeal& a : cg.reps) {
            CHECK(ideal_is_primitive(Order{d}, a));
            Int na = norm(Order{d}, a.alpha);
            CHECK(na % a.n == 0);
            CHECK(gcd(na / a.n, a.n) == 1);
        }
    }
}

TEST_CASE("discriminant scan") {
    auto tiny = scan_discriminants(Int(3));
    REQUIRE(tiny.size() == 1);
    CHECK(tiny[0].first == -3);

    auto small = scan_discriminants(Int(12));
    REQUIRE(small.size() == 5);
    const long expect[] = {-3, -4, -7, -8, -11};
    for (int i = 0; i < 5; ++i) CHECK(small[i].first == expect[i]);

    CHECK(scan_discriminants(Int(2)).empty());

    auto full = scan_discriminants(Int(5500));
    CHECK(full.size() == 65);
    std::map<long, int> by_h;
    for (auto& [d, h] : full) by_h[mpz_get_si(h.get_mpz_t())]++;
    CHECK(by_h[1] == 9);
    CHECK(by_h[2] == 18);
    CHECK(by_h[4] == 24);
    CHECK(by_h[8] == 13);
    CHECK(by_h[16] == 1);
}

TEST_CASE("elements of given norm") {
    Order O4{Int(-4)};
    auto units = elements_of_norm(O4, Int(1));
    CHECK(units.size() == 4);  // +-1, +-i

    Order O20{Int(-20)};
    auto v = elements_of_norm(O20, Int(5));
    REQUIRE(v.size() == 2);  // +-omega, omega = sqrt(-5)
    CHECK(v[0] == OrderElement{Int(0), Int(-1)});
    CHECK(v[1] == OrderElement{Int(0), Int(1)});

    auto z = elements_of_norm(O20, Int(0));
    REQUIRE(z.size() == 1);
    CHECK(is_zero(z[0]));

    Order O3{Int(-3)};
    CHECK(elements_of_norm(O3, Int(1)).size() == 6);
}

TEST_CASE("norm enumeration complete vs box-scan oracle") {
    const long deltas[] = {-3, -4, -15, -20, -84, -163};
    for (long d : deltas) {
        Order O{Int(d)};
        ClassGroup cg = class_group(O);
        for (const QuadIdeal& a : cg.reps) {
            for (long target = 0; target <= 60; ++target) {
                auto got = elements_of_norm_in_ideal(O, a, Int(target));
                auto want = testing::elements_of_norm_box_oracle(O, a, Int(target));
                REQUIRE(got.size() == want.size());
                for (std::size_t i = 0; i < got.size(); ++i)
                    CHECK(got[i] == want[i]);
                for (const auto& e : got) CHECK(norm(O, e) == target);
            }
        }
    }
}

TEST_CASE("genus characters give a generating set") {
    for (long n : {20L, 84L, 120L, 420L, 5460L}) {
        Order O{Int(-n)};
        ClassGroup cg = class_group(O);
        auto gens = generating_set_indices(O, cg);
        Int expect_h = 1;
        for (std::size_t i = 0; i < gens.size(); ++i) expect_h *= 2;
        CHECK(expect_h == cg.h);
    }
}
