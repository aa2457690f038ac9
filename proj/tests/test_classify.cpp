#include <doctest.h>

#include <map>

#include "cmsq/classify.hpp"

using namespace cmsq;

TEST_CASE("decomposable matrix: unit ideal gives the product polarization") {
    for (long d : {-3L, -8L, -20L, -163L}) {
        Order O{Int(d)};
        ClassGroup cg = class_group(O);
        // principal class rep comes from the principal form (a = 1)
        const QuadIdeal& principal = cg.reps[0];
        REQUIRE(principal.n == 1);
        HermitianForm M = decomposable_matrix(O, principal);
        CHECK(form_det(O, M) == 1);
        CHECK(reduce(O, M).form == HermitianForm{1, 1, {0, 0}});
    }
}

TEST_CASE("decomposable matrix: explicit corollary value for delta = -20") {
    Order O{Int(-20)};
    QuadIdeal a{2, {1, 1}};  // (2, 1 + omega), norm(alpha) = 6
    REQUIRE(norm(O, a.alpha) == 6);
    HermitianForm M = decomposable_matrix(O, a);
    CHECK(form_det(O, M) == 1);
    // direct substitution with x = 2, y = 1: [[5, 3(1+w)],[3(1-w), 11]]
    HermitianForm expected{5, 11, {3, 3}};
    REQUIRE(form_det(O, expected) == 1);
    CHECK(is_congruent(O, M, expected));
}

TEST_CASE("automorphism groups") {
    Order O8{Int(-8)};
    HermitianForm id{1, 1, {0, 0}};
    auto aut_id = automorphism_group(O8, id);
    CHECK(aut_id.size() == 8);  // signed permutation matrices over units +-1

    HermitianForm M{2, 2, {1, 1}};
    auto aut = automorphism_group(O8, M);
    CHECK(aut.size() > 2);

    // group structure: closure under product and inverse, contains -Id
    for (const auto& set : {aut_id, aut}) {
        auto contains = [&](const Mat2& P) {
            for (const auto& Q : set)
                if (Q == P) return true;
            return false;
        };
        CHECK(contains(mat2_neg(mat2_identity())));
        for (const auto& P : set) {
            CHECK(contains(mat2_inverse(O8, P)));
            for (const auto& Q : set) CHECK(contains(mat2_mul(O8, P, Q)));
        }
    }
}

TEST_CASE("polarization counts for small discriminants") {
    // (delta, expected decomposable, expected indecomposable)
    const std::tuple<long, long, long> cases[] = {
        {-3, 1, 0},  {-4, 1, 0},  {-7, 1, 0},  {-8, 1, 1},   {-11, 1, 1},
        {-15, 2, 0}, {-19, 1, 1}, {-20, 2, 1}, {-24, 2, 1},  {-35, 2, 2},
        {-40, 2, 2}, {-43, 1, 2}, {-67, 1, 3}, {-84, 4, 2},  {-88, 2, 4},
        {-120, 4, 5}, {-163, 1, 7},
    };
    for (const auto& [d, ndec, nindec] : cases) {
        CAPTURE(d);
        Order O{Int(d)};
        ClassificationResult res = enumerate_polarizations(O);
        CHECK(res.decomposables.size() == std::size_t(ndec));
        CHECK(res.indecomposables.size() == std::size_t(nindec));
        ClassGroup cg = class_group(O);
        CHECK(Int(long(res.decomposables.size())) == (cg.h + cg.t) / 2);
        // split cross-check: decomposable iff the form has a value-1 vector
        for (const auto& r : res.decomposables) {
            CHECK(has_value_one_vector(O, r.form));
            CHECK(r.aut_order % 2 == 0);
        }
        for (const auto& r : res.indecomposables) {
            CHECK_FALSE(has_value_one_vector(O, r.form));
            CHECK(r.aut_order % 2 == 0);
            for (const auto& P : r.aut_elements)
                CHECK(apply_basis(O, r.form, P) == r.form);
        }
    }
}

TEST_CASE("exponent guard and general enumeration") {
    Order O{Int(-23)};  // h = 3, exponent 3
    CHECK_THROWS_AS(enumerate_polarizations(O), std::domain_error);
    ClassificationResult res = enumerate_polarizations(O, /*allow_general=*/true);
    ClassGroup cg = class_group(O);
    CHECK(Int(long(res.decomposables.size())) == (cg.h + cg.t) / 2);  // (3+1)/2
}

TEST_CASE("parallel enumeration matches the serial reference") {
    for (long d : {-84L, -120L}) {
        Order O{Int(d)};
        ClassificationResult serial = enumerate_polarizations(O, false, 1);
        ClassificationResult par = enumerate_polarizations(O, false, 4);
        REQUIRE(serial.decomposables.size() == par.decomposables.size());
        REQUIRE(serial.indecomposables.size() == par.indecomposables.size());
        for (std::size_t i = 0; i < serial.decomposables.size(); ++i)
            CHECK(serial.decomposables[i].form == par.decomposables[i].form);
        for (std::size_t i = 0; i < serial.indecomposables.size(); ++i) {
            CHECK(serial.indecomposables[i].form == par.indecomposables[i].form);
            CHECK(serial.indecomposables[i].aut_order == par.indecomposables[i].aut_order);
        }
    }
}
