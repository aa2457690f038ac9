#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <vector>

#include "cmsq/quadorder.hpp"

namespace cmsq::testing {

// Counts SL2(Z)-reduced primitive binary quadratic forms of discriminant
// delta by iterating over b and splitting (b^2 - delta)/4 into a*c.
// Deliberately a different enumeration order than class_group().
inline long count_reduced_forms_oracle(const Int& delta) {
    long count = 0;
    Int bmax = isqrt_floor(-delta / 3) + 1;
    for (Int b = -bmax; b <= bmax; ++b) {
        Int num = b * b - delta;
        if (num % 4 != 0) continue;
        Int n = num / 4;  // a*c
        for (Int a = 1; a * a <= n; ++a) {
            if (n % a != 0) continue;
            Int c = n / a;
            // reduced: |b| <= a <= c, with b >= 0 when |b| == a or a == c
            Int ab = b >= 0 ? b : -b;
            if (!(ab <= a && a <= c)) continue;
            if ((ab == a || a == c) && b < 0) continue;
            ++count;
        }
    }
    return count;
}

// Rectangle-scan oracle for norm equations on the ideal lattice Z*n + Z*alpha:
// scans a coordinate box twice as large as the analytic bound and filters.
inline std::vector<OrderElement> elements_of_norm_box_oracle(
    const Order& O, const QuadIdeal& ideal, const Int& target) {
    std::vector<OrderElement> out;
    if (target < 0) return out;
    // |t| <= 2 * (2*sqrt(target/|delta|) + 1) covers the exact bound twice over.
    Int tmax = 2 * (2 * isqrt_floor(target / O.abs_delta() + 1) + 2);
    Int smax = 2 * (isqrt_floor(target) / ideal.n + 2) + 2 * tmax;
    for (Int s = -smax; s <= smax; ++s) {
        for (Int t = -tmax; t <= tmax; ++t) {
            OrderElement e{s * ideal.n + t * ideal.alpha.x, t * ideal.alpha.y};
            if (norm(O, e) == target) out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const OrderElement& u, const OrderElement& v) {
                  return u.x < v.x || (u.x == v.x && u.y < v.y);
              });
    return out;
}

}  // namespace cmsq::testing

#include "cmsq/hermitian.hpp"

namespace cmsq::testing {

// Naive box-scan for v with v* M v = n, over coordinate rectangles twice
// the size positive-definiteness requires: N(x1) <= d*n and N(x2) <= a*n
// (the two cofactor identities of the short-vector remark).
inline std::vector<Vec2> short_vectors_box_oracle(const Order& O,
                                                  const HermitianForm& M,
                                                  const Int& n,
                                                  bool coprime_only) {
    std::vector<Vec2> out;
    auto coord_box = [&O](const Int& bound) {
        Int ymax = 2 * (isqrt_floor(4 * bound / O.abs_delta()) + 1);
        Int xmax = 2 * (isqrt_floor(bound) + 1) + ymax;
        return std::pair<Int, Int>(xmax, ymax);
    };
    auto [x1max, y1max] = coord_box(M.d * n);
    auto [x2max, y2max] = coord_box(M.a * n);
    for (Int s1 = -x1max; s1 <= x1max; ++s1)
        for (Int t1 = -y1max; t1 <= y1max; ++t1)
            for (Int s2 = -x2max; s2 <= x2max; ++s2)
                for (Int t2 = -y2max; t2 <= y2max; ++t2) {
                    Vec2 v{{s1, t1}, {s2, t2}};
                    if (form_value(O, M, v) != n) continue;
                    if (coprime_only && !coords_coprime(O, v)) continue;
                    out.push_back(v);
                }
    std::sort(out.begin(), out.end(), [](const Vec2& u, const Vec2& v) {
        if (u.x1.x != v.x1.x) return u.x1.x < v.x1.x;
        if (u.x1.y != v.x1.y) return u.x1.y < v.x1.y;
        if (u.x2.x != v.x2.x) return u.x2.x < v.x2.x;
        return u.x2.y < v.x2.y;
    });
    return out;
}

// Deterministic pseudo-random GL2(O) element: a bounded product of
// elementary transvections, unit scalings and the swap.
template <typename Rng>
Mat2 random_gl2(const Order& O, Rng& rng, int steps = 6, long coeff_bound = 2) {
    std::vector<OrderElement> units;
    for (const OrderElement& u : elements_of_norm(O, Int(1))) units.push_back(u);
    std::uniform_int_distribution<long> coef(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<std::size_t> upick(0, units.size() - 1);
    Mat2 P = mat2_identity();
    for (int i = 0; i < steps; ++i) {
        Mat2 E = mat2_identity();
        switch (kind(rng)) {
            case 0:
                E.m12 = {Int(coef(rng)), Int(coef(rng))};
                break;
            case 1:
                E.m21 = {Int(coef(rng)), Int(coef(rng))};
                break;
            case 2:
                E.m11 = units[upick(rng)];
                break;
            default:
                E = {{0, 0}, {1, 0}, {-1, 0}, {0, 0}};  // swap, det = 1
                break;
        }
        P = mat2_mul(O, P, E);
    }
    return P;
}

}  // namespace cmsq::testing
