#include "cmsq/classify.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmsq {

HermitianForm decomposable_matrix(const Order& O, const QuadIdeal& ideal) {
    const Int& n = ideal.n;
    const OrderElement& alpha = ideal.alpha;
    Int na = norm(O, alpha);
    CMSQ_CHECK(na % n == 0, "decomposable_matrix: norm(alpha) not divisible by n");
    Int m = na / n;
    CMSQ_CHECK(gcd(m, n) == 1, "decomposable_matrix: ideal not normalized");
    // x*n^2 - y*Norm(alpha) = n, i.e. x*n - y*m = 1.
    Int x, y;
    Int g = gcdext(n, -m, x, y);
    CMSQ_CHECK(g == 1 || g == -1, "decomposable_matrix: Bezout step failed");
    if (g == -1) {
        x = -x;
        y = -y;
    }
    Int s = x + y;
    HermitianForm M{n + m, x * x * n + y * y * m, mul_int(s, alpha)};
    CMSQ_CHECK(form_det(O, M) == 1, "decomposable_matrix: determinant != 1");
    return M;
}

std::vector<Mat2> automorphism_group(const Order& O, const HermitianForm& M) {
    std::vector<Vec2> A = short_vectors(O, M, M.a, true);
    std::vector<Vec2> D = short_vectors(O, M, M.d, true);
    std::vector<Mat2> aut;
    for (const Vec2& x : A) {
        for (const Vec2& y : D) {
            if (!is_basis(O, x, y)) continue;
            if (form_pair(O, M, x, y) == M.b) aut.push_back(mat2_from_columns(x, y));
        }
    }
    CMSQ_CHECK(aut.size() % 2 == 0 && !aut.empty(), "automorphism group size not even");
    bool has_minus_id = false, has_id = false;
    for (const Mat2& P : aut) {
        if (P == mat2_identity()) has_id = true;
        if (P == mat2_neg(mat2_identity())) has_minus_id = true;
    }
    CMSQ_CHECK(has_id && has_minus_id, "automorphism group missing +-Id");
    // Product polarizations can reach 2*w^2 = 72 (delta = -3); Jacobian
    // records are separately capped at 48.
    CMSQ_CHECK(aut.size() <= 96, "automorphism group larger than expected bound");
    return aut;
}

bool has_value_one_vector(const Order& O, const HermitianForm& M) {
    return !short_vectors(O, M, 1, false).empty();
}

std::vector<HermitianForm> enumeration_candidates(const Order& O) {
    std::vector<HermitianForm> cands;
    Int amax = isqrt_floor(O.abs_delta() / 2) + 2;
    OrderElement omega{0, 1};
    Int nw = O.norm_omega();
    for (Int a = 1; a <= amax; ++a) {
        for (Int q = -a; q <= a; ++q) {
            for (Int p = -a; p <= a; ++p) {
                OrderElement b{p, q};
                // translation-minimality box: |Tr(t~ b)| <= N(t) a for t = 1, w
                if (abs(trace(O, b)) > a) continue;
                if (abs(trace(O, mul(O, conj(O, omega), b))) > nw * a) continue;
                Int num = norm(O, b) + 1;
                if (num % a != 0) continue;
                Int d = num / a;
                if (d < a) continue;
                cands.push_back({a, d, b});
            }
        }
    }
    return cands;
}

namespace {

std::string form_key(const HermitianForm& f) {
    return f.a.get_str() + "|" + f.d.get_str() + "|" + f.b.x.get_str() + "|" +
           f.b.y.get_str();
}

// Reduced form of the class containing the ideal (n, c + omega).
BqForm class_of_ideal(const Order& O, const Int& n, const Int& c) {
    Int b = O.even() ? Int(-2 * c) : Int(-2 * c - 1);
    Int cc = (b * b - O.delta) / (4 * n);
    return reduce_form(O.delta, {n, b, cc});
}

}  // namespace

std::vector<QuadIdeal> ambiguous_class_reps(const Order& O, const ClassGroup& cg) {
    CMSQ_CHECK(has_exponent_at_most_two(cg),
               "ambiguous_class_reps: exponent > 2");
    // Ramified primes p | delta as ideals (p, c_p + omega).
    std::vector<std::pair<Int, Int>> primes;  // (p, c_p)
    for (auto& [p, e] : factorize(O.delta)) {
        Int cp = -1;
        for (Int c = 0; c < p; ++c) {
            if (norm(O, {c, 1}) % p == 0) {
                cp = c;
                break;
            }
        }
        CMSQ_CHECK(cp >= 0, "ramified prime has no ideal generator");
        primes.emplace_back(p, cp);
    }
    // Subset products via CRT on the c-coordinate; keep the smallest-norm
    // ambiguous ideal found in each nontrivial class.
    std::size_t mu = primes.size();
    std::map<std::string, QuadIdeal> best;
    auto bq_key = [](const BqForm& f) {
        return f.a.get_str() + "|" + f.b.get_str() + "|" + f.c.get_str();
    };
    for (std::size_t mask = 1; mask < (std::size_t(1) << mu); ++mask) {
        Int n = 1;
        for (std::size_t i = 0; i < mu; ++i)
            if (mask & (std::size_t(1) << i)) n *= primes[i].first;
        // CRT: c = c_p mod p for every chosen p.
        Int c = 0, mod = 1;
        for (std::size_t i = 0; i < mu; ++i) {
            if (!(mask & (std::size_t(1) << i))) continue;
            const Int& p = primes[i].first;
            const Int& cp = primes[i].second;
            Int minv, tmp;
            Int g = gcdext(mod, p, minv, tmp);  // minv * mod = 1 (mod p)
            CMSQ_CHECK(g == 1, "ramified primes not coprime");
            Int k = ((cp - c) * minv) % p;
            if (k < 0) k += p;
            c += mod * k;
            mod *= p;
        }
        CMSQ_CHECK(norm(O, {c, 1}) % n == 0, "CRT product ideal invalid");
        BqForm cls = class_of_ideal(O, n, c);
        if (cls == principal_form(O.delta)) continue;
        std::string key = bq_key(cls);
        auto it = best.find(key);
        if (it == best.end() || n < it->second.n) {
            QuadIdeal ideal = make_normalized_ideal(O, n, {c, 1});
            CMSQ_CHECK(ideal_equal(O, ideal, conj_ideal(O, ideal)),
                       "subset-product ideal is not ambiguous");
            best[key] = ideal;
        }
    }
    CMSQ_CHECK(Int(long(best.size())) + 1 == cg.h,
               "ambiguous ideals do not cover all classes");
    std::vector<QuadIdeal> out;
    for (auto& [k, ideal] : best) out.push_back(ideal);
    return out;
}

HermitianForm ideal_twist(const Order& O, const HermitianForm& M,
                          const QuadIdeal& ideal) {
    const Int& n = ideal.n;
    const OrderElement& alpha = ideal.alpha;
    Int m = norm(O, alpha) / n;
    CMSQ_CHECK(gcd(m, n) == 1, "ideal_twist: ideal not normalized");
    Int x, y;
    Int g = gcdext(n, -m, x, y);
    if (g == -1) {
        x = -x;
        y = -y;
    }
    Mat2 P{{n, 0}, mul_int(y, alpha), conj(O, alpha), {x * n, 0}};
    CMSQ_CHECK((mat2_det(O, P) == OrderElement{n, 0}), "ideal_twist: det(P) != n");
    Mat2 T = mat2_mul(O, mat2_conj_transpose(O, P),
                      mat2_mul(O, form_matrix(O, M), P));
    auto div_n = [&n](const OrderElement& e) {
        CMSQ_CHECK(e.x % n == 0 && e.y % n == 0, "ideal_twist: non-integral pullback");
        return OrderElement{e.x / n, e.y / n};
    };
    OrderElement a2 = div_n(T.m11), d2 = div_n(T.m22), b2 = div_n(T.m12);
    CMSQ_CHECK(a2.y == 0 && d2.y == 0, "ideal_twist: non-Hermitian pullback");
    HermitianForm out{a2.x, d2.x, b2};
    validate_form(O, out);
    return out;
}

ClassificationResult enumerate_polarizations(const Order& O,
                                             const ClassGroup& cg,
                                             bool allow_general, int threads) {
    if (!has_exponent_at_most_two(cg) && !allow_general)
        throw std::domain_error(
            "class group of " + O.delta.get_str() +
            " has exponent > 2; pass the general flag to classify anyway");

    // Decomposable classes: one per unordered pair {I, I^-1}.
    std::map<std::string, HermitianForm> decomposable_set;
    std::vector<bool> used(cg.reps.size(), false);
    for (std::size_t i = 0; i < cg.reps.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        // Mark the inverse class (reduced form (a, -b, c)) as paired with i.
        BqForm inv = reduce_form(O.delta, {cg.forms[i].a, -cg.forms[i].b, cg.forms[i].c});
        for (std::size_t j = i + 1; j < cg.reps.size(); ++j)
            if (cg.forms[j] == inv) used[j] = true;
        HermitianForm red = reduce(O, decomposable_matrix(O, cg.reps[i])).form;
        decomposable_set.emplace(form_key(red), red);
    }
    Int expected = (cg.h + cg.t) / 2;
    CMSQ_CHECK(Int(static_cast<long>(decomposable_set.size())) == expected,
               "decomposable count differs from (h+t)/2");

    // Exhaustive sweep over the finite candidate region, deduped by the
    // canonical reduced representative.
    std::vector<HermitianForm> cands = enumeration_candidates(O);
    std::map<std::string, HermitianForm> classes;
#ifdef _OPENMP
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
#else
    int nthreads = 1;
    (void)threads;
#endif
    if (nthreads == 1) {
        for (const HermitianForm& cand : cands) {
            HermitianForm red = reduce(O, cand).form;
            classes.emplace(form_key(red), red);
        }
    } else {
#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
        {
            std::map<std::string, HermitianForm> local;
#pragma omp for schedule(dynamic, 8)
            for (long i = 0; i < static_cast<long>(cands.size()); ++i) {
                HermitianForm red = reduce(O, cands[i]).form;
                local.emplace(form_key(red), red);
            }
#pragma omp critical
            classes.insert(local.begin(), local.end());
        }
#endif
    }

    // The sweep sees every class whose minimal vector has coprime
    // coordinates.  Classes whose minimal vectors all carry a non-trivial
    // content ideal are reached by pulling the polarization back along
    // E^2 ~ F^2 (twisting); seed the closure with the decomposables too.
    for (const auto& [key, form] : decomposable_set) classes.emplace(key, form);
    if (has_exponent_at_most_two(cg)) {
        std::vector<QuadIdeal> twist_reps = ambiguous_class_reps(O, cg);
        std::vector<HermitianForm> queue;
        for (const auto& [key, form] : classes) queue.push_back(form);
        while (!queue.empty()) {
            HermitianForm cur = queue.back();
            queue.pop_back();
            for (const QuadIdeal& rep : twist_reps) {
                HermitianForm tw = ideal_twist(O, cur, rep);
                HermitianForm red = reduce(O, tw).form;
                // the twist is an involution on classes (descent argument
                // relies on it): twisting back must return where we started
                CMSQ_CHECK(reduce(O, ideal_twist(O, tw, rep)).form == cur,
                           "ideal_twist is not an involution on classes");
                if (classes.emplace(form_key(red), red).second)
                    queue.push_back(red);
            }
        }
    }

    // Every decomposable class must be in the closure (sanity: the seed
    // included them, so this checks key stability only).
    for (const auto& [key, form] : decomposable_set)
        CMSQ_CHECK(classes.count(key) == 1, "decomposable class missing");

    ClassificationResult result;
    result.delta = O.delta;
    for (const auto& [key, form] : classes) {
        PolarizationRecord rec;
        rec.form = form;
        rec.decomposable = decomposable_set.count(key) == 1;
        rec.aut_elements = automorphism_group(O, form);
        rec.aut_order = static_cast<long>(rec.aut_elements.size());
        (rec.decomposable ? result.decomposables : result.indecomposables)
            .push_back(std::move(rec));
    }
    auto by_key = [&O](const PolarizationRecord& r1, const PolarizationRecord& r2) {
        return form_cmp(O, r1.form, r2.form) < 0;
    };
    std::sort(result.decomposables.begin(), result.decomposables.end(), by_key);
    std::sort(result.indecomposables.begin(), result.indecomposables.end(), by_key);
    return result;
}

ClassificationResult enumerate_polarizations(const Order& O, bool allow_general,
                                             int threads) {
    return enumerate_polarizations(O, class_group(O), allow_general, threads);
}

}  // namespace cmsq
