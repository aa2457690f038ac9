#include "cmsq/moduli.hpp"

#include <algorithm>

namespace cmsq {

namespace {

// Integral quotient e/k for a rational integer k; false if not integral.
bool div_by_int(const OrderElement& e, const Int& k, OrderElement& out) {
    if (e.x % k != 0 || e.y % k != 0) return false;
    out = {e.x / k, e.y / k};
    return true;
}

constexpr long kPairGuard = 10000000;  // candidate-pair budget per ideal

}  // namespace

std::optional<Witness> find_witness(const Order& O, const HermitianForm& M,
                                    const QuadIdeal& ideal) {
    const Int& n = ideal.n;
    const Int& a = M.a;
    const OrderElement& b = M.b;
    Int target = a * a * n;

    // All (X, Z) in ideal x ideal with Norm(X) + Norm(Z) = a^2 n.
    std::vector<std::vector<OrderElement>> by_norm;
    by_norm.reserve(mpz_get_si(target.get_mpz_t()) + 1);
    for (Int k = 0; k <= target; ++k)
        by_norm.push_back(elements_of_norm_in_ideal(O, ideal, k));
    std::vector<std::pair<OrderElement, OrderElement>> sols;
    for (Int k = 0; k <= target; ++k) {
        const auto& xs = by_norm[mpz_get_si(k.get_mpz_t())];
        const auto& zs = by_norm[mpz_get_si(Int(target - k).get_mpz_t())];
        for (const auto& X : xs)
            for (const auto& Z : zs) sols.emplace_back(X, Z);
    }
    long pair_count = static_cast<long>(sols.size()) * static_cast<long>(sols.size());
    CMSQ_CHECK(pair_count >= 0 && pair_count <= kPairGuard,
               "find_witness: candidate pair budget exceeded");

    Mat2 Mfull = form_matrix(O, M);
    Mat2 nM = mat2_scalar_mul(n, Mfull);
    OrderElement b2 = mul(O, b, b);
    for (const auto& [X, Z] : sols) {
        OrderElement cX = conj(O, X), cZ = conj(O, Z);
        for (const auto& [Y, T] : sols) {
            // orthogonality: conj(X) Y + conj(Z) T = 0
            if (!is_zero(mul(O, cX, Y) + mul(O, cZ, T))) continue;
            // P = L^-1 Q L with L = [[a, b],[0, 1]], Q = (1/a)[[X, Y],[Z, T]]
            Mat2 P;
            if (!div_by_int(X - mul(O, b, Z), a, P.m11)) continue;
            OrderElement num12 =
                mul(O, b, X) + Y - mul(O, b2, Z) - mul(O, b, T);
            if (!div_by_int(num12, a * a, P.m12)) continue;
            P.m21 = Z;
            if (!div_by_int(mul(O, b, Z) + T, a, P.m22)) continue;
            if (!ideal_contains(O, ideal, P.m11)) continue;
            if (!ideal_contains(O, ideal, P.m12)) continue;
            if (!ideal_contains(O, ideal, P.m21)) continue;
            if (!ideal_contains(O, ideal, P.m22)) continue;
            Mat2 rhs = mat2_mul(O, mat2_conj_transpose(O, P),
                                mat2_mul(O, Mfull, P));
            if (!(rhs == nM)) continue;
            return Witness{ideal, P};
        }
    }
    return std::nullopt;
}

ModuliCertificate field_of_moduli_is_Q(const Order& O, const ClassGroup& cg,
                                       const HermitianForm& M,
                                       bool use_all_classes) {
    if (!has_exponent_at_most_two(cg))
        throw std::domain_error(
            "field_of_moduli_is_Q: class group exponent > 2, criterion fails");
    ModuliCertificate cert;
    cert.delta = O.delta;
    cert.form = M;

    std::vector<std::size_t> idx;
    if (use_all_classes || cg.h <= 4) {
        for (std::size_t i = 0; i < cg.reps.size(); ++i)
            if (cg.reps[i].n != 1) idx.push_back(i);
    } else {
        idx = generating_set_indices(O, cg);
    }

    cert.fom_is_Q = true;
    for (std::size_t i : idx) {
        auto w = find_witness(O, M, cg.reps[i]);
        if (!w) {
            cert.fom_is_Q = false;
            cert.witnesses.clear();
            return cert;
        }
        cert.witnesses.push_back(std::move(*w));
    }
    return cert;
}

Mat2 conjugate_congruence_matrix(const Order& O, const HermitianForm& M) {
    // P0 = [[conj(b), d],[-a, -b]] satisfies P0* conj(M) P0 = M exactly.
    Mat2 P0{conj(O, M.b), {M.d, 0}, {-M.a, 0}, -M.b};
    HermitianForm Mbar{M.a, M.d, conj(O, M.b)};
    CMSQ_CHECK(apply_basis(O, Mbar, P0) == M,
               "conjugate_congruence_matrix: identity failed");
    return P0;
}

bool witness_is_sound(const Order& O, const HermitianForm& M, const Witness& w) {
    for (const OrderElement* e : {&w.P.m11, &w.P.m12, &w.P.m21, &w.P.m22})
        if (!ideal_contains(O, w.ideal, *e)) return false;
    Mat2 Mfull = form_matrix(O, M);
    Mat2 rhs = mat2_mul(O, mat2_conj_transpose(O, w.P), mat2_mul(O, Mfull, w.P));
    return rhs == mat2_scalar_mul(w.ideal.n, Mfull);
}

}  // namespace cmsq
