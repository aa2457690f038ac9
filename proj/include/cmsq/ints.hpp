#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace cmsq {

using Int = mpz_class;
using Rat = mpq_class;

#define CMSQ_CHECK(cond, msg)                                  \
    do {                                                       \
        if (!(cond)) throw std::runtime_error(std::string(msg)); \
    } while (0)

inline Int isqrt_floor(const Int& n) {
    CMSQ_CHECK(n >= 0, "isqrt_floor: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Returns true and sets r if n is a perfect square.
inline bool perfect_square(const Int& n, Int& r) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return true;
}

inline Int divexact(const Int& n, const Int& d) {
    CMSQ_CHECK(d != 0 && n % d == 0, "divexact: not divisible");
    Int q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// g = u*a + v*b
inline Int gcdext(const Int& a, const Int& b, Int& u, Int& v) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    return g;
}

// Floor division (sign-safe).
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int cdiv(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Trial-division factorization, adequate for |n| <= 1e8 and the
// smooth larger values that show up in invariant denominators.
std::vector<std::pair<Int, int>> factorize(Int n);

}  // namespace cmsq
