#include "cmsq/quadorder.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmsq {

std::vector<std::pair<Int, int>> factorize(Int n) {
    CMSQ_CHECK(n != 0, "factorize: zero");
    if (n < 0) n = -n;
    std::vector<std::pair<Int, int>> out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool Order::is_fundamental(const Int& d) {
    if (d >= 0) return false;
    Int r4 = ((d % 4) + 4) % 4;
    auto squarefree = [](const Int& m) {
        for (auto& [p, e] : factorize(m))
            if (e > 1) return false;
        return true;
    };
    if (r4 == 1) return squarefree(d);
    if (r4 == 0) {
        Int m = d / 4;
        Int m4 = ((m % 4) + 4) % 4;
        return (m4 == 2 || m4 == 3) && squarefree(m);
    }
    return false;
}

Order::Order(Int d) : delta(std::move(d)) {
    if (!is_fundamental(delta))
        throw std::domain_error("Order: discriminant " + delta.get_str() +
                                " is not a negative fundamental discriminant");
}

OrderElement mul(const Order& O, const OrderElement& a, const OrderElement& b) {
    Int cross = a.x * b.y + a.y * b.x;
    Int yy = a.y * b.y;
    if (O.even()) {
        // omega^2 = delta/4
        return {a.x * b.x + yy * (O.delta / 4), cross};
    }
    // omega^2 = omega - (1 - delta)/4
    return {a.x * b.x - yy * ((1 - O.delta) / 4), cross + yy};
}

OrderElement conj(const Order& O, const OrderElement& a) {
    if (O.even()) return {a.x, -a.y};
    return {a.x + a.y, -a.y};
}

Int norm(const Order& O, const OrderElement& a) {
    if (O.even()) return a.x * a.x + (O.abs_delta() / 4) * a.y * a.y;
    return a.x * a.x + a.x * a.y + ((1 - O.delta) / 4) * a.y * a.y;
}

Int trace(const Order& O, const OrderElement& a) {
    return 2 * a.x + O.trace_omega() * a.y;
}

bool divide_exact(const Order& O, const OrderElement& a, const OrderElement& b,
                  OrderElement& q) {
    Int nb = norm(O, b);
    if (nb == 0) return false;
    OrderElement num = mul(O, a, conj(O, b));
    if (num.x % nb != 0 || num.y % nb != 0) return false;
    q = {num.x / nb, num.y / nb};
    return true;
}

bool elem_positive(const Order& O, const OrderElement& a) {
    Int tr = trace(O, a);
    if (tr != 0) return tr > 0;
    return a.y > 0;
}

int elem_cmp(const Order& O, const OrderElement& a, const OrderElement& b) {
    if (a == b) return 0;
    return elem_positive(O, b - a) ? -1 : 1;
}

std::string elem_str(const OrderElement& a) {
    std::ostringstream os;
    if (a.x == 0 && a.y == 0) return "0";
    bool first = true;
    if (a.x != 0) {
        os << a.x.get_str();
        first = false;
    }
    if (a.y != 0) {
        if (!first && a.y > 0) os << "+";
        if (a.y == -1)
            os << "-";
        else if (a.y != 1)
            os << a.y.get_str() << "*";
        os << "w";
    }
    return os.str();
}

QuadIdeal unit_ideal(const Order& O) { return {1, {0, 1}}; }

QuadIdeal conj_ideal(const Order& O, const QuadIdeal& a) {
    // conj(c + omega) has omega-coordinate -1; negate to renormalize.
    OrderElement ac = conj(O, a.alpha);
    return {a.n, {-ac.x, -ac.y}};
}

bool ideal_contains(const Order& O, const QuadIdeal& a, const OrderElement& g) {
    // g = u*n + v*alpha with alpha = c + omega forces v = g.y.
    CMSQ_CHECK(a.alpha.y == 1, "ideal not in normalized (n, c+omega) form");
    Int rem = g.x - g.y * a.alpha.x;
    return rem % a.n == 0;
}

bool ideal_is_primitive(const Order& O, const QuadIdeal& a) {
    return gcd(a.n, gcd(a.alpha.x, a.alpha.y)) == 1;
}

namespace {

// Solutions (s, t) of q11*s^2 + q12*s*t + q22*t^2 = target, positive definite.
void solve_binary_form(const Int& q11, const Int& q12, const Int& q22,
                       const Int& target,
                       const std::function<void(const Int&, const Int&)>& emit) {
    if (target == 0) {
        emit(0, 0);
        return;
    }
    if (target < 0) return;
    Int d0 = 4 * q11 * q22 - q12 * q12;
    CMSQ_CHECK(d0 > 0, "solve_binary_form: form not definite");
    // t^2 <= 4*q11*target / d0
    Int tmax = isqrt_floor(4 * q11 * target / d0);
    for (Int t = -tmax; t <= tmax; ++t) {
        Int disc = 4 * q11 * target - d0 * t * t;
        Int r;
        if (!perfect_square(disc, r)) continue;
        for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
            Int num = -q12 * t + (sgn == 0 ? r : -r);
            if (num % (2 * q11) != 0) continue;
            emit(num / (2 * q11), t);
        }
    }
}

}  // namespace

std::vector<OrderElement> elements_of_norm_in_ideal(const Order& O,
                                                    const QuadIdeal& a,
                                                    const Int& target) {
    // Z-basis {n, alpha} of the ideal.
    Int q11 = a.n * a.n;
    Int q12 = a.n * trace(O, a.alpha);
    Int q22 = norm(O, a.alpha);
    std::vector<OrderElement> out;
    solve_binary_form(q11, q12, q22, target, [&](const Int& s, const Int& t) {
        out.push_back({s * a.n + t * a.alpha.x, t * a.alpha.y});
    });
    std::sort(out.begin(), out.end(), [](const OrderElement& u, const OrderElement& v) {
        return u.x < v.x || (u.x == v.x && u.y < v.y);
    });
    return out;
}

std::vector<OrderElement> elements_of_norm(const Order& O, const Int& target) {
    return elements_of_norm_in_ideal(O, unit_ideal(O), target);
}

namespace {

int count_distinct_primes(const Int& n) {
    return static_cast<int>(factorize(n).size());
}

}  // namespace

bool ideal_equal(const Order& O, const QuadIdeal& a, const QuadIdeal& b) {
    return a.n == b.n && a.alpha.y == b.alpha.y &&
           (a.alpha.x - b.alpha.x) % a.n == 0;
}

QuadIdeal make_normalized_ideal(const Order& O, const Int& n, OrderElement alpha) {
    CMSQ_CHECK(alpha.y == 1, "make_normalized_ideal: alpha must be c + omega");
    Int na0 = norm(O, alpha);
    CMSQ_CHECK(na0 % n == 0, "make_normalized_ideal: n does not divide Norm(alpha)");
    Int bound = 4 * n * n + 16;
    for (Int k = 0; k <= bound; ++k) {
        for (int sgn = 0; sgn < (k == 0 ? 1 : 2); ++sgn) {
            Int cx = sgn == 0 ? Int(alpha.x + k * n) : Int(alpha.x - k * n);
            OrderElement cand{cx, alpha.y};
            Int na = norm(O, cand);
            if (gcd(na / n, n) == 1) {
                QuadIdeal ideal{n, cand};
                CMSQ_CHECK(ideal_is_primitive(O, ideal),
                           "make_normalized_ideal: non-primitive ideal");
                return ideal;
            }
        }
    }
    throw std::runtime_error("make_normalized_ideal: no admissible translate");
}

ClassGroup class_group(const Order& O) {
    const Int& delta = O.delta;
    ClassGroup cg;
    cg.delta = delta;
    Int amax = isqrt_floor(O.abs_delta() / 3);
    for (Int a = 1; a <= amax; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            if (((b - delta) % 2) != 0) continue;
            Int num = b * b - delta;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            cg.forms.push_back({a, b, c});
        }
    }
    std::sort(cg.forms.begin(), cg.forms.end(), [](const BqForm& f, const BqForm& g) {
        if (f.a != g.a) return f.a < g.a;
        if (f.b != g.b) return f.b < g.b;
        return f.c < g.c;
    });
    cg.h = static_cast<long>(cg.forms.size());
    int mu = count_distinct_primes(delta);
    Int t = 1;
    for (int i = 1; i < mu; ++i) t *= 2;
    cg.t = t;
    for (const BqForm& f : cg.forms) {
        // Ideal (a, (-b + sqrt(delta))/2).
        Int c0 = O.even() ? Int(-f.b / 2) : Int((-f.b - 1) / 2);
        OrderElement alpha{c0, 1};
        CMSQ_CHECK(norm(O, alpha) == f.a * f.c, "form/ideal norm mismatch");
        cg.reps.push_back(make_normalized_ideal(O, f.a, alpha));
    }
    return cg;
}

bool has_exponent_at_most_two(const ClassGroup& cg) { return cg.h == cg.t; }

BqForm principal_form(const Int& delta) {
    if (mpz_even_p(delta.get_mpz_t()))
        return {1, 0, -delta / 4};
    return {1, 1, (1 - delta) / 4};
}

namespace {

void normalize_form(const Int& delta, BqForm& f) {
    // Bring b into (-a, a].
    Int r = f.b % (2 * f.a);
    if (r > f.a) r -= 2 * f.a;
    if (r <= -f.a) r += 2 * f.a;
    f.b = r;
    f.c = (f.b * f.b - delta) / (4 * f.a);
}

}  // namespace

BqForm reduce_form(const Int& delta, BqForm f) {
    CMSQ_CHECK(f.a > 0, "reduce_form: a <= 0");
    CMSQ_CHECK(f.b * f.b - 4 * f.a * f.c == delta, "reduce_form: wrong discriminant");
    normalize_form(delta, f);
    while (f.a > f.c) {
        std::swap(f.a, f.c);
        f.b = -f.b;
        normalize_form(delta, f);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    if (f.b == -f.a) f.b = f.a;  // unreachable after normalize, kept as guard
    return f;
}

BqForm compose_forms(const Int& delta, const BqForm& f1, const BqForm& f2) {
    // Dirichlet composition, same route as the classical textbook formulas.
    Int s = (f1.b + f2.b) / 2;
    Int u0, v0, g;
    g = gcdext(f1.a, f2.a, u0, v0);
    Int v1, w, d;
    d = gcdext(g, s, v1, w);
    Int v = v0 * v1;
    Int a2d = f2.a / d;
    BqForm r;
    r.a = f1.a * a2d / d;
    Int t = (s - f2.b) * v - w * f2.c;
    t *= a2d;
    t *= 2;
    r.b = f2.b + t;
    r.c = (r.b * r.b - delta) / (4 * r.a);
    return reduce_form(delta, r);
}

bool exponent_at_most_two_by_composition(const ClassGroup& cg) {
    BqForm id = principal_form(cg.delta);
    for (const BqForm& f : cg.forms) {
        if (!(compose_forms(cg.delta, f, f) == id)) return false;
    }
    return true;
}

namespace {

// Class number and 2-torsion size without building ideal reps; scan helper.
std::pair<long, long> h_and_t(const Int& delta) {
    long h = 0;
    Int amax = isqrt_floor((-delta) / 3);
    for (Int a = 1; a <= amax; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            if (((b - delta) % 2) != 0) continue;
            Int num = b * b - delta;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            ++h;
        }
    }
    int mu = count_distinct_primes(delta);
    long t = 1;
    for (int i = 1; i < mu; ++i) t *= 2;
    return {h, t};
}

}  // namespace

std::vector<std::pair<Int, Int>> scan_discriminants(const Int& bound, int threads) {
    std::vector<std::pair<Int, Int>> out;
    if (bound < 3) return out;
    long nb = mpz_get_si(bound.get_mpz_t());
    std::vector<long> hits(nb + 1, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (long n = 3; n <= nb; ++n) {
        Int d = -Int(n);
        if (!Order::is_fundamental(d)) continue;
        auto [h, t] = h_and_t(d);
        if (h == t) hits[n] = h;
    }
    for (long n = 3; n <= nb; ++n)
        if (hits[n] != 0) out.emplace_back(Int(-n), Int(hits[n]));
    return out;
}

Int represented_value_coprime_to(const Int& delta, const BqForm& f,
                                 const Int& modulus) {
    for (Int radius = 1; radius <= 64; ++radius) {
        Int best = 0;
        for (Int s = -radius; s <= radius; ++s) {
            for (Int t = -radius; t <= radius; ++t) {
                if (s == 0 && t == 0) continue;
                Int val = f.a * s * s + f.b * s * t + f.c * t * t;
                if (gcd(val, modulus) != 1) continue;
                if (best == 0 || val < best) best = val;
            }
        }
        if (best != 0) return best;
    }
    throw std::runtime_error("represented_value_coprime_to: search exhausted");
}

std::vector<int> genus_character_vector(const Order& O, const BqForm& f) {
    const Int& delta = O.delta;
    // Prime discriminant factorization of delta.
    std::vector<Int> prime_discs;
    Int odd_product = 1;
    for (auto& [p, e] : factorize(delta)) {
        if (p == 2) continue;
        Int dp = (p % 4 == 1) ? p : -p;
        prime_discs.push_back(dp);
        odd_product *= dp;
    }
    Int d2 = delta / odd_product;
    CMSQ_CHECK(d2 == 1 || d2 == -4 || d2 == 8 || d2 == -8,
               "unexpected even prime discriminant part");
    if (d2 != 1) prime_discs.push_back(d2);
    Int m = represented_value_coprime_to(delta, f, 2 * delta);
    std::vector<int> chi;
    chi.reserve(prime_discs.size());
    for (const Int& dp : prime_discs) {
        int k = mpz_kronecker(dp.get_mpz_t(), m.get_mpz_t());
        CMSQ_CHECK(k == 1 || k == -1, "genus character not defined");
        chi.push_back(k == 1 ? 0 : 1);
    }
    return chi;
}

std::vector<std::size_t> generating_set_indices(const Order& O,
                                                const ClassGroup& cg) {
    CMSQ_CHECK(has_exponent_at_most_two(cg),
               "generating_set_indices: class group exponent > 2");
    std::vector<std::vector<int>> rows;
    std::vector<std::size_t> picked;
    std::size_t ncols = 0;
    for (std::size_t i = 0; i < cg.forms.size(); ++i) {
        std::vector<int> v = genus_character_vector(O, cg.forms[i]);
        ncols = v.size();
        // Reduce v against the rows already picked (F2 elimination).
        std::vector<int> w = v;
        for (const auto& r : rows)
            if (!r.empty()) {
                // Find pivot of r and cancel.
                std::size_t piv = 0;
                while (piv < r.size() && r[piv] == 0) ++piv;
                if (piv < w.size() && w[piv] == 1)
                    for (std::size_t j = 0; j < w.size(); ++j) w[j] ^= r[j];
            }
        bool nonzero = false;
        for (int bit : w) nonzero |= (bit != 0);
        if (nonzero) {
            rows.push_back(w);
            picked.push_back(i);
        }
    }
    // Rank must be mu - 1, i.e. 2^rank = h.
    Int span = 1;
    for (std::size_t i = 0; i < picked.size(); ++i) span *= 2;
    CMSQ_CHECK(span == cg.h, "genus characters did not generate the class group");
    (void)ncols;
    return picked;
}

}  // namespace cmsq
