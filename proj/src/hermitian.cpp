#include "cmsq/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cmsq {

Mat2 mat2_identity() {
    return {{1, 0}, {0, 0}, {0, 0}, {1, 0}};
}

Mat2 mat2_neg(const Mat2& A) {
    return {-A.m11, -A.m12, -A.m21, -A.m22};
}

Mat2 mat2_mul(const Order& O, const Mat2& A, const Mat2& B) {
    return {mul(O, A.m11, B.m11) + mul(O, A.m12, B.m21),
            mul(O, A.m11, B.m12) + mul(O, A.m12, B.m22),
            mul(O, A.m21, B.m11) + mul(O, A.m22, B.m21),
            mul(O, A.m21, B.m12) + mul(O, A.m22, B.m22)};
}

Mat2 mat2_conj(const Order& O, const Mat2& A) {
    return {conj(O, A.m11), conj(O, A.m12), conj(O, A.m21), conj(O, A.m22)};
}

Mat2 mat2_conj_transpose(const Order& O, const Mat2& A) {
    return {conj(O, A.m11), conj(O, A.m21), conj(O, A.m12), conj(O, A.m22)};
}

Mat2 mat2_scalar_mul(const Int& k, const Mat2& A) {
    return {mul_int(k, A.m11), mul_int(k, A.m12), mul_int(k, A.m21),
            mul_int(k, A.m22)};
}

OrderElement mat2_det(const Order& O, const Mat2& A) {
    return mul(O, A.m11, A.m22) - mul(O, A.m12, A.m21);
}

bool mat2_in_gl2(const Order& O, const Mat2& A) {
    return is_unit(O, mat2_det(O, A));
}

Mat2 mat2_inverse(const Order& O, const Mat2& A) {
    OrderElement det = mat2_det(O, A);
    CMSQ_CHECK(is_unit(O, det), "mat2_inverse: determinant is not a unit");
    // 1/det = conj(det) when Norm(det) = 1.
    OrderElement di = conj(O, det);
    return {mul(O, di, A.m22), mul(O, di, -A.m12), mul(O, di, -A.m21),
            mul(O, di, A.m11)};
}

Mat2 mat2_from_columns(const Vec2& x, const Vec2& y) {
    return {x.x1, y.x1, x.x2, y.x2};
}

Mat2 form_matrix(const Order& O, const HermitianForm& M) {
    return {{M.a, 0}, M.b, conj(O, M.b), {M.d, 0}};
}

Int form_det(const Order& O, const HermitianForm& M) {
    return M.a * M.d - norm(O, M.b);
}

void validate_form(const Order& O, const HermitianForm& M) {
    if (M.a < 1 || M.d < 1 || form_det(O, M) != 1)
        throw std::domain_error("not a positive definite unimodular Hermitian form: " +
                                form_str(O, M));
}

OrderElement form_pair(const Order& O, const HermitianForm& M, const Vec2& u,
                       const Vec2& v) {
    OrderElement r1 = mul_int(M.a, v.x1) + mul(O, M.b, v.x2);
    OrderElement r2 = mul(O, conj(O, M.b), v.x1) + mul_int(M.d, v.x2);
    return mul(O, conj(O, u.x1), r1) + mul(O, conj(O, u.x2), r2);
}

Int form_value(const Order& O, const HermitianForm& M, const Vec2& v) {
    OrderElement val = form_pair(O, M, v, v);
    CMSQ_CHECK(val.y == 0, "form_value: non-real value");
    return val.x;
}

int form_cmp(const Order& O, const HermitianForm& f, const HermitianForm& g) {
    if (f.a != g.a) return f.a < g.a ? -1 : 1;
    if (f.d != g.d) return f.d < g.d ? -1 : 1;
    return elem_cmp(O, f.b, g.b);
}

Int content_norm(const Order& O, const Vec2& v) {
    if (is_zero(v.x1) && is_zero(v.x2)) return 0;
    // Z-module spanned by {x1, w*x1, x2, w*x2} inside O = Z^2; its index in O
    // is the norm of the ideal (x1, x2).  Column-reduce the four generators.
    OrderElement w{0, 1};
    OrderElement gens[4] = {v.x1, mul(O, w, v.x1), v.x2, mul(O, w, v.x2)};
    std::vector<std::pair<Int, Int>> cols;  // (x, y) coordinates
    for (auto& g : gens)
        if (!(g.x == 0 && g.y == 0)) cols.emplace_back(g.x, g.y);
    // Eliminate the omega-coordinate down to a single pivot column.
    while (true) {
        int piv = -1;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i].second == 0) continue;
            if (piv < 0 ||
                cmp(abs(cols[i].second), abs(cols[std::size_t(piv)].second)) < 0)
                piv = static_cast<int>(i);
        }
        if (piv < 0) break;
        bool changed = false;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (static_cast<int>(i) == piv || cols[i].second == 0) continue;
            Int q = fdiv(cols[i].second, cols[std::size_t(piv)].second);
            cols[i].first -= q * cols[std::size_t(piv)].first;
            cols[i].second -= q * cols[std::size_t(piv)].second;
            if (cols[i].second != 0) changed = true;
        }
        if (!changed) break;
    }
    Int ygcd = 0, xgcd = 0;
    for (auto& [cx, cy] : cols) {
        if (cy != 0) {
            CMSQ_CHECK(ygcd == 0, "content_norm: elimination incomplete");
            ygcd = abs(cy);
        } else {
            xgcd = gcd(xgcd, cx);
        }
    }
    CMSQ_CHECK(ygcd != 0 && xgcd != 0, "content_norm: rank deficient module");
    return abs(xgcd * ygcd);
}

bool is_basis(const Order& O, const Vec2& x, const Vec2& y) {
    return mat2_in_gl2(O, mat2_from_columns(x, y));
}

Vec2 bezout_complete(const Order& O, const Vec2& x) {
    // Find p, q in O with x1*p + x2*q = 1; then y = (-q, p) has det [x y] = 1.
    // Solve over Z using the generators {x1, w x1, x2, w x2} of the content.
    OrderElement w{0, 1};
    OrderElement gens[4] = {x.x1, mul(O, w, x.x1), x.x2, mul(O, w, x.x2)};
    Int m[2][4], u[4][4];
    for (int j = 0; j < 4; ++j) {
        m[0][j] = gens[j].x;
        m[1][j] = gens[j].y;
        for (int i = 0; i < 4; ++i) u[i][j] = (i == j) ? 1 : 0;
    }
    auto colop = [&](int dst, int src, const Int& q) {
        for (int r = 0; r < 2; ++r) m[r][dst] -= q * m[r][src];
        for (int r = 0; r < 4; ++r) u[r][dst] -= q * u[r][src];
    };
    auto colswap = [&](int c1, int c2) {
        for (int r = 0; r < 2; ++r) std::swap(m[r][c1], m[r][c2]);
        for (int r = 0; r < 4; ++r) std::swap(u[r][c1], u[r][c2]);
    };
    // Clear the omega-row to a single pivot, moved to column 0.
    while (true) {
        int piv = -1;
        for (int j = 0; j < 4; ++j)
            if (m[1][j] != 0 && (piv < 0 || cmp(abs(m[1][j]), abs(m[1][piv])) < 0))
                piv = j;
        if (piv < 0) break;
        bool others = false;
        for (int j = 0; j < 4; ++j) {
            if (j == piv || m[1][j] == 0) continue;
            colop(j, piv, fdiv(m[1][j], m[1][piv]));
            if (m[1][j] != 0) others = true;
        }
        if (!others) {
            if (piv != 0) colswap(0, piv);
            break;
        }
    }
    CMSQ_CHECK(m[1][0] != 0, "bezout_complete: zero module");
    // Clear the rational row on columns 1..3 to a single pivot at column 1.
    while (true) {
        int piv = -1;
        for (int j = 1; j < 4; ++j)
            if (m[0][j] != 0 && (piv < 0 || cmp(abs(m[0][j]), abs(m[0][piv])) < 0))
                piv = j;
        if (piv < 0) break;
        bool others = false;
        for (int j = 1; j < 4; ++j) {
            if (j == piv || m[0][j] == 0) continue;
            colop(j, piv, fdiv(m[0][j], m[0][piv]));
            if (m[0][j] != 0) others = true;
        }
        if (!others) {
            if (piv != 1) colswap(1, piv);
            break;
        }
    }
    // 1 = alpha*col0 + beta*col1 with col0 = (m00, m10), col1 = (m01, 0):
    // alpha*m10 = 0 forces alpha = 0, so beta*m01 = 1.
    Int m01 = m[0][1];
    CMSQ_CHECK(m01 == 1 || m01 == -1,
               "bezout_complete: coordinates do not generate the unit ideal");
    Int beta = m01;  // 1/m01
    Int c[4];
    for (int j = 0; j < 4; ++j) c[j] = beta * u[j][1];
    // 1 = (c0 + c1 w) x1 + (c2 + c3 w) x2 =: p x1 + q x2.
    OrderElement p{c[0], c[1]}, q{c[2], c[3]};
    OrderElement check = mul(O, p, x.x1) + mul(O, q, x.x2);
    CMSQ_CHECK(check.x == 1 && check.y == 0, "bezout_complete: combination failed");
    Vec2 y{-q, p};
    CMSQ_CHECK(is_basis(O, x, y), "bezout_complete: completion is not a basis");
    return y;
}

HermitianForm apply_basis(const Order& O, const HermitianForm& M, const Mat2& P) {
    Vec2 cx{P.m11, P.m21}, cy{P.m12, P.m22};
    OrderElement aa = form_pair(O, M, cx, cx);
    OrderElement dd = form_pair(O, M, cy, cy);
    OrderElement bb = form_pair(O, M, cx, cy);
    CMSQ_CHECK(aa.y == 0 && dd.y == 0, "apply_basis: non-Hermitian result");
    return {aa.x, dd.x, bb};
}

namespace {

// Exact Fincke-Pohst enumeration of {v in Z^4 : Q(v) <= bound} for the
// quaternary quadratic form Q(v) = v* M v on the Z-basis
// {(1,0), (w,0), (0,1), (0,w)} of O^2.  LDL^T is computed over Q, so the
// bounds at every level are exact; cost scales with the number of points.
class QuaternaryEnumerator {
  public:
    QuaternaryEnumerator(const Order& O, const HermitianForm& M) {
        const OrderElement w{Int(0), Int(1)};
        const Vec2 basis[4] = {{{1, 0}, {0, 0}},
                               {w, {0, 0}},
                               {{0, 0}, {1, 0}},
                               {{0, 0}, w}};
        Rat G[4][4];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                OrderElement h = form_pair(O, M, basis[i], basis[j]);
                G[i][j] = Rat(trace(O, h)) / 2;  // symmetrized bilinear form
            }
        // LDL^T: G = U^T D U with U unit upper triangular.
        for (int i = 0; i < 4; ++i) {
            Rat di = G[i][i];
            for (int k = 0; k < i; ++k) di -= d_[k] * u_[k][i] * u_[k][i];
            CMSQ_CHECK(di > 0, "QuaternaryEnumerator: form not positive definite");
            d_[i] = di;
            for (int j = i + 1; j < 4; ++j) {
                Rat gij = G[i][j];
                for (int k = 0; k < i; ++k) gij -= d_[k] * u_[k][i] * u_[k][j];
                u_[i][j] = gij / di;
            }
        }
    }

    // emit(v, value) for every v with 0 < Q(v) <= bound.
    template <typename F>
    void enumerate(const Int& bound, F&& emit) const {
        if (bound < 0) return;
        Int v[4];
        recurse(3, Rat(bound), v, emit);
    }

  private:
    // Exact integer range {t : d*(t + c)^2 <= T}; false when empty.
    // Seeded at the quadratic's integer minimizer, extended by exponential
    // then binary search, so the cost is logarithmic in the range width.
    static bool level_range(const Rat& d, const Rat& c, const Rat& T, Int& lo,
                            Int& hi) {
        if (T < 0) return false;
        auto ok = [&](const Int& cand) {
            Rat e = Rat(cand) + c;
            return d * e * e <= T;
        };
        // nearest integer to -c = -(n/m): floor(-n/m + 1/2)
        Int tc = fdiv(-2 * c.get_num() + c.get_den(), 2 * c.get_den());
        if (!ok(tc)) return false;
        auto extend = [&](const Int& start, int dir) {
            Int good = start, step = 1;
            while (ok(good + dir * step)) {
                good += dir * step;
                step *= 2;
            }
            // invariant: ok(good), !ok(good + dir*step); binary search
            Int bad = good + dir * step;
            while (abs(bad - good) > 1) {
                Int mid = (good + bad) / 2;
                (ok(mid) ? good : bad) = mid;
            }
            return good;
        };
        hi = extend(tc, +1);
        lo = extend(tc, -1);
        return true;
    }

    template <typename F>
    void recurse(int level, const Rat& budget, Int v[4], F&& emit) const {
        Rat c(0);
        for (int j = level + 1; j < 4; ++j) c += u_[level][j] * Rat(v[j]);
        Int lo, hi;
        if (!level_range(d_[level], c, budget, lo, hi)) return;
        for (Int t = lo; t <= hi; ++t) {
            Rat e = Rat(t) + c;
            Rat used = d_[level] * e * e;
            if (used > budget) continue;
            v[level] = t;
            if (level == 0) {
                if (v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0) continue;
                emit(v);
            } else {
                recurse(level - 1, budget - used, v, emit);
            }
        }
    }

    Rat d_[4];
    Rat u_[4][4];
};

}  // namespace

std::vector<std::vector<Vec2>> vectors_with_value_up_to(const Order& O,
                                                        const HermitianForm& M,
                                                        const Int& bound,
                                                        bool coprime_only) {
    std::vector<std::vector<Vec2>> buckets;
    if (bound < 0) return buckets;
    long nb = mpz_get_si(bound.get_mpz_t());
    buckets.resize(nb + 1);
    QuaternaryEnumerator enumerator(O, M);
    enumerator.enumerate(bound, [&](const Int v[4]) {
        Vec2 vec{{v[0], v[1]}, {v[2], v[3]}};
        Int val = form_value(O, M, vec);
        CMSQ_CHECK(val > 0 && val <= bound, "enumerator emitted out-of-range vector");
        if (coprime_only && !coords_coprime(O, vec)) return;
        buckets[mpz_get_si(val.get_mpz_t())].push_back(vec);
    });
    for (auto& bkt : buckets)
        std::sort(bkt.begin(), bkt.end(), [](const Vec2& u, const Vec2& v) {
            if (u.x1.x != v.x1.x) return u.x1.x < v.x1.x;
            if (u.x1.y != v.x1.y) return u.x1.y < v.x1.y;
            if (u.x2.x != v.x2.x) return u.x2.x < v.x2.x;
            return u.x2.y < v.x2.y;
        });
    return buckets;
}

std::vector<Vec2> short_vectors(const Order& O, const HermitianForm& M,
                                const Int& n, bool coprime_only) {
    auto buckets = vectors_with_value_up_to(O, M, n, coprime_only);
    if (buckets.empty()) return {};
    return buckets[mpz_get_si(Int(n).get_mpz_t())];
}

namespace {

// Cheap Gauss-style pre-reduction: alternately translate the second basis
// vector to shrink d and swap when d < a.  Keeps the later short-vector
// sweeps small no matter how distorted the input basis is.
Reduction gauss_prereduce(const Order& O, HermitianForm M) {
    Mat2 P = mat2_identity();
    auto rnd = [](const Int& num, const Int& den) {
        return fdiv(2 * num + den, 2 * den);
    };
    for (int guard = 0; guard < 4096; ++guard) {
        if (M.d < M.a) {
            // swap basis vectors: (a, d, b) -> (d, a, conj(b))
            Mat2 S{{0, 0}, {1, 0}, {1, 0}, {0, 0}};
            P = mat2_mul(O, P, S);
            M = HermitianForm{M.d, M.a, conj(O, M.b)};
            continue;
        }
        // translate: e2 += t*e1 turns (b, d) into (b + t*a, d + Tr(conj(t) b) + N(t) a)
        OrderElement t0{rnd(-M.b.x, M.a), rnd(-M.b.y, M.a)};
        OrderElement tbest{0, 0};
        Int dbest = M.d;
        for (long ds = -1; ds <= 1; ++ds) {
            for (long dt = -1; dt <= 1; ++dt) {
                OrderElement t{t0.x + ds, t0.y + dt};
                if (is_zero(t)) continue;
                Int dn = M.d + trace(O, mul(O, conj(O, t), M.b)) + norm(O, t) * M.a;
                if (dn < dbest) {
                    dbest = dn;
                    tbest = t;
                }
            }
        }
        if (is_zero(tbest)) break;
        Mat2 T{{1, 0}, tbest, {0, 0}, {1, 0}};
        P = mat2_mul(O, P, T);
        M = HermitianForm{M.a, dbest, M.b + mul_int(M.a, tbest)};
    }
    CMSQ_CHECK(M.a <= M.d, "gauss_prereduce: did not terminate reduced");
    return {M, P};
}

// Translate y by a multiple of x to (locally) minimize its value; exact
// search over a small box around the real minimizer -x*My / a0.
Vec2 translate_min(const Order& O, const HermitianForm& M, const Vec2& x,
                   const Vec2& y, const Int& a0) {
    OrderElement btilde = form_pair(O, M, x, y);
    auto rnd = [](const Int& num, const Int& den) {
        return fdiv(2 * num + den, 2 * den);  // nearest integer to num/den
    };
    OrderElement t0{rnd(-btilde.x, a0), rnd(-btilde.y, a0)};
    Vec2 best = y;
    Int bestval = form_value(O, M, y);
    for (long ds = -2; ds <= 2; ++ds) {
        for (long dt = -2; dt <= 2; ++dt) {
            OrderElement t{t0.x + ds, t0.y + dt};
            if (is_zero(t)) continue;
            Vec2 cand{y.x1 + mul(O, t, x.x1), y.x2 + mul(O, t, x.x2)};
            Int v = form_value(O, M, cand);
            if (v < bestval) {
                bestval = v;
                best = cand;
            }
        }
    }
    return best;
}

}  // namespace

Reduction reduce(const Order& O, const HermitianForm& Min) {
    validate_form(O, Min);
    Reduction pre = gauss_prereduce(O, Min);
    const HermitianForm& M = pre.form;

    // Minimal value a0 over coprime-coordinate vectors; (1,0) is coprime,
    // so a0 <= a and a geometrically growing sweep stays cheap.
    Int a0 = 0;
    Vec2 x0;
    for (Int bound = 1;; bound = std::min(Int(2 * bound), M.a)) {
        auto buckets = vectors_with_value_up_to(O, M, bound, true);
        for (std::size_t v = 1; v < buckets.size(); ++v) {
            if (!buckets[v].empty()) {
                a0 = static_cast<long>(v);
                x0 = buckets[v].front();
                break;
            }
        }
        if (a0 > 0 || bound == M.a) break;
    }
    CMSQ_CHECK(a0 > 0, "reduce: no coprime vector found");

    // Rebase on x0 (the paper's speed-up): subsequent searches run with the
    // small diagonal entry a0 in place of M.a.
    Vec2 y0 = bezout_complete(O, x0);
    y0 = translate_min(O, M, x0, y0, a0);
    Mat2 P0 = mat2_from_columns(x0, y0);
    HermitianForm M1 = apply_basis(O, M, P0);
    CMSQ_CHECK(M1.a == a0, "reduce: rebase lost the minimal vector");

    std::vector<Vec2> A1 = short_vectors(O, M1, a0, true);
    auto ybuckets = vectors_with_value_up_to(O, M1, M1.d, true);

    for (std::size_t dv = mpz_get_si(a0.get_mpz_t()); dv < ybuckets.size(); ++dv) {
        bool found = false;
        OrderElement bbest;
        Vec2 xbest, ybest;
        for (const Vec2& y : ybuckets[dv]) {
            for (const Vec2& x : A1) {
                if (!is_basis(O, x, y)) continue;
                OrderElement bc = form_pair(O, M1, x, y);
                if (!found || elem_cmp(O, bc, bbest) < 0) {
                    found = true;
                    bbest = bc;
                    xbest = x;
                    ybest = y;
                }
            }
        }
        if (found) {
            Mat2 P = mat2_mul(O, pre.P,
                              mat2_mul(O, P0, mat2_from_columns(xbest, ybest)));
            HermitianForm R{a0, Int(static_cast<long>(dv)), bbest};
            CMSQ_CHECK(apply_basis(O, Min, P) == R, "reduce: transform mismatch");
            CMSQ_CHECK(form_det(O, R) == 1, "reduce: output not unimodular");
            return {R, P};
        }
    }
    throw std::runtime_error("reduce: no basis completion found");
}

bool is_congruent(const Order& O, const HermitianForm& M1,
                  const HermitianForm& M2) {
    return reduce(O, M1).form == reduce(O, M2).form;
}

std::string form_str(const Order& O, const HermitianForm& M) {
    std::ostringstream os;
    os << "(" << O.delta.get_str() << ", " << M.a.get_str() << ", "
       << M.b.x.get_str() << ", " << M.b.y.get_str() << ", " << M.d.get_str()
       << ")";
    return os.str();
}

}  // namespace cmsq
