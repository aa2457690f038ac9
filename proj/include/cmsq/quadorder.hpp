#pragma once

#include <vector>

#include "cmsq/ints.hpp"

namespace cmsq {

// Maximal order of the imaginary quadratic field of fundamental
// discriminant delta < 0.  Elements are written x + y*omega with
//   omega = sqrt(delta)/2       if delta is even,
//   omega = (1 + sqrt(delta))/2 if delta is odd,
// so that {1, omega} is a Z-basis of the order.
struct Order {
    Int delta;

    explicit Order(Int d);

    bool even() const { return mpz_even_p(delta.get_mpz_t()) != 0; }
    Int abs_delta() const { return -delta; }
    Int trace_omega() const { return even() ? 0 : 1; }
    // norm(omega) = |delta|/4 (even) or (1 - delta)/4 (odd)
    Int norm_omega() const {
        return even() ? Int((-delta) / 4) : Int((1 - delta) / 4);
    }

    static bool is_fundamental(const Int& d);
};

struct OrderElement {
    Int x, y;  // x + y*omega

    OrderElement() : x(0), y(0) {}
    OrderElement(Int xx, Int yy) : x(std::move(xx)), y(std::move(yy)) {}
};

inline bool operator==(const OrderElement& a, const OrderElement& b) {
    return a.x == b.x && a.y == b.y;
}
inline bool operator!=(const OrderElement& a, const OrderElement& b) {
    return !(a == b);
}

inline OrderElement operator+(const OrderElement& a, const OrderElement& b) {
    return {a.x + b.x, a.y + b.y};
}
inline OrderElement operator-(const OrderElement& a, const OrderElement& b) {
    return {a.x - b.x, a.y - b.y};
}
inline OrderElement operator-(const OrderElement& a) { return {-a.x, -a.y}; }

inline bool is_zero(const OrderElement& a) { return a.x == 0 && a.y == 0; }

OrderElement mul(const Order& O, const OrderElement& a, const OrderElement& b);
OrderElement conj(const Order& O, const OrderElement& a);
Int norm(const Order& O, const OrderElement& a);
Int trace(const Order& O, const OrderElement& a);
inline OrderElement mul_int(const Int& k, const OrderElement& a) {
    return {k * a.x, k * a.y};
}
inline bool is_unit(const Order& O, const OrderElement& a) {
    return norm(O, a) == 1;
}

// Exact division in O; returns false if a/b is not integral.
bool divide_exact(const Order& O, const OrderElement& a, const OrderElement& b,
                  OrderElement& q);

// Total order on O: alpha > 0 iff Tr(alpha) > 0, or Tr(alpha) = 0 and the
// omega-coordinate is positive (omega has positive imaginary part).
bool elem_positive(const Order& O, const OrderElement& a);
int elem_cmp(const Order& O, const OrderElement& a, const OrderElement& b);

std::string elem_str(const OrderElement& a);

// Integral ideal (n, alpha) in two-generator form with n = Norm and
// alpha = c + omega, so the Z-module Z*n + Z*alpha is the ideal itself.
struct QuadIdeal {
    Int n;
    OrderElement alpha;
};

QuadIdeal unit_ideal(const Order& O);
QuadIdeal conj_ideal(const Order& O, const QuadIdeal& a);
bool ideal_equal(const Order& O, const QuadIdeal& a, const QuadIdeal& b);
// (n, c + omega) with alpha adjusted (mod n) so that alpha * a^-1 is
// coprime to n*O, the normalization the explicit constructions need.
QuadIdeal make_normalized_ideal(const Order& O, const Int& n, OrderElement alpha);
bool ideal_contains(const Order& O, const QuadIdeal& a, const OrderElement& g);
bool ideal_is_primitive(const Order& O, const QuadIdeal& a);

// All X in the ideal with Norm(X) = target; complete, no truncation.
std::vector<OrderElement> elements_of_norm_in_ideal(const Order& O,
                                                    const QuadIdeal& a,
                                                    const Int& target);
// All X in O with Norm(X) = target.
std::vector<OrderElement> elements_of_norm(const Order& O, const Int& target);

// Reduced binary quadratic form (a, b, c) of discriminant delta.
struct BqForm {
    Int a, b, c;
};
inline bool operator==(const BqForm& f, const BqForm& g) {
    return f.a == g.a && f.b == g.b && f.c == g.c;
}

struct ClassGroup {
    Int delta;
    std::vector<BqForm> forms;     // reduced forms, one per class
    std::vector<QuadIdeal> reps;   // matching ideal representatives
    Int h;                         // class number
    Int t;                         // size of the 2-torsion subgroup
};

ClassGroup class_group(const Order& O);
bool has_exponent_at_most_two(const ClassGroup& cg);

// Gauss composition on reduced forms.  Kept as an independent cross-check
// for the genus-theory identity h = 2^(mu-1); not used on the main path.
BqForm compose_forms(const Int& delta, const BqForm& f, const BqForm& g);
BqForm reduce_form(const Int& delta, BqForm f);
BqForm principal_form(const Int& delta);
bool exponent_at_most_two_by_composition(const ClassGroup& cg);

// All fundamental delta with |delta| <= bound whose class group has
// exponent <= 2, sorted by |delta|, with class numbers.
std::vector<std::pair<Int, Int>> scan_discriminants(const Int& bound,
                                                    int threads = 0);

// Smallest positive integer coprime to "modulus" that the class of the
// given reduced form represents primitively.  Used for genus characters.
Int represented_value_coprime_to(const Int& delta, const BqForm& f,
                                 const Int& modulus);

// Genus character vector of an ideal class (one Kronecker symbol per prime
// discriminant factor of delta), as a vector of 0/1 exponents.
std::vector<int> genus_character_vector(const Order& O, const BqForm& f);

// Indices into cg.forms of a minimal generating set of the class group
// (exponent <= 2 case: an F2-basis found by Gaussian elimination on the
// genus character vectors).  The principal class is never included.
std::vector<std::size_t> generating_set_indices(const Order& O,
                                                const ClassGroup& cg);

}  // namespace cmsq
