#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmsq/quadorder.hpp"

namespace cmsq {

// Positive definite unimodular Hermitian matrix M = [[a, b],[conj(b), d]]
// over the maximal order; the polarization object.
struct HermitianForm {
    Int a, d;
    OrderElement b;
};

inline bool operator==(const HermitianForm& f, const HermitianForm& g) {
    return f.a == g.a && f.d == g.d && f.b == g.b;
}

// Column vector in O^2.
struct Vec2 {
    OrderElement x1, x2;
};
inline bool operator==(const Vec2& u, const Vec2& v) {
    return u.x1 == v.x1 && u.x2 == v.x2;
}

// 2x2 matrix over O; columns are the images of the standard basis.
struct Mat2 {
    OrderElement m11, m12, m21, m22;
};
inline bool operator==(const Mat2& A, const Mat2& B) {
    return A.m11 == B.m11 && A.m12 == B.m12 && A.m21 == B.m21 && A.m22 == B.m22;
}

Mat2 mat2_identity();
Mat2 mat2_neg(const Mat2& A);
Mat2 mat2_mul(const Order& O, const Mat2& A, const Mat2& B);
Mat2 mat2_conj(const Order& O, const Mat2& A);            // entrywise conjugate
Mat2 mat2_conj_transpose(const Order& O, const Mat2& A);  // A*
Mat2 mat2_scalar_mul(const Int& k, const Mat2& A);
OrderElement mat2_det(const Order& O, const Mat2& A);
bool mat2_in_gl2(const Order& O, const Mat2& A);
// A^-1 for A in GL2(O).
Mat2 mat2_inverse(const Order& O, const Mat2& A);
Mat2 mat2_from_columns(const Vec2& x, const Vec2& y);
Mat2 form_matrix(const Order& O, const HermitianForm& M);

Int form_det(const Order& O, const HermitianForm& M);
// Throws std::domain_error unless a >= 1, d >= 1 and det = 1.
void validate_form(const Order& O, const HermitianForm& M);

// v* M v, always a nonnegative integer for positive definite M.
Int form_value(const Order& O, const HermitianForm& M, const Vec2& v);
// u* M v.
OrderElement form_pair(const Order& O, const HermitianForm& M, const Vec2& u,
                       const Vec2& v);

// Lexicographic total order on forms via (a, d, b).
int form_cmp(const Order& O, const HermitianForm& f, const HermitianForm& g);

// Norm of the content ideal (x1, x2); the coordinates generate O iff 1.
Int content_norm(const Order& O, const Vec2& v);
inline bool coords_coprime(const Order& O, const Vec2& v) {
    return content_norm(O, v) == 1;
}
// Do x, y generate O^2 (i.e. det [x y] is a unit)?
bool is_basis(const Order& O, const Vec2& x, const Vec2& y);
// For coprime (x1, x2), a second column y with det [x y] = 1.
Vec2 bezout_complete(const Order& O, const Vec2& x);

// The Hermitian form rewritten on the basis given by the columns of P,
// i.e. P* M P; input columns need not be a basis (any P with the result
// still an integral Hermitian matrix is accepted).
HermitianForm apply_basis(const Order& O, const HermitianForm& M, const Mat2& P);

// All v with v* M v = n, optionally restricted to coprime coordinates.
std::vector<Vec2> short_vectors(const Order& O, const HermitianForm& M,
                                const Int& n, bool coprime_only);

// Buckets of vectors by value 0..bound (index = value).
std::vector<std::vector<Vec2>> vectors_with_value_up_to(const Order& O,
                                                        const HermitianForm& M,
                                                        const Int& bound,
                                                        bool coprime_only);

struct Reduction {
    HermitianForm form;  // the reduced representative of the class
    Mat2 P;              // P* M P = form, P in GL2(O)
};

// Unique reduced (lexicographically minimal) form congruent to M.
Reduction reduce(const Order& O, const HermitianForm& M);

bool is_congruent(const Order& O, const HermitianForm& M1,
                  const HermitianForm& M2);

// Serialization: "delta a bx by d" with b = bx + by*omega.
std::string form_str(const Order& O, const HermitianForm& M);

}  // namespace cmsq
