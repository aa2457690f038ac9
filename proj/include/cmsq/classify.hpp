#pragma once

#include <vector>

#include "cmsq/hermitian.hpp"

namespace cmsq {

struct PolarizationRecord {
    HermitianForm form;  // reduced representative
    bool decomposable = false;
    long aut_order = 0;
    std::vector<Mat2> aut_elements;  // the full finite group
};

struct ClassificationResult {
    Int delta;
    std::vector<PolarizationRecord> decomposables;
    std::vector<PolarizationRecord> indecomposables;
};

// Reduced representative of the decomposable polarization attached to an
// ideal class (pullback of the product polarization along E^2 ~ F x F').
HermitianForm decomposable_matrix(const Order& O, const QuadIdeal& ideal);

// All P in GL2(O) with P* M P = M.
std::vector<Mat2> automorphism_group(const Order& O, const HermitianForm& M);

// Does M have a vector of value 1 (over all of O^2, coprime or not)?
// Equivalent to decomposability; used as a cross-check of the split.
bool has_value_one_vector(const Order& O, const HermitianForm& M);

// Every congruence class of positive definite unimodular Hermitian forms
// over O, split into decomposable and indecomposable classes.  Requires a
// class group of exponent <= 2 unless allow_general is set.  threads = 0
// uses the OpenMP default; threads = 1 is the serial reference path.
ClassificationResult enumerate_polarizations(const Order& O,
                                             const ClassGroup& cg,
                                             bool allow_general = false,
                                             int threads = 1);
ClassificationResult enumerate_polarizations(const Order& O,
                                             bool allow_general = false,
                                             int threads = 1);

// Candidate triples (a, b, d) with a up to the Hermite bound sqrt(|delta|/2)
// (plus slack), b inside the translation-minimality box, d forced by
// det = 1.  Catches every class whose minimal vector has coprime
// coordinates; the remaining classes are reached by ideal_twist closure.
std::vector<HermitianForm> enumeration_candidates(const Order& O);

// One ambiguous (conjugation-fixed) ideal per nontrivial class, each a
// minimal-norm product of ramified primes.  Exponent <= 2 required.
std::vector<QuadIdeal> ambiguous_class_reps(const Order& O, const ClassGroup& cg);

// Pullback of the polarization along the isogeny-induced isomorphism
// E^2 ~ F^2 attached to an ambiguous ideal: M' = (1/n) P* M P with
// P = [[n, y*alpha],[conj(alpha), x*n]].  Integral since ideal^2 = (n).
HermitianForm ideal_twist(const Order& O, const HermitianForm& M,
                          const QuadIdeal& ideal);

}  // namespace cmsq
