#pragma once

#include <optional>
#include <vector>

#include "cmsq/classify.hpp"

namespace cmsq {

struct Witness {
    QuadIdeal ideal;
    Mat2 P;  // entries in the ideal, n*M = P* M P
};

struct ModuliCertificate {
    Int delta;
    HermitianForm form;
    std::vector<Witness> witnesses;  // one per non-principal generator class
    bool fom_is_Q = false;
    bool fod_is_Q = false;  // set by field_of_definition_is_Q
};

// Descent witness for one ideal class: P in M2(ideal) with n M = P* M P,
// found through the norm-equation search of the moduli criterion.
std::optional<Witness> find_witness(const Order& O, const HermitianForm& M,
                                    const QuadIdeal& ideal);

// Field of moduli = Q test.  Uses all non-principal classes when h <= 4,
// otherwise a minimal generating set from genus characters; use_all_classes
// forces the exhaustive variant (for cross-checks).
ModuliCertificate field_of_moduli_is_Q(const Order& O, const ClassGroup& cg,
                                       const HermitianForm& M,
                                       bool use_all_classes = false);

// P0 with P0* conj(M) P0 = M: the complex-conjugation descent witness.
Mat2 conjugate_congruence_matrix(const Order& O, const HermitianForm& M);

// Exact check of the witness conditions (entries in the ideal and the
// congruence identity); used by the property suite.
bool witness_is_sound(const Order& O, const HermitianForm& M, const Witness& w);

inline bool field_of_definition_is_Q(bool fom_is_Q, long aut_order) {
    return fom_is_Q && aut_order > 2;
}

}  // namespace cmsq
