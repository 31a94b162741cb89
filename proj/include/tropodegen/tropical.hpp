#pragma once

// Tropical prevariety S_n ∩ null(A) and its identification with the
// projective admissible solution space of the Q-matching equations.

#include "tropodegen/equations.hpp"
#include "tropodegen/exact.hpp"

#include <string>
#include <vector>

namespace tropodegen {

/// A point of S_n ∩ null(A): exact representative plus unit-length form.
struct TropicalPoint {
    RationalVector xi;
    std::vector<double> unit;
};

struct Membership {
    bool member = false;
    std::string diagnostic;
};

/// xi in S_n (triple form) and A xi = 0. Throws DimensionError.
Membership prevariety_membership(const GluingSystem& S, const RationalVector& xi);

/// True iff max over alpha in F of alpha.xi is attained by at least two
/// distinct exponent vectors.
bool sphdual_membership(const std::vector<IntVector>& exponents, const RationalVector& xi);

/// Exponent sets of p, p', p'' for one tetrahedron (3 variables).
std::vector<std::vector<IntVector>> parameter_newton_supports();

/// Empty diagnostic when every triple is (0,x,-x), (-x,0,x) or (x,-x,0), x >= 0.
std::string triple_form_violation(const RationalVector& xi);

/// At most one nonzero entry per triple, all entries nonnegative.
bool is_admissible(const RationalVector& N);

/// C_n^T N as a plain linear map (no admissibility check).
RationalVector cn_transpose_apply(const RationalVector& N);

/// Throws AdmissibilityError for inadmissible or zero N.
TropicalPoint quads_to_xi(const RationalVector& N);

/// Unique admissible N with C_n^T N = xi. Throws FormError.
RationalVector xi_to_quads(const RationalVector& xi);

TropicalPoint make_tropical_point(RationalVector xi);

/// Vertices of {N >= 0, B N = 0, sum N = 1} that are admissible, as primitive
/// integer vectors sorted in decreasing lexicographic order. Support patterns
/// are split across `jobs` worker threads.
std::vector<IntVector> enumerate_pf_vertices(const GluingSystem& S, unsigned jobs = 1);

}  // namespace tropodegen
