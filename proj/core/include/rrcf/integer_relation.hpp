#ifndef RRCF_INTEGER_RELATION_HPP
#define RRCF_INTEGER_RELATION_HPP

#include <gmpxx.h>

#include <vector>

#include "rrcf/bigfloat.hpp"

namespace rrcf {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// In-place LLL reduction of the rows of basis (Schnorr-Euchner, floating
/// Gram-Schmidt with exact integer updates). Rows must be linearly independent.
void lll_reduce(IntMatrix& basis, double delta = 0.99);

struct RelationSearch {
    /// Candidate relations c with |sum c_i z_i| small and max |c_i| <= height_bound,
    /// shortest first. Candidates are numerical; callers verify them exactly.
    std::vector<std::vector<mpz_class>> candidates;
    /// log2 of the Euclidean length of the shortest reduced vector.
    double log2_shortest = 0;
};

/// Searches for integer vectors c with sum c_i z_i = 0 by reducing the lattice
/// spanned by (e_i, round(S Re z_i), round(S Im z_i)) with S = 2^{prec - 16}.
RelationSearch integer_relation(const std::vector<ComplexBF>& z, mpfr_prec_t prec, const mpz_class& height_bound);

}  // namespace rrcf

#endif  // RRCF_INTEGER_RELATION_HPP
