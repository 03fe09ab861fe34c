#ifndef MODULI_FABER_HPP
#define MODULI_FABER_HPP

#include <moduli/combinatorics.hpp>
#include <moduli/rational.hpp>

#include <vector>

namespace moduli {

// Pairing matrix between the degree-k and degree-(g-2-k) kappa-monomials of
// the tautological ring, with entries given by the closed top-intersection
// formula (which depends only on the sum of the two indices).
struct FaberMatrix {
    long g = 0;
    long k = 0;
    std::vector<MultiIndex> rows; // partitions of k
    std::vector<MultiIndex> cols; // partitions of g-2-k
    std::vector<std::vector<Rational>> entries;
};

// Entry of the pairing matrix at (L, L'); requires |L| + |L'| = g - 2.
// For the empty combined index (g = 2) the value is the convention (2g-2)!!,
// so that the proportionality constant below is 1 for the empty monomial.
Rational faber_entry(long g, const MultiIndex& L, const MultiIndex& Lp);

// Assemble the full p(k) x p(g-2-k) matrix; 0 <= k <= g-2, g >= 2.
FaberMatrix faber_matrix(long g, long k);

// Exact rank over the rationals (fraction-free integer elimination after
// clearing denominators row-wise).
long exact_rank(const std::vector<std::vector<Rational>>& M);

// Ranks of all pairing matrices of a genus plus their sum.
struct RankProfile {
    long g = 0;
    std::vector<long> ranks; // index k = 0 .. g-2
    long total = 0;
};
RankProfile rank_profile(long g);

// Proportionality constant of kappa(m) to kappa_{g-2} in the top graded
// piece of the tautological ring; requires |m| = g - 2.
Rational faber_relation_coefficient(long g, const MultiIndex& m);

} // namespace moduli

#endif // MODULI_FABER_HPP
