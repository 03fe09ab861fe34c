#ifndef MODULI_DESCENDENT_HPP
#define MODULI_DESCENDENT_HPP

#include <moduli/rational.hpp>

#include <string>
#include <vector>

namespace moduli {

// Canonical key for memoized psi-correlators: genus plus the sorted index
// multiset. A value can be nonzero only when sum(d) = 3g-3+n and 2g-2+n > 0.
struct CorrelatorKey {
    long genus = 0;
    std::vector<long> indices; // sorted descending

    CorrelatorKey(long g, std::vector<long> d);
    bool operator<(const CorrelatorKey& o) const;
    std::string str() const; // "g;d1,d2,..." canonical form
};

// Exact psi-class intersection number <tau_{d_1} ... tau_{d_n}>_g.
// Total function: unstable spaces and dimension mismatches give 0.
// Genus 0 via the closed multinomial formula; genus >= 1 by removing zero
// indices with the string equation and raising the largest index through the
// KdV/Virasoro recursion. Memoized (concurrent reads, serialized inserts).
Rational psi_correlator(long g, std::vector<long> d);

// Closed genus-0 formula: multinomial binom(n-3; d_1,...,d_n) when
// sum(d) = n-3, else 0. Requires n >= 3.
Rational genus0_closed(const std::vector<long>& d);

// One application of the string equation: removes one zero index and sums
// over lowering each remaining index by one. Requires a zero index and a
// stable target.
Rational string_reduce(long g, std::vector<long> d);

// One application of the dilaton equation: removes one index equal to 1 and
// multiplies by 2g-2+n (n = points remaining). Requires a stable remainder.
Rational dilaton_reduce(long g, std::vector<long> d);

// Independent second algorithm: the lower-genus effective recursion, which
// rewrites any correlator purely in terms of strictly smaller genus once
// zero indices are stripped. Requires all d_i >= 1 and sum(d) = 3g-3+n
// (use psi_correlator semantics for other inputs).
Rational effective_recursion(long g, std::vector<long> d);

// Cache maintenance hooks used by the CLI's persistent store.
std::vector<std::pair<std::string, std::string>> psi_cache_export();
void psi_cache_import(const std::vector<std::pair<std::string, std::string>>& entries);

} // namespace moduli

#endif // MODULI_DESCENDENT_HPP
