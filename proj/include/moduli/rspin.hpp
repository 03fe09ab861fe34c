#ifndef MODULI_RSPIN_HPP
#define MODULI_RSPIN_HPP

#include <moduli/rational.hpp>

#include <utility>
#include <vector>

namespace moduli {

// Insertions are (n, m) pairs: descendent level n >= 0 and primary label
// 0 <= m <= r-1.  The top label m = r-1 conventionally evaluates to zero.
using RSpinInsertion = std::pair<long, long>;

// Degree selection rule (r+1)(2g-2) + r s = r sum(n_j) + sum(m_j).
bool rspin_selection(long r, long g, const std::vector<RSpinInsertion>& ins);

// Correlator of the r-th root theory, r in {2,3,4}.  Total function:
// selection-rule failures, out-of-range labels and unstable configurations
// give 0.  Genus 0 reduces to the primary potential through the topological
// recursion relation; genus >= 1 goes through the string-equation rewrite
// and the puncture recursion with its explicit lower-genus terms.
Rational rspin_correlator(long r, long g, std::vector<RSpinInsertion> ins);

// Genus-0 evaluator (exposed for tests): topological recursion down to the
// primary correlators of the rank r-1 potential.
Rational rspin_genus0(long r, std::vector<RSpinInsertion> ins);

} // namespace moduli

#endif // MODULI_RSPIN_HPP
