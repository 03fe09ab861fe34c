#ifndef MODULI_WP_HPP
#define MODULI_WP_HPP

#include <moduli/combinatorics.hpp>
#include <moduli/rational.hpp>

#include <vector>

namespace moduli {

// Universal constants of the kappa-descendent recursion, defined by
// alpha_0 = 1 and sum_{L+L'=b} (-1)^{||L||} alpha_L / (L! L'! (2|L'|+1)!!) = 0
// for every b != 0. Cached per process.
Rational alpha(const MultiIndex& L);

// Direct check of the defining relation for a nonzero b.
bool alpha_relation_check(const MultiIndex& b);

// Mixed kappa-psi correlator <kappa(b) tau_{d_1} ... tau_{d_n}>_g via the
// double-factorial recursion driven by the alpha constants; n >= 1.
// Total in (g, b, d) up to that restriction: wrong dimension gives 0.
Rational wp_mixed(long g, const MultiIndex& b, const std::vector<long>& d);

// Point-free volume <kappa(b)>_g expressed through one-point mixed
// correlators; g >= 2.
Rational wp_n0_reduce(long g, const MultiIndex& b);

// Higher volume V_{g,n}(b) = <tau_0^n kappa(b)>_g via the psi-free
// recursion on genus and ||b||; n >= 1.
Rational wp_volume(long g, long n, const MultiIndex& b);

// Point-free volume V_g(b) via the psi-free closed recursion; g >= 2.
Rational wp_volume_closed(long g, const MultiIndex& b);

// Evaluates <tau_d kappa(b)>_g by trading marked points with positive psi
// exponent for kappa classes until only tau_0 points remain, then
// delegating to the volume recursion. A kappa_0 produced by the exchange
// acts as the scalar 2g-2+n of the target space.
Rational kappa_psi_exchange(long g, const std::vector<long>& d, const MultiIndex& b);

} // namespace moduli

#endif // MODULI_WP_HPP
