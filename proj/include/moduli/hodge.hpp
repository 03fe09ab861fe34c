#ifndef MODULI_HODGE_HPP
#define MODULI_HODGE_HPP

#include <moduli/combinatorics.hpp>
#include <moduli/rational.hpp>

#include <vector>

namespace moduli {

// Mixed integrand over a genus-g moduli space with n = psi.size() marked
// points: prod psi_i^{d_i} * prod kappa_i^{m_i} * prod lambda_{j} * prod
// ch_{c}(Hodge bundle) with every c odd. Evaluation is a total function:
// dimension mismatches and unstable (g, n) give 0.
struct HodgeIntegrand {
    long genus = 0;
    std::vector<long> psi;      // psi exponents, one per marked point
    MultiIndex kappa;           // kappa_i multiplicities
    std::vector<long> lambda;   // Chern classes of the Hodge bundle, by degree
    std::vector<long> ch;       // Chern character degrees (odd)
};

// Full pipeline: kappa removal, lambda -> ch conversion, Chern-character
// reduction to pure psi integrals.
Rational hodge_integral(const HodgeIntegrand& w);

// Pure psi-and-ch evaluator (also usable directly).
Rational ch_integral(long g, const std::vector<long>& psi, const std::vector<long>& ch);

// Closed-form oracles:
//   closed_lg:  <tau_d lambda_g>_g, requires sum d = 2g-3+n
//   closed_l2g: <tau_d lambda_g lambda_{g-1}>_g, requires sum d = g-2+n
//   closed_l3g: <lambda_{g-1}^3>_g, requires g >= 2
Rational closed_lg(long g, const std::vector<long>& d);
Rational closed_l2g(long g, const std::vector<long>& d);
Rational closed_l3g(long g);

// Single Hurwitz number via the ELSV formula; (g, l(mu)) must be stable.
Rational elsv_hurwitz(long g, const std::vector<long>& mu);

// Inversion of ELSV: recovers the descendent integral <tau_d>_g as a finite
// signed sum of Hurwitz numbers over the box mu_i in 1..d_i+1.
Rational kl_invert(long g, const std::vector<long>& d);

// Three-way identity linking the ch_{2g-3} integral, a lambda_{g-1}
// lambda_{g-2} / lambda_{g-3} lambda_g combination, and a lower-genus
// correlator sum; requires g >= 2, d_j >= 1, sum (d_j - 1) = g.
bool lx6_identity_check(long g, const std::vector<long>& d);

// Correlator form of the top-intersection identity: the displayed
// combination of <tau_{2g} tau_d>, relabelings and alternating boundary
// sums equals (2g-3+n)!/(2^{2g-1}(2g-1)! prod (2d_j-1)!!); requires
// d_j >= 1 and sum d = g+n-2.
bool faber_intersection_check(long g, const std::vector<long>& d);

} // namespace moduli

#endif // MODULI_HODGE_HPP
