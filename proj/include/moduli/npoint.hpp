#ifndef MODULI_NPOINT_HPP
#define MODULI_NPOINT_HPP

#include <moduli/rational.hpp>
#include <moduli/sympoly.hpp>

#include <vector>

namespace moduli {

// Normalized n-point polynomial G_g(x_1..x_n): the generating polynomial of
// descendent integrals after dividing out the exponential of the cubic
// one-point tail. Homogeneous of degree 3g+n-3; computed by a recursion on
// genus and point number whose only inputs are the unstable low-point
// conventions. Rejects unstable (g,n) with an exception.
SymPoly npoint_G(long g, long n);

// Full n-point polynomial F_g(x_1..x_n); its coefficient at x^d is the
// descendent integral <tau_{d_1}...tau_{d_n}>_g.
SymPoly npoint_F(long g, long n);

// Closed forms for the genus-g piece of the two- and three-point
// normalized functions (g >= 1 for two points, g >= 0 for three points).
SymPoly two_point_genus(long g);
SymPoly three_point_genus(long g);

// Weighted binary-tree expansion of 12^g * (prod x_j) * (sum x_j)^2 * F_g:
// sum over leaf-labelled binary trees with nonnegative node weights adding
// to g, each node contributing a double-factorial ratio and a power of the
// sum of the variables below it.
SymPoly wmb_expansion(long g, long n);

// Number of (tree, weight) configurations entering wmb_expansion.
long wmb_configuration_count(long g, long n);

// Coefficient extraction route for descendent integrals that scales to
// large point numbers: solves the point-splitting recursion satisfied by
// (sum x)*F_g coefficientwise, never forming the full polynomial.
Rational npoint_coefficient(long g, const std::vector<long>& d);

// Checks on the leading z-coefficients of G_g(z, x_1..x_n):
// (1) powers of z above 2g-2+n vanish;
// (2) at z^{2g-2+n} the coefficient of x^d (sum d = g) is
//     1/(4^g prod (2d_j+1)!!);
// (3) at z^{2g-3+n} the coefficient of x^d (sum d = g+1) is the stated
//     quadratic polynomial in g, n and the number of zero indices over the
//     same double-factorial denominator.
bool coeff_vanishing_check(long g, long n);
bool coeff_leading_check(long g, long n);
bool coeff_subleading_check(long g, long n);

// Coefficient of y^{ypow} * x^d in the convolution-type series
// L_g^{a,b}(y, x_1..x_n) = sum over genus and ordered (possibly empty)
// point splits of (y+sum_I x)^a (-y+sum_J x)^b F(y,x_I) F(-y,x_J), where
// the unstable pieces are the one- and two-point Laurent tails.
Rational lab_coefficient(long g, long a, long b, long ypow, const std::vector<long>& d);

// Descendent correlator extended by the genus-zero negative-index
// conventions: a single index -2 gives 1, a pair summing to -1 gives
// (-1)^{max of the pair}, anything else with a negative index gives 0.
Rational virtual_correlator(long g, const std::vector<long>& d);

// Alternating genus-split convolution
//   sum_{g'=0}^g sum_{j in Z} (-1)^j <tau_j P>_{g'} <tau_{k-j} Q>_{g-g'}
// over the extended correlators; vanishes for k >= 2g-3+|P|+|Q|.
Rational alternating_convolution(long g, long k, const std::vector<long>& P,
                                 const std::vector<long>& Q);

} // namespace moduli

#endif // MODULI_NPOINT_HPP
