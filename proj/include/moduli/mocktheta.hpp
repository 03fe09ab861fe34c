#ifndef MODULI_MOCKTHETA_HPP
#define MODULI_MOCKTHETA_HPP

#include <moduli/rational.hpp>

#include <string>
#include <vector>

namespace moduli {

// Coefficients omega(0..N) of the third-order mock theta series
// sum_n q^{2n^2+2n} / prod_{j=0}^n (1-q^{2j+1})^2.
std::vector<Integer> omega_series(long N);

// The same coefficients from the equivalent single-power form
// sum_n q^n / prod_{j=0}^n (1-q^{2j+1}).
std::vector<Integer> omega_series_alt(long N);

// Kronecker symbol (12/x): 0 unless gcd(x,6)=1, +1 for x = +-1 (mod 12),
// -1 for x = +-5 (mod 12).
int chi12(long x);

// Real and imaginary part of the exponential sum
// (1/2) sqrt(k/12) sum_{x mod 24k, x^2 = -24n+1 (mod 24k)} chi12(x) e(x/12k).
// The imaginary part vanishes up to rounding; both are evaluated in
// high-precision floating point and returned as doubles.
double a_kn(long k, long n);
double a_kn_imag(long k, long n);

// Exact-formula evaluation of omega(n): partial Bessel-series sum over
// k = 1..k_max at >= 50 decimal digits, rounded to the nearest integer.
// Throws std::runtime_error if the partial sum is farther than 1/4 from an
// integer (truncation did not converge).
Integer garthwaite_omega(long n, long k_max);

// Palindromic decomposition omega_g = sum_k omega_g^k driven by the two
// integer sequences p_omega and a_omega (a_omega(n) = 0 for n <= 0).
struct OmegaProfile {
    long g = 0;
    std::vector<long> components; // omega_g^k, k = 0 .. g-2
};

struct OmegaDecomposition {
    std::vector<long> p_omega; // index n = 0 ..
    std::vector<long> a_omega; // index n = 0 .. (a_omega[0] = a_omega(0) = 0 for n<=0)
    std::vector<OmegaProfile> profiles; // g = 2 .. G
};

// Runs the decomposition recursion far enough to emit profiles for all
// g <= G; throws std::runtime_error on any integrality violation.
OmegaDecomposition omega_decomposition(long G);

// Observational comparison of matrix ranks R_g (faber module) against the
// mock theta profile, for 2 <= g <= G.  ok is false if R_g < omega_g or
// R_g^k < omega_g^k anywhere, or if profiles differ for g <= 17.
struct ConjectureReport {
    bool ok = true;
    std::string text;
};
ConjectureReport conjecture_report(long G);

} // namespace moduli

#endif // MODULI_MOCKTHETA_HPP
