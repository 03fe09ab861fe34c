#include <moduli/mocktheta.hpp>

#include <moduli/faber.hpp>

#include <mpfr.h>

#include <sstream>
#include <stdexcept>

namespace moduli {

namespace {

constexpr mpfr_prec_t kPrec = 256; // ~77 decimal digits

// In-place multiplication of a truncated series by 1/(1-q^step): prefix sums
// with stride `step`.
void divide_one_minus(std::vector<Integer>& c, long step) {
    for (size_t i = step; i < c.size(); ++i) c[i] += c[i - step];
}

// Residues x mod 24k with x^2 = -24n+1 (mod 24k), visited via callback.
template <typename F>
void admissible_residues(long k, long n, F&& f) {
    long mod = 24 * k;
    long target = ((1 - 24 * (n % mod)) % mod + mod) % mod;
    for (long x = 0; x < mod; ++x)
        if ((x * x) % mod == target) f(x);
}

void a_kn_mpfr(long k, long n, mpfr_t re, mpfr_t im) {
    mpfr_t angle, t, pref;
    mpfr_inits2(kPrec, angle, t, pref, (mpfr_ptr) nullptr);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    admissible_residues(k, n, [&](long x) {
        int chi = chi12(x);
        if (chi == 0) return;
        // e(x/(12k)) = cos + i sin of 2*pi*x/(12k)
        mpfr_const_pi(angle, MPFR_RNDN);
        mpfr_mul_si(angle, angle, 2 * x, MPFR_RNDN);
        mpfr_div_si(angle, angle, 12 * k, MPFR_RNDN);
        mpfr_cos(t, angle, MPFR_RNDN);
        if (chi < 0) mpfr_neg(t, t, MPFR_RNDN);
        mpfr_add(re, re, t, MPFR_RNDN);
        mpfr_sin(t, angle, MPFR_RNDN);
        if (chi < 0) mpfr_neg(t, t, MPFR_RNDN);
        mpfr_add(im, im, t, MPFR_RNDN);
    });
    // prefactor (1/2) sqrt(k/12)
    mpfr_set_si(pref, k, MPFR_RNDN);
    mpfr_div_si(pref, pref, 12, MPFR_RNDN);
    mpfr_sqrt(pref, pref, MPFR_RNDN);
    mpfr_div_si(pref, pref, 2, MPFR_RNDN);
    mpfr_mul(re, re, pref, MPFR_RNDN);
    mpfr_mul(im, im, pref, MPFR_RNDN);
    mpfr_clears(angle, t, pref, (mpfr_ptr) nullptr);
}

} // namespace

std::vector<Integer> omega_series(long N) {
    if (N < 0) throw std::invalid_argument("omega_series: N >= 0");
    std::vector<Integer> out(N + 1, 0);
    // Running factor prod_{j=0}^n 1/(1-q^{2j+1})^2, extended as n grows.
    std::vector<Integer> factor(N + 1, 0);
    factor[0] = 1;
    for (long n = 0; 2 * n * n + 2 * n <= N; ++n) {
        divide_one_minus(factor, 2 * n + 1);
        divide_one_minus(factor, 2 * n + 1);
        long shift = 2 * n * n + 2 * n;
        for (long i = shift; i <= N; ++i) out[i] += factor[i - shift];
    }
    return out;
}

std::vector<Integer> omega_series_alt(long N) {
    if (N < 0) throw std::invalid_argument("omega_series_alt: N >= 0");
    std::vector<Integer> out(N + 1, 0);
    std::vector<Integer> factor(N + 1, 0);
    factor[0] = 1;
    for (long n = 0; n <= N; ++n) {
        divide_one_minus(factor, 2 * n + 1);
        for (long i = n; i <= N; ++i) out[i] += factor[i - n];
    }
    return out;
}

int chi12(long x) {
    long r = ((x % 12) + 12) % 12;
    if (r == 1 || r == 11) return 1;
    if (r == 5 || r == 7) return -1;
    return 0;
}

double a_kn(long k, long n) {
    mpfr_t re, im;
    mpfr_inits2(kPrec, re, im, (mpfr_ptr) nullptr);
    a_kn_mpfr(k, n, re, im);
    double v = mpfr_get_d(re, MPFR_RNDN);
    mpfr_clears(re, im, (mpfr_ptr) nullptr);
    return v;
}

double a_kn_imag(long k, long n) {
    mpfr_t re, im;
    mpfr_inits2(kPrec, re, im, (mpfr_ptr) nullptr);
    a_kn_mpfr(k, n, re, im);
    double v = mpfr_get_d(im, MPFR_RNDN);
    mpfr_clears(re, im, (mpfr_ptr) nullptr);
    return v;
}

Integer garthwaite_omega(long n, long k_max) {
    if (n < 0 || k_max < 1) throw std::invalid_argument("garthwaite_omega: n >= 0, k_max >= 1");
    mpfr_t sum, term, z, re, im, pi, t;
    mpfr_inits2(kPrec, sum, term, z, re, im, pi, t, (mpfr_ptr) nullptr);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_zero(sum, 1);
    for (long k = 1; k <= k_max; ++k) {
        long arg = n * k - 3 * k * (k - 1) / 2;
        a_kn_mpfr(2 * k - 1, arg, re, im);
        // I_{1/2}(z) = sqrt(2/(pi z)) sinh z with z = pi sqrt(3n+2)/(6k-3)
        mpfr_set_si(z, 3 * n + 2, MPFR_RNDN);
        mpfr_sqrt(z, z, MPFR_RNDN);
        mpfr_mul(z, z, pi, MPFR_RNDN);
        mpfr_div_si(z, z, 6 * k - 3, MPFR_RNDN);
        mpfr_sinh(term, z, MPFR_RNDN);
        mpfr_mul(t, z, pi, MPFR_RNDN);
        mpfr_si_div(t, 2, t, MPFR_RNDN);
        mpfr_sqrt(t, t, MPFR_RNDN);
        mpfr_mul(term, term, t, MPFR_RNDN);
        mpfr_mul(term, term, re, MPFR_RNDN);
        mpfr_div_si(term, term, 2 * k - 1, MPFR_RNDN);
        if (k % 2 == 0) mpfr_neg(term, term, MPFR_RNDN);
        mpfr_add(sum, sum, term, MPFR_RNDN);
    }
    // prefactor pi / (2 sqrt 2) * (3n+2)^{-1/4}
    mpfr_set_si(t, 3 * n + 2, MPFR_RNDN);
    mpfr_rootn_ui(t, t, 4, MPFR_RNDN);
    mpfr_div(sum, sum, t, MPFR_RNDN);
    mpfr_mul(sum, sum, pi, MPFR_RNDN);
    mpfr_sqrt_ui(t, 2, MPFR_RNDN);
    mpfr_mul_si(t, t, 2, MPFR_RNDN);
    mpfr_div(sum, sum, t, MPFR_RNDN);

    mpfr_t rounded;
    mpfr_init2(rounded, kPrec);
    mpfr_round(rounded, sum);
    mpfr_sub(t, sum, rounded, MPFR_RNDN);
    mpfr_abs(t, t, MPFR_RNDN);
    bool ok = mpfr_cmp_d(t, 0.25) < 0;
    Integer result = 0;
    if (ok) {
        mpz_t zres;
        mpz_init(zres);
        mpfr_get_z(zres, rounded, MPFR_RNDN);
        result = Integer(zres);
        mpz_clear(zres);
    }
    mpfr_clears(sum, term, z, re, im, pi, t, rounded, (mpfr_ptr) nullptr);
    if (!ok) throw std::runtime_error("garthwaite_omega: partial sum did not converge to an integer");
    return result;
}

OmegaDecomposition omega_decomposition(long G) {
    if (G < 2) throw std::invalid_argument("omega_decomposition: G >= 2");
    long M = std::max<long>(G, 4) + 18; // recursion depth; generous margin
    std::vector<Integer> w = omega_series(2 * M - 1);
    auto omega = [&](long n) -> long { return w[n].get_si(); };

    std::vector<long> p(M, 0), a(M + 1, 0); // a[i] stores a_omega(i), i >= 1
    auto aval = [&](long i) -> long { return (i >= 1 && i <= M) ? a[i] : 0; };

    for (long m = 1; m <= M; ++m) {
        long X = omega(2 * m - 2);
        long Y2 = omega(2 * m - 1);
        for (long i = 0; i <= m - 2; ++i) {
            X -= 2 * (p[i] - aval(3 * i - 2 * m));
            Y2 -= 2 * (p[i] - aval(3 * i - 2 * m - 1));
        }
        if (Y2 % 2 != 0) throw std::runtime_error("omega_decomposition: parity violation");
        long Y = Y2 / 2;
        p[m - 1] = Y + aval(m - 4);
        if (m - 3 >= 1) {
            a[m - 3] = p[m - 1] - X;
        } else if (p[m - 1] != X) {
            throw std::runtime_error("omega_decomposition: inconsistent base case");
        }
    }

    OmegaDecomposition d;
    d.p_omega.assign(p.begin(), p.end());
    d.a_omega.assign(M + 1, 0);
    for (long i = 1; i <= M; ++i) d.a_omega[i] = a[i];
    for (long g = 2; g <= G; ++g) {
        OmegaProfile prof;
        prof.g = g;
        long sum = 0;
        for (long k = 0; k <= g - 2; ++k) {
            long v = (2 * k <= g - 2) ? p[k] - aval(3 * k - g)
                                      : prof.components[g - 2 - k];
            prof.components.push_back(v);
            sum += v;
        }
        if (sum != omega(g - 2))
            throw std::runtime_error("omega_decomposition: profile sum mismatch");
        d.profiles.push_back(std::move(prof));
    }
    return d;
}

ConjectureReport conjecture_report(long G) {
    OmegaDecomposition d = omega_decomposition(G);
    ConjectureReport rep;
    std::ostringstream out;
    out << "g R_g omega_g profile\n";
    for (long g = 2; g <= G; ++g) {
        RankProfile rp = rank_profile(g);
        const OmegaProfile& op = d.profiles[g - 2];
        long wg = 0;
        bool componentwise = true;
        bool equal = true;
        for (long k = 0; k <= g - 2; ++k) {
            wg += op.components[k];
            if (rp.ranks[k] < op.components[k]) componentwise = false;
            if (rp.ranks[k] != op.components[k]) equal = false;
        }
        if (rp.total < wg || !componentwise) rep.ok = false;
        if (g <= 17 && !equal) rep.ok = false;
        out << g << ' ' << rp.total << ' ' << wg << ' '
            << (equal ? "equal" : (componentwise ? "rank-dominates" : "VIOLATION")) << '\n';
    }
    rep.text = out.str();
    return rep;
}

} // namespace moduli
