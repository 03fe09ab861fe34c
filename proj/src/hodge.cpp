#include <moduli/hodge.hpp>

#include <moduli/descendent.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>

namespace moduli {

namespace {

bool stable(long g, long n) { return 2 * g - 2 + n > 0; }

long sum_of(const std::vector<long>& v) { return std::accumulate(v.begin(), v.end(), 0L); }

std::shared_mutex g_ch_mutex;
std::map<std::tuple<long, std::vector<long>, std::vector<long>>, Rational> g_ch_cache;

Rational ch_eval(long g, std::vector<long> psi, std::vector<long> ch);

// Reduce the largest Chern-character insertion ch_{2k-1} via the boundary
// formula for the Hodge bundle: a kappa term (one new tau_{2k} point), a
// signed relabeling sum, and alternating irreducible and separating
// boundary contributions, all weighted by B_{2k}/(2k)!.
Rational ch_impl(long g, const std::vector<long>& psi, const std::vector<long>& ch) {
    long c = ch.front(); // largest, since keys store ch sorted descending
    long k = (c + 1) / 2;
    std::vector<long> rest(ch.begin() + 1, ch.end());

    Rational acc = 0;
    {
        std::vector<long> t = psi;
        t.push_back(2 * k);
        acc += ch_eval(g, std::move(t), rest);
    }
    for (size_t j = 0; j < psi.size(); ++j) {
        std::vector<long> t = psi;
        t[j] += 2 * k - 1;
        acc -= ch_eval(g, std::move(t), rest);
    }
    Rational boundary = 0;
    for (long j = 0; j <= 2 * k - 2; ++j) {
        Rational sign = (j % 2 != 0) ? Rational(-1) : Rational(1);
        std::vector<long> t = psi;
        t.push_back(j);
        t.push_back(2 * k - 2 - j);
        boundary += sign * ch_eval(g - 1, std::move(t), rest);
        for (const auto& ps : multiset_splits(psi)) {
            for (const auto& cs : multiset_splits(rest)) {
                for (long gp = 0; gp <= g; ++gp) {
                    std::vector<long> left = ps.left;
                    left.push_back(j);
                    Rational a = ch_eval(gp, std::move(left), cs.left);
                    if (a == 0) continue;
                    std::vector<long> right = ps.right;
                    right.push_back(2 * k - 2 - j);
                    boundary += sign * Rational(ps.count * cs.count) * a *
                                ch_eval(g - gp, std::move(right), cs.right);
                }
            }
        }
    }
    acc += boundary / 2;
    return acc * bernoulli(2 * k) / Rational(factorial(2 * k));
}

Rational ch_eval(long g, std::vector<long> psi, std::vector<long> ch) {
    if (g < 0) return 0;
    for (long x : psi)
        if (x < 0) return 0;
    long n = static_cast<long>(psi.size());
    if (!stable(g, n)) return 0;
    if (sum_of(psi) + sum_of(ch) != 3 * g - 3 + n) return 0;
    for (long x : ch)
        if (x < 1 || x % 2 == 0)
            throw std::invalid_argument("ch_integral: degrees must be odd and positive");
    if (ch.empty()) return psi_correlator(g, std::move(psi));
    std::sort(psi.begin(), psi.end(), std::greater<long>());
    std::sort(ch.begin(), ch.end(), std::greater<long>());
    std::tuple<long, std::vector<long>, std::vector<long>> key{g, std::move(psi), std::move(ch)};
    {
        std::shared_lock lock(g_ch_mutex);
        auto it = g_ch_cache.find(key);
        if (it != g_ch_cache.end()) return it->second;
    }
    Rational value = ch_impl(g, std::get<1>(key), std::get<2>(key));
    std::unique_lock lock(g_ch_mutex);
    g_ch_cache.emplace(std::move(key), value);
    return value;
}

// Expansion of one lambda_j into Chern-character monomials: signed sum over
// partitions of j with odd parts only (even components of ch vanish).
std::vector<std::pair<Rational, std::vector<long>>> lambda_terms(long j) {
    std::vector<std::pair<Rational, std::vector<long>>> out;
    for (const auto& mu : partitions_of(j)) {
        if (std::any_of(mu.begin(), mu.end(), [](long r) { return r % 2 == 0; })) continue;
        long len = static_cast<long>(mu.size());
        Rational coef = ((j - len) % 2 != 0) ? Rational(-1) : Rational(1);
        std::map<long, long> mult;
        for (long r : mu) ++mult[r];
        for (const auto& [r, m] : mult) {
            Integer f = factorial(r - 1);
            Integer p = 1;
            for (long t = 0; t < m; ++t) p *= f;
            coef *= rat(p, factorial(m));
        }
        out.emplace_back(coef, mu);
    }
    return out;
}

} // namespace

Rational ch_integral(long g, const std::vector<long>& psi, const std::vector<long>& ch) {
    return ch_eval(g, psi, ch);
}

Rational hodge_integral(const HodgeIntegrand& w) {
    // Remove kappa classes: signed sum over ordered block decompositions of
    // the kappa exponent vector, one new tau point per block.
    std::vector<std::pair<Rational, std::vector<long>>> kappa_terms;
    long len = w.kappa.length();
    if (w.kappa.is_zero()) {
        kappa_terms.emplace_back(Rational(1), std::vector<long>{});
    } else {
        for (long k = 1; k <= len; ++k) {
            Rational base = rat(Integer(1), factorial(k));
            if ((len - k) % 2 != 0) base = -base;
            for (const auto& blocks : ordered_decompositions(w.kappa, k)) {
                std::vector<long> extra;
                for (const auto& b : blocks) extra.push_back(b.weight() + 1);
                kappa_terms.emplace_back(base * Rational(multi_binomial(w.kappa, blocks)), extra);
            }
        }
    }

    // Expand lambda classes into ch monomials.
    std::vector<std::pair<Rational, std::vector<long>>> lam{{Rational(1), {}}};
    for (long j : w.lambda) {
        if (j == 0) continue;   // lambda_0 = 1
        if (j < 0) return 0;    // out-of-range Chern class
        std::vector<std::pair<Rational, std::vector<long>>> next;
        for (const auto& [c1, ch1] : lam) {
            for (const auto& [c2, ch2] : lambda_terms(j)) {
                std::vector<long> merged = ch1;
                merged.insert(merged.end(), ch2.begin(), ch2.end());
                next.emplace_back(c1 * c2, std::move(merged));
            }
        }
        lam = std::move(next);
    }

    Rational acc = 0;
    for (const auto& [ck, extra] : kappa_terms) {
        std::vector<long> psi = w.psi;
        psi.insert(psi.end(), extra.begin(), extra.end());
        for (const auto& [cl, ch] : lam) acc += ck * cl * ch_eval(w.genus, psi, ch);
    }
    return acc;
}

Rational closed_lg(long g, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());
    if (g < 1 || !stable(g, n)) throw std::invalid_argument("closed_lg: bad (g,n)");
    if (sum_of(d) != 2 * g - 3 + n) throw std::invalid_argument("closed_lg: degree mismatch");
    Rational b = bernoulli(2 * g);
    if (b < 0) b = -b;
    Integer pw = 1; // 2^{2g-1}
    for (long i = 0; i < 2 * g - 1; ++i) pw *= 2;
    return Rational(multinomial(2 * g - 3 + n, d)) * rat(pw - 1, pw) * b /
           Rational(factorial(2 * g));
}

Rational closed_l2g(long g, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());
    if (g < 2 || !stable(g, n)) throw std::invalid_argument("closed_l2g: bad (g,n)");
    if (sum_of(d) != g - 2 + n) throw std::invalid_argument("closed_l2g: degree mismatch");
    for (long x : d)
        if (x < 1) throw std::invalid_argument("closed_l2g: need d_j >= 1");
    Rational b = bernoulli(2 * g);
    if (b < 0) b = -b;
    Integer den = factorial(2 * g);
    for (long i = 0; i < 2 * g - 1; ++i) den *= 2;
    for (long x : d) den *= double_factorial(2 * x - 1);
    return Rational(factorial(2 * g - 3 + n)) * b / Rational(den);
}

Rational closed_l3g(long g) {
    if (g < 2) throw std::invalid_argument("closed_l3g: need g >= 2");
    Rational b2 = bernoulli(2 * g - 2), b = bernoulli(2 * g);
    if (b2 < 0) b2 = -b2;
    if (b < 0) b = -b;
    return b2 * b / (Rational(factorial(2 * g - 2)) * Rational(2 * g - 2) * Rational(2 * g));
}

Rational elsv_hurwitz(long g, const std::vector<long>& mu) {
    long n = static_cast<long>(mu.size());
    if (g < 0 || !stable(g, n)) throw std::invalid_argument("elsv_hurwitz: unstable (g,n)");
    for (long m : mu)
        if (m < 1) throw std::invalid_argument("elsv_hurwitz: parts must be positive");
    long r = 2 * g - 2 + sum_of(mu) + n;
    Rational pref(factorial(r));
    for (long m : mu) {
        Integer p = 1;
        for (long i = 0; i < m; ++i) p *= m;
        pref *= rat(p, factorial(m));
    }
    // Expand the geometric series in psi and the alternating lambda sum.
    Rational acc = 0;
    for (long k = 0; k <= g; ++k) {
        long total = 3 * g - 3 + n - k;
        if (total < 0) continue;
        std::vector<long> d(n, 0);
        std::function<void(long, long)> rec = [&](long pos, long left) {
            if (pos == n - 1) {
                d[pos] = left;
                HodgeIntegrand w;
                w.genus = g;
                w.psi = d;
                if (k > 0) w.lambda = {k};
                Rational v = hodge_integral(w);
                if (v != 0) {
                    Rational weight = (k % 2 != 0) ? Rational(-1) : Rational(1);
                    for (long i = 0; i < n; ++i) {
                        for (long t = 0; t < d[i]; ++t) weight *= Rational(mu[i]);
                    }
                    acc += weight * v;
                }
                return;
            }
            for (long v = 0; v <= left; ++v) {
                d[pos] = v;
                rec(pos + 1, left - v);
            }
        };
        rec(0, total);
    }
    return pref * acc;
}

Rational kl_invert(long g, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());
    if (!stable(g, n)) throw std::invalid_argument("kl_invert: unstable (g,n)");
    if (sum_of(d) != 3 * g - 3 + n) throw std::invalid_argument("kl_invert: dimension mismatch");
    Rational acc = 0;
    std::vector<long> mu(n, 1);
    std::function<void(long)> rec = [&](long pos) {
        if (pos == n) {
            long r = 2 * g - 2 + sum_of(mu) + n;
            Rational coef = rat(Integer(1), factorial(r));
            for (long i = 0; i < n; ++i) {
                long gap = d[i] + 1 - mu[i];
                Integer den = factorial(gap);
                for (long t = 0; t < mu[i] - 1; ++t) den *= mu[i];
                Rational f = rat(Integer(1), den);
                if (gap % 2 != 0) f = -f;
                coef *= f;
            }
            acc += coef * elsv_hurwitz(g, mu);
            return;
        }
        for (long m = 1; m <= d[pos] + 1; ++m) {
            mu[pos] = m;
            rec(pos + 1);
        }
    };
    rec(0);
    return acc;
}

bool lx6_identity_check(long g, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());
    if (g < 2) throw std::invalid_argument("lx6_identity_check: need g >= 2");
    for (long x : d)
        if (x < 1) throw std::invalid_argument("lx6_identity_check: need d_j >= 1");
    if (sum_of(d) - n != g)
        throw std::invalid_argument("lx6_identity_check: need sum (d_j - 1) = g");

    // The Chern-character side carries the signed Bernoulli number (it is
    // the inverse of the reduction prefactor); the lambda side uses the
    // absolute value.
    Rational b2 = bernoulli(2 * g - 2);
    Rational lhs = Rational(factorial(2 * g - 2)) / b2 * ch_eval(g, d, {2 * g - 3});
    if (b2 < 0) b2 = -b2;

    HodgeIntegrand w1{g, d, {}, {g - 1, g - 2}, {}};
    Rational mid = hodge_integral(w1);
    if (g >= 3) {
        HodgeIntegrand w2{g, d, {}, {g - 3, g}, {}};
        mid -= 3 * hodge_integral(w2);
    }
    mid *= Rational(2 * g - 2) / b2;

    Rational rhs = 0;
    for (long j = 0; j <= 2 * g - 4; ++j) {
        std::vector<long> t = d;
        t.push_back(2 * g - 4 - j);
        t.push_back(j);
        Rational term = psi_correlator(g - 1, std::move(t));
        rhs += (j % 2 != 0) ? -term : term;
    }
    rhs /= 2;
    Integer den = factorial(2 * g - 3);
    for (long i = 0; i < 2 * g + 1; ++i) den *= 2;
    for (long x : d) den *= double_factorial(2 * x - 1);
    rhs += rat(factorial(2 * g - 3 + n), den);

    return lhs == mid && mid == rhs;
}

bool faber_intersection_check(long g, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());
    if (g < 2) throw std::invalid_argument("faber_intersection_check: need g >= 2");
    for (long x : d)
        if (x < 1) throw std::invalid_argument("faber_intersection_check: need d_j >= 1");
    if (sum_of(d) != g + n - 2)
        throw std::invalid_argument("faber_intersection_check: need sum d = g+n-2");

    std::vector<long> t = d;
    t.push_back(2 * g);
    Rational lhs = psi_correlator(g, std::move(t));
    for (size_t j = 0; j < d.size(); ++j) {
        std::vector<long> u = d;
        u[j] += 2 * g - 1;
        lhs -= psi_correlator(g, std::move(u));
    }
    Rational boundary = 0;
    for (long j = 0; j <= 2 * g - 2; ++j) {
        Rational sign = (j % 2 != 0) ? Rational(-1) : Rational(1);
        std::vector<long> u = d;
        u.push_back(2 * g - 2 - j);
        u.push_back(j);
        boundary += sign * psi_correlator(g - 1, std::move(u));
        for (const auto& sp : multiset_splits(d)) {
            for (long gp = 0; gp <= g; ++gp) {
                std::vector<long> left = sp.left;
                left.push_back(j);
                Rational a = psi_correlator(gp, std::move(left));
                if (a == 0) continue;
                std::vector<long> right = sp.right;
                right.push_back(2 * g - 2 - j);
                boundary += sign * Rational(sp.count) * a * psi_correlator(g - gp, std::move(right));
            }
        }
    }
    lhs += boundary / 2;

    Integer den = factorial(2 * g - 1);
    for (long i = 0; i < 2 * g - 1; ++i) den *= 2;
    for (long x : d) den *= double_factorial(2 * x - 1);
    return lhs == rat(factorial(2 * g - 3 + n), den);
}

} // namespace moduli
