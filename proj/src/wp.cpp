#include <moduli/wp.hpp>

#include <moduli/descendent.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace moduli {

namespace {

bool stable(long g, long n) { return 2 * g - 2 + n > 0; }

long sum_of(const std::vector<long>& v) { return std::accumulate(v.begin(), v.end(), 0L); }

std::shared_mutex g_alpha_mutex;
std::map<MultiIndex, Rational> g_alpha_cache;

Rational alpha_impl(const MultiIndex& b) {
    Rational acc = 0;
    for (const MultiIndex& L : b.sub_indices()) {
        if (L == b) continue; // L' must be nonzero
        MultiIndex Lp = b - L;
        Rational term = alpha(L) /
                        (Rational(L.index_factorial()) * Rational(Lp.index_factorial()) *
                         Rational(double_factorial(2 * Lp.weight() + 1)));
        acc += (Lp.length() % 2 != 0) ? term : -term;
    }
    return Rational(b.index_factorial()) * acc;
}

} // namespace

Rational alpha(const MultiIndex& L) {
    if (L.is_zero()) return 1;
    {
        std::shared_lock lock(g_alpha_mutex);
        auto it = g_alpha_cache.find(L);
        if (it != g_alpha_cache.end()) return it->second;
    }
    Rational value = alpha_impl(L);
    std::unique_lock lock(g_alpha_mutex);
    g_alpha_cache.emplace(L, value);
    return value;
}

bool alpha_relation_check(const MultiIndex& b) {
    if (b.is_zero()) throw std::invalid_argument("alpha_relation_check: b must be nonzero");
    Rational acc = 0;
    for (const MultiIndex& L : b.sub_indices()) {
        MultiIndex Lp = b - L;
        Rational term = alpha(L) /
                        (Rational(L.index_factorial()) * Rational(Lp.index_factorial()) *
                         Rational(double_factorial(2 * Lp.weight() + 1)));
        acc += (L.length() % 2 != 0) ? -term : term;
    }
    return acc == 0;
}

// ---------------------------------------------------------------------------
// Mixed kappa-psi recursion
// ---------------------------------------------------------------------------

namespace {

std::shared_mutex g_kt_mutex;
std::map<std::tuple<long, MultiIndex, std::vector<long>>, Rational> g_kt_cache;

Rational kt(long g, const MultiIndex& b, std::vector<long> d);

Rational kt_impl(long g, const MultiIndex& b, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());
    if (g == 0 && n == 3 && b.is_zero()) return 1;
    if (g == 1 && n == 1 && b.is_zero() && d[0] == 1) return rat(1, 24);
    if (g == 1 && n == 1 && b == MultiIndex::delta(1) && d[0] == 0) return rat(1, 24);

    long d1 = d[0]; // largest psi exponent is the distinguished one
    std::vector<long> rest(d.begin() + 1, d.end());
    Rational acc = 0;
    auto subs = b.sub_indices();

    // Point-merging terms.
    for (size_t j = 0; j < rest.size(); ++j) {
        for (const MultiIndex& L : subs) {
            long idx = L.weight() + d1 + rest[j] - 1;
            if (idx < 0) continue;
            Rational coef = alpha(L) * Rational(multi_binomial2(b, L)) *
                            rat(double_factorial(2 * (L.weight() + d1 + rest[j]) - 1),
                                double_factorial(2 * rest[j] - 1));
            std::vector<long> t;
            t.reserve(rest.size());
            for (size_t i = 0; i < rest.size(); ++i)
                if (i != j) t.push_back(rest[i]);
            t.push_back(idx);
            acc += coef * kt(g, b - L, std::move(t));
        }
    }

    // Boundary terms.
    Rational boundary = 0;
    auto splits = multiset_splits(rest);
    for (const MultiIndex& L : subs) {
        long rs = L.weight() + d1 - 2;
        if (rs < 0) continue;
        Rational aL = alpha(L) * Rational(multi_binomial2(b, L));
        MultiIndex brem = b - L;
        for (long r = 0; r <= rs; ++r) {
            long s = rs - r;
            Rational w = aL * Rational(double_factorial(2 * r + 1) * double_factorial(2 * s + 1));
            // Irreducible boundary.
            std::vector<long> t = rest;
            t.push_back(r);
            t.push_back(s);
            boundary += w * kt(g - 1, brem, std::move(t));
            // Separating boundary: split remaining kappa and points.
            for (const MultiIndex& e : brem.sub_indices()) {
                MultiIndex f = brem - e;
                Rational we = w *
                              Rational(multi_binomial2(brem, e)); // binom(b;L,e,f)/binom(b;L)
                for (const auto& sp : splits) {
                    for (long gp = 0; gp <= g; ++gp) {
                        std::vector<long> left = sp.left;
                        left.push_back(r);
                        Rational a = kt(gp, e, std::move(left));
                        if (a == 0) continue;
                        std::vector<long> right = sp.right;
                        right.push_back(s);
                        boundary += we * Rational(sp.count) * a * kt(g - gp, f, std::move(right));
                    }
                }
            }
        }
    }
    acc += boundary / 2;
    return acc / Rational(double_factorial(2 * d1 + 1));
}

Rational kt(long g, const MultiIndex& b, std::vector<long> d) {
    if (g < 0 || d.empty()) return 0;
    for (long x : d)
        if (x < 0) return 0;
    long n = static_cast<long>(d.size());
    if (!stable(g, n)) return 0;
    if (b.weight() + sum_of(d) != 3 * g - 3 + n) return 0;
    std::sort(d.begin(), d.end(), std::greater<long>());
    std::tuple<long, MultiIndex, std::vector<long>> key{g, b, std::move(d)};
    {
        std::shared_lock lock(g_kt_mutex);
        auto it = g_kt_cache.find(key);
        if (it != g_kt_cache.end()) return it->second;
    }
    Rational value = kt_impl(g, std::get<1>(key), std::get<2>(key));
    std::unique_lock lock(g_kt_mutex);
    g_kt_cache.emplace(std::move(key), value);
    return value;
}

} // namespace

Rational wp_mixed(long g, const MultiIndex& b, const std::vector<long>& d) {
    if (d.empty()) throw std::invalid_argument("wp_mixed: need n >= 1 (use wp_n0_reduce)");
    return kt(g, b, d);
}

Rational wp_n0_reduce(long g, const MultiIndex& b) {
    if (g < 2) throw std::invalid_argument("wp_n0_reduce: need g >= 2");
    Rational acc = 0;
    for (const MultiIndex& L : b.sub_indices()) {
        Rational term = Rational(multi_binomial2(b, L)) * kt(g, b - L, {L.weight() + 1});
        acc += (L.length() % 2 != 0) ? -term : term;
    }
    return acc / Rational(2 * g - 2);
}

// ---------------------------------------------------------------------------
// psi-free volume recursions
// ---------------------------------------------------------------------------

namespace {

std::shared_mutex g_vol_mutex;
std::map<std::tuple<long, long, MultiIndex>, Rational> g_vol_cache;

Rational vol(long g, long n, const MultiIndex& b);

// V_{g,n}(b + delta_ell), where ell = 0 means a kappa_0 insertion acting
// as the Euler-characteristic scalar 2g-2+n.
Rational vol_delta(long g, long n, const MultiIndex& b, long ell) {
    if (ell == 0) return Rational(2 * g - 2 + n) * vol(g, n, b);
    return vol(g, n, b + MultiIndex::delta(ell));
}

Rational vol_impl(long g, long n, const MultiIndex& b) {
    if (g == 0 && n == 3 && b.is_zero()) return 1;
    if (g == 0 && b.length() == 1) return 1; // dimension forces b = delta_{n-3}

    Rational acc = vol(g - 1, n + 3, b) / 12;
    auto subs = b.sub_indices();
    for (const MultiIndex& L : subs) {
        MultiIndex Lp = b - L;
        if (Lp.length() >= 2)
            acc -= Rational(multi_binomial2(b, L)) * vol(g, n, L + MultiIndex::delta(Lp.weight()));
    }
    Rational split = 0;
    for (const MultiIndex& L : subs) {
        MultiIndex Lp = b - L;
        if (L.is_zero() || Lp.is_zero()) continue;
        Rational w(multi_binomial2(b, L));
        for (long r = 0; r <= n - 1; ++r) {
            long s = n - 1 - r;
            Rational wr = w * Rational(binomial(n - 1, r));
            for (long gp = 0; gp <= g; ++gp) {
                Rational a = vol(gp, r + 2, L);
                if (a == 0) continue;
                split += wr * a * vol(g - gp, s + 2, Lp);
            }
        }
    }
    acc += split / 2;
    return acc / Rational(2 * g - 1 + b.length());
}

Rational vol(long g, long n, const MultiIndex& b) {
    if (g < 0 || n < 1 || !stable(g, n)) return 0;
    if (b.weight() != 3 * g - 3 + n) return 0;
    std::tuple<long, long, MultiIndex> key{g, n, b};
    {
        std::shared_lock lock(g_vol_mutex);
        auto it = g_vol_cache.find(key);
        if (it != g_vol_cache.end()) return it->second;
    }
    Rational value = vol_impl(g, n, b);
    std::unique_lock lock(g_vol_mutex);
    g_vol_cache.emplace(std::move(key), value);
    return value;
}

Rational closed_vol(long g, const MultiIndex& b);

Rational closed_vol_impl(long g, const MultiIndex& b) {
    Rational acc = 0;
    auto subs = b.sub_indices();
    for (const MultiIndex& L : subs) {
        MultiIndex Lp = b - L;
        Rational w(multi_binomial2(b, L));
        acc += 5 * w * vol(g, 1, L + MultiIndex::delta(Lp.weight() + 1));
        acc -= w * vol_delta(g - 1, 3, L, Lp.weight()) / 6;
        if (Lp.length() >= 2) {
            MultiIndex M = L + MultiIndex::delta(Lp.weight());
            acc -= Rational(2 * g - 1 + b.length()) * w * closed_vol(g, M);
            for (const MultiIndex& e : M.sub_indices()) {
                MultiIndex f = M - e;
                Rational inner = Rational(multi_binomial2(M, e));
                if (f.is_zero()) {
                    acc -= w * inner * Rational(2 * g - 2) * closed_vol(g, e);
                } else {
                    acc -= w * inner * closed_vol(g, e + MultiIndex::delta(f.weight()));
                }
            }
        }
    }
    // Separating term over three-way kappa splits.
    for (const MultiIndex& L : subs) {
        MultiIndex rem = b - L;
        for (const MultiIndex& e : rem.sub_indices()) {
            MultiIndex f = rem - e;
            Rational w = Rational(multi_binomial2(b, L)) * Rational(multi_binomial2(rem, e));
            for (long gp = 0; gp <= g; ++gp) {
                Rational a = vol_delta(gp, 1, e, L.weight());
                if (a == 0) continue;
                acc -= w * a * vol(g - gp, 2, f);
            }
        }
    }
    Rational coef = Rational((2 * g - 1) * (2 * g - 2)) +
                    Rational((4 * g - 3) * b.length()) + Rational(b.length() * b.length());
    return acc / coef;
}

Rational closed_vol(long g, const MultiIndex& b) {
    if (b.weight() != 3 * g - 3) return 0;
    std::tuple<long, long, MultiIndex> key{g, 0, b};
    {
        std::shared_lock lock(g_vol_mutex);
        auto it = g_vol_cache.find(key);
        if (it != g_vol_cache.end()) return it->second;
    }
    Rational value = closed_vol_impl(g, b);
    std::unique_lock lock(g_vol_mutex);
    g_vol_cache.emplace(std::move(key), value);
    return value;
}

} // namespace

Rational wp_volume(long g, long n, const MultiIndex& b) {
    if (n < 1) throw std::invalid_argument("wp_volume: need n >= 1 (use wp_volume_closed)");
    return vol(g, n, b);
}

Rational wp_volume_closed(long g, const MultiIndex& b) {
    if (g < 2) throw std::invalid_argument("wp_volume_closed: need g >= 2");
    return closed_vol(g, b);
}

Rational kappa_psi_exchange(long g, const std::vector<long>& d, const MultiIndex& b) {
    long n = static_cast<long>(d.size());
    if (g < 0) return 0;
    for (long x : d)
        if (x < 0) return 0;
    if (!stable(g, n)) return 0;
    if (b.weight() + sum_of(d) != 3 * g - 3 + n) return 0;

    // Find a point with positive exponent to trade away. Removing a point
    // must keep the target space stable, so leave at least one point at
    // genus 1 and three at genus 0; a blocked configuration is handed to
    // the mixed recursion instead.
    long min_points = g >= 2 ? 0 : (g == 1 ? 1 : 3);
    long pick = -1;
    for (long i = 0; i < n; ++i)
        if (d[i] >= 1) pick = i;
    if (pick < 0) {
        if (n == 0) return closed_vol(g, b);
        return vol(g, n, b);
    }
    if (n - 1 < min_points) return kt(g, b, d);
    std::vector<long> rest;
    for (long i = 0; i < n; ++i)
        if (i != pick) rest.push_back(d[i]);
    Rational acc = 0;
    for (const MultiIndex& L : b.sub_indices()) {
        long idx = L.weight() + d[pick] - 1;
        Rational w(multi_binomial2(b, L));
        if (idx == 0) {
            acc += w * Rational(2 * g - 2 + n - 1) * kappa_psi_exchange(g, rest, b - L);
        } else {
            acc += w * kappa_psi_exchange(g, rest, (b - L) + MultiIndex::delta(idx));
        }
    }
    return acc;
}

} // namespace moduli
