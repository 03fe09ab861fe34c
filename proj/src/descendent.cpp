#include <moduli/descendent.hpp>

#include <moduli/combinatorics.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace moduli {

CorrelatorKey::CorrelatorKey(long g, std::vector<long> d) : genus(g), indices(std::move(d)) {
    std::sort(indices.begin(), indices.end(), std::greater<long>());
}

bool CorrelatorKey::operator<(const CorrelatorKey& o) const {
    if (genus != o.genus) return genus < o.genus;
    return indices < o.indices;
}

std::string CorrelatorKey::str() const {
    std::ostringstream os;
    os << genus << ";";
    for (size_t i = 0; i < indices.size(); ++i) {
        if (i) os << ",";
        os << indices[i];
    }
    return os.str();
}

namespace {

std::shared_mutex g_psi_mutex;
std::map<CorrelatorKey, Rational> g_psi_cache;

bool stable(long g, long n) { return 2 * g - 2 + n > 0; }

long sum_of(const std::vector<long>& d) {
    long s = 0;
    for (long x : d) s += x;
    return s;
}

Rational psi_impl(long g, const std::vector<long>& d);

// Memoized total-function entry point; key indices sorted descending.
// Unstable targets and dimension mismatches evaluate to zero, so the
// recursion may call this freely on every boundary term.
Rational psi_memo(long g, std::vector<long> d) {
    if (g < 0) return 0;
    for (long x : d)
        if (x < 0) return 0;
    if (!stable(g, static_cast<long>(d.size()))) return 0;
    if (sum_of(d) != 3 * g - 3 + static_cast<long>(d.size())) return 0;
    CorrelatorKey key(g, std::move(d));
    {
        std::shared_lock lock(g_psi_mutex);
        auto it = g_psi_cache.find(key);
        if (it != g_psi_cache.end()) return it->second;
    }
    Rational value = psi_impl(key.genus, key.indices);
    std::unique_lock lock(g_psi_mutex);
    g_psi_cache.emplace(key, value);
    return value;
}

// d sorted descending, already validated: stable, dimension correct.
Rational psi_impl(long g, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());

    if (g == 0) return genus0_closed(d);

    // String equation: remove one zero index, lower each remaining index.
    if (!d.empty() && d.back() == 0) {
        std::vector<long> rest(d.begin(), d.end() - 1);
        Rational acc = 0;
        for (size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            std::vector<long> t = rest;
            --t[j];
            acc += psi_memo(g, std::move(t));
        }
        return acc;
    }

    if (g == 1 && n == 1 && d[0] == 1) return rat(1, 24); // <tau_1>_1

    // Raise the largest index via the Virasoro-derived recursion:
    // treat d[0] as tau_{k+1}.
    long k = d[0] - 1;
    std::vector<long> rest(d.begin() + 1, d.end());
    Rational acc = 0;

    // Point-merging terms.
    for (size_t j = 0; j < rest.size(); ++j) {
        std::vector<long> t = rest;
        t[j] += k;
        Rational coef(double_factorial(2 * k + 2 * rest[j] + 1), double_factorial(2 * rest[j] - 1));
        coef.canonicalize();
        acc += coef * psi_memo(g, std::move(t));
    }

    // Boundary terms.
    if (k >= 1) {
        Rational boundary = 0;
        auto splits = multiset_splits(rest);
        for (long r = 0; r <= k - 1; ++r) {
            long s = k - 1 - r;
            Rational w(double_factorial(2 * r + 1) * double_factorial(2 * s + 1));

            // Irreducible boundary: genus drops by one.
            std::vector<long> t = rest;
            t.push_back(r);
            t.push_back(s);
            boundary += w * psi_memo(g - 1, std::move(t));

            // Separating boundary: ordered genus and point splits.
            for (long gp = 0; gp <= g; ++gp) {
                for (const auto& sp : splits) {
                    std::vector<long> left = sp.left;
                    left.push_back(r);
                    Rational a = psi_memo(gp, std::move(left));
                    if (a == 0) continue;
                    std::vector<long> right = sp.right;
                    right.push_back(s);
                    boundary += w * Rational(sp.count) * a * psi_memo(g - gp, std::move(right));
                }
            }
        }
        acc += boundary / 2;
    }

    return acc / Rational(double_factorial(2 * k + 3));
}

} // namespace

Rational genus0_closed(const std::vector<long>& d) {
    long n = static_cast<long>(d.size());
    if (n < 3) throw std::invalid_argument("genus0_closed: need n >= 3");
    if (sum_of(d) != n - 3) return 0;
    for (long x : d)
        if (x < 0) return 0;
    return Rational(multinomial(n - 3, d));
}

Rational psi_correlator(long g, std::vector<long> d) { return psi_memo(g, std::move(d)); }

Rational string_reduce(long g, std::vector<long> d) {
    auto it = std::find(d.begin(), d.end(), 0L);
    if (it == d.end()) throw std::invalid_argument("string_reduce: no zero index");
    d.erase(it);
    if (!stable(g, static_cast<long>(d.size())))
        throw std::invalid_argument("string_reduce: unstable target");
    Rational acc = 0;
    for (size_t j = 0; j < d.size(); ++j) {
        if (d[j] == 0) continue;
        std::vector<long> t = d;
        --t[j];
        acc += psi_correlator(g, std::move(t));
    }
    return acc;
}

Rational dilaton_reduce(long g, std::vector<long> d) {
    auto it = std::find(d.begin(), d.end(), 1L);
    if (it == d.end()) throw std::invalid_argument("dilaton_reduce: no index equal to 1");
    d.erase(it);
    long n = static_cast<long>(d.size());
    if (!stable(g, n)) throw std::invalid_argument("dilaton_reduce: unstable remainder");
    return Rational(2 * g - 2 + n) * psi_correlator(g, std::move(d));
}

namespace {

std::shared_mutex g_eff_mutex;
std::map<CorrelatorKey, Rational> g_eff_cache;

// Total-function evaluator for the lower-genus route. Never calls the
// Virasoro-style recursion: genus 0 closed form, string equation for zero
// indices, otherwise the genus-lowering identity.
Rational eff_eval(long g, std::vector<long> d);

Rational eff_impl(long g, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());

    if (g == 0) return genus0_closed(d);

    if (!d.empty() && d.back() == 0) {
        std::vector<long> rest(d.begin(), d.end() - 1);
        Rational acc = 0;
        for (size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            std::vector<long> t = rest;
            --t[j];
            acc += eff_eval(g, std::move(t));
        }
        return acc;
    }

    if (g == 1 && n == 1 && d[0] == 1) return rat(1, 24);

    // All indices >= 1 here; every nonzero right-hand term has genus < g.
    long d1 = d[0];
    std::vector<long> rest(d.begin() + 1, d.end());
    Rational acc = 0;

    {
        std::vector<long> t = rest;
        t.push_back(d1 + 1);
        t.insert(t.end(), 4, 0);
        acc += rat(2 * d1 + 3, 12) * eff_eval(g - 1, std::move(t));
    }
    {
        std::vector<long> t = d;
        t.insert(t.end(), 3, 0);
        acc -= rat(2 * g + n - 1, 6) * eff_eval(g - 1, std::move(t));
    }
    for (const auto& sp : multiset_splits(rest)) {
        for (long gp = 0; gp <= g; ++gp) {
            std::vector<long> right = sp.right;
            right.insert(right.end(), 2, 0);
            Rational b = eff_eval(g - gp, std::move(right));
            if (b == 0) continue; // skips in particular every same-genus branch
            std::vector<long> left1 = sp.left;
            left1.push_back(d1 + 1);
            left1.insert(left1.end(), 2, 0);
            acc += Rational(2 * d1 + 3) * Rational(sp.count) * eff_eval(gp, std::move(left1)) * b;
            std::vector<long> left2 = sp.left;
            left2.push_back(d1);
            left2.push_back(0);
            acc -= Rational(2 * g + n - 1) * Rational(sp.count) * eff_eval(gp, std::move(left2)) * b;
        }
    }
    return acc / Rational((2 * g + n - 1) * (2 * g + n - 2));
}

Rational eff_eval(long g, std::vector<long> d) {
    if (g < 0) return 0;
    for (long x : d)
        if (x < 0) return 0;
    long n = static_cast<long>(d.size());
    if (!stable(g, n)) return 0;
    if (sum_of(d) != 3 * g - 3 + n) return 0;
    CorrelatorKey key(g, std::move(d));
    {
        std::shared_lock lock(g_eff_mutex);
        auto it = g_eff_cache.find(key);
        if (it != g_eff_cache.end()) return it->second;
    }
    Rational value = eff_impl(key.genus, key.indices);
    std::unique_lock lock(g_eff_mutex);
    g_eff_cache.emplace(key, value);
    return value;
}

} // namespace

Rational effective_recursion(long g, std::vector<long> d) { return eff_eval(g, std::move(d)); }

std::vector<std::pair<std::string, std::string>> psi_cache_export() {
    std::shared_lock lock(g_psi_mutex);
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(g_psi_cache.size());
    for (const auto& [key, value] : g_psi_cache) out.emplace_back(key.str(), rat_str(value));
    return out;
}

void psi_cache_import(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::unique_lock lock(g_psi_mutex);
    for (const auto& [key, value] : entries) {
        std::istringstream is(key);
        long g;
        char sep;
        if (!(is >> g >> sep) || sep != ';') continue;
        std::vector<long> d;
        long x;
        while (is >> x) {
            d.push_back(x);
            is >> sep;
        }
        g_psi_cache.emplace(CorrelatorKey(g, std::move(d)), rat_parse(value));
    }
}

} // namespace moduli
