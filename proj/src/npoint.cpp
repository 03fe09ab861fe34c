#include <moduli/npoint.hpp>

#include <moduli/combinatorics.hpp>
#include <moduli/descendent.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace moduli {

namespace {

bool stable(long g, long n) { return 2 * g - 2 + n > 0; }

std::shared_mutex g_np_mutex;
std::map<std::pair<long, long>, SymPoly> g_G_cache;
std::map<std::pair<long, long>, SymPoly> g_F_cache;

std::vector<long> mask_to_vars(long n, unsigned mask) {
    std::vector<long> v;
    for (long i = 0; i < n; ++i)
        if (mask & (1u << i)) v.push_back(i);
    return v;
}

// (sum_{i in I} x_i)^2 * G_{g'}(x_I), embedded into n variables, with the
// unstable cases replaced by their Laurent-tail limits:
//   g'=0, |I|=1: x^2 * (1/x^2) = 1
//   g'>0, |I|=1: 0
//   g'=0, |I|=2: (x+y)^2 * (1/(x+y)) = x+y
SymPoly split_block(long n, long gp, const std::vector<long>& I) {
    long m = static_cast<long>(I.size());
    if (m == 1) return gp == 0 ? SymPoly::constant(n, 1) : SymPoly(n);
    if (m == 2 && gp == 0) return SymPoly::linear_sum(n, I);
    SymPoly s = SymPoly::linear_sum(n, I);
    std::vector<long> mapping(I.begin(), I.end());
    return s * s * npoint_G(gp, m).embed(n, mapping);
}

SymPoly npoint_G_impl(long g, long n) {
    std::vector<long> all(n);
    std::iota(all.begin(), all.end(), 0);
    SymPoly sumx = SymPoly::linear_sum(n, all);

    if (g == 0 && n == 3) return SymPoly::constant(3, 1);
    if (n == 1) return SymPoly(1); // 1/x^2 has no polynomial genus-g piece

    // Point-splitting recursion: (2g+n-1) G_g equals the split sum divided
    // by 2*(sum x), plus the cubic-difference term carrying G_{g-1}.
    SymPoly split_sum(n);
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<long> I = mask_to_vars(n, mask);
        std::vector<long> J = mask_to_vars(n, (~mask) & ((1u << n) - 1));
        for (long gp = 0; gp <= g; ++gp) {
            SymPoly a = split_block(n, gp, I);
            if (a.is_zero()) continue;
            SymPoly b = split_block(n, g - gp, J);
            if (b.is_zero()) continue;
            split_sum += a * b;
        }
    }
    SymPoly result = split_sum.divide_by_linear(all) / 2;

    if (g >= 1) {
        SymPoly dterm(n);
        if (g == 1 && n == 2) {
            // Delta * G_0(x,y) = xy(x+y) * 1/(x+y) = xy
            dterm = SymPoly::monomial({1, 1}, 1);
        } else {
            SymPoly cubes(n);
            for (long i = 0; i < n; ++i) {
                SymPoly::Exponents e(n, 0);
                e[i] = 3;
                cubes.add_term(e, 1);
            }
            SymPoly delta = (sumx.pow(3) - cubes) / 3;
            dterm = delta * npoint_G(g - 1, n);
        }
        result += dterm / 4;
    }
    result = result / Rational(2 * g + n - 1);

    if (!result.is_homogeneous(3 * g + n - 3) || !result.is_symmetric())
        throw std::logic_error("npoint_G: internal consistency failure");
    return result;
}

} // namespace

SymPoly npoint_G(long g, long n) {
    if (g < 0 || !stable(g, n)) throw std::invalid_argument("npoint_G: unstable (g,n)");
    std::pair<long, long> key{g, n};
    {
        std::shared_lock lock(g_np_mutex);
        auto it = g_G_cache.find(key);
        if (it != g_G_cache.end()) return it->second;
    }
    SymPoly value = npoint_G_impl(g, n);
    std::unique_lock lock(g_np_mutex);
    return g_G_cache.emplace(key, std::move(value)).first->second;
}

SymPoly npoint_F(long g, long n) {
    if (g < 0 || !stable(g, n)) throw std::invalid_argument("npoint_F: unstable (g,n)");
    std::pair<long, long> key{g, n};
    {
        std::shared_lock lock(g_np_mutex);
        auto it = g_F_cache.find(key);
        if (it != g_F_cache.end()) return it->second;
    }

    SymPoly value(n);
    if (n == 1) {
        // F_g(x) = x^{3g-2} / (24^g g!)
        Integer den = factorial(g);
        for (long i = 0; i < g; ++i) den *= 24;
        value = SymPoly::monomial({3 * g - 2}, rat(Integer(1), den));
    } else {
        SymPoly cubes(n);
        for (long i = 0; i < n; ++i) {
            SymPoly::Exponents e(n, 0);
            e[i] = 3;
            cubes.add_term(e, 1);
        }
        SymPoly ecum = SymPoly::constant(n, 1); // (sum x^3 / 24)^j / j!
        for (long j = 0; j <= g; ++j) {
            if (j > 0) ecum = ecum * cubes / Rational(24 * j);
            long gj = g - j;
            if (gj == 0 && n == 2) {
                // The j = g tail pairs with G_0(x,y) = 1/(x+y); the product
                // is a polynomial because x^3+y^3 is divisible by x+y.
                value += ecum.divide_by_linear({0, 1});
            } else {
                value += ecum * npoint_G(gj, n);
            }
        }
    }

    std::unique_lock lock(g_np_mutex);
    return g_F_cache.emplace(key, std::move(value)).first->second;
}

SymPoly two_point_genus(long g) {
    if (g < 1) throw std::invalid_argument("two_point_genus: need g >= 1");
    // g!/(2^g (2g+1)!) * (xy)^g * (x+y)^{g-1}
    Integer den = factorial(2 * g + 1);
    for (long i = 0; i < g; ++i) den *= 2;
    SymPoly xy = SymPoly::monomial({1, 1}, 1);
    SymPoly xpy = SymPoly::linear_sum(2, {0, 1});
    return xy.pow(g) * xpy.pow(g - 1) * rat(factorial(g), den);
}

SymPoly three_point_genus(long g) {
    if (g < 0) throw std::invalid_argument("three_point_genus: need g >= 0");
    std::vector<long> all{0, 1, 2};
    SymPoly xpy = SymPoly::linear_sum(3, {0, 1});
    SymPoly ypz = SymPoly::linear_sum(3, {1, 2});
    SymPoly zpx = SymPoly::linear_sum(3, {2, 0});
    SymPoly big_delta = xpy * ypz * zpx;
    SymPoly result(3);
    for (long r = 0; r <= g; ++r) {
        long s = g - r;
        // S_r = [ (xy)^r (x+y)^{r+1} + cyclic ] / (x+y+z)
        SymPoly num = SymPoly::monomial({1, 1, 0}, 1).pow(r) * xpy.pow(r + 1) +
                      SymPoly::monomial({0, 1, 1}, 1).pow(r) * ypz.pow(r + 1) +
                      SymPoly::monomial({1, 0, 1}, 1).pow(r) * zpx.pow(r + 1);
        SymPoly Sr = num.divide_by_linear(all);
        Integer den1 = double_factorial(2 * r + 1) * 2; // 4^r (2r+1)!! * 2
        for (long i = 0; i < 2 * r; ++i) den1 *= 2;
        Integer den2 = factorial(r + s + 1); // 8^s (r+s+1)!
        for (long i = 0; i < 3 * s; ++i) den2 *= 2;
        result += Sr * rat(factorial(r), den1) * big_delta.pow(s) / Rational(den2);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Weighted binary-tree expansion
// ---------------------------------------------------------------------------

namespace {

struct TreeNode {
    std::vector<long> leaves; // labels below this node, sorted
    long left = -1, right = -1;
};
using Tree = std::vector<TreeNode>; // root is the last entry

// All unordered leaf-labelled binary tree shapes on the given labels,
// enumerated by splitting off the subset containing the smallest label.
std::vector<Tree> tree_shapes(const std::vector<long>& labels) {
    std::vector<Tree> out;
    if (labels.size() == 1) {
        out.push_back({TreeNode{labels, -1, -1}});
        return out;
    }
    long m = static_cast<long>(labels.size());
    for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
        if (!(mask & 1u)) continue; // smallest label stays on the left
        std::vector<long> L, R;
        for (long i = 0; i < m; ++i)
            ((mask >> i) & 1u ? L : R).push_back(labels[i]);
        for (const Tree& tl : tree_shapes(L)) {
            for (const Tree& tr : tree_shapes(R)) {
                Tree t = tl;
                long off = static_cast<long>(t.size());
                for (TreeNode nd : tr) {
                    if (nd.left >= 0) nd.left += off;
                    if (nd.right >= 0) nd.right += off;
                    t.push_back(std::move(nd));
                }
                TreeNode root;
                root.left = off - 1;
                root.right = static_cast<long>(t.size()) - 1;
                root.leaves = labels;
                t.push_back(std::move(root));
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

// Double factorial with the empty-product reading for the arguments -1 and
// -2 that arise at leaves of the weighted trees.
Integer tree_df(long k) { return k <= 0 ? Integer(1) : double_factorial(k); }

void for_each_weighting(long nodes, long total,
                        std::vector<long>& w,
                        const std::function<void(const std::vector<long>&)>& f) {
    if (static_cast<long>(w.size()) == nodes - 1) {
        w.push_back(total);
        f(w);
        w.pop_back();
        return;
    }
    for (long v = 0; v <= total; ++v) {
        w.push_back(v);
        for_each_weighting(nodes, total - v, w, f);
        w.pop_back();
    }
}

SymPoly wmb_tree_sum(long g, long n, const Tree& tree, long* count) {
    long nodes = static_cast<long>(tree.size());
    // subtree_sum[v] depends on the weighting; precompute child lists once.
    SymPoly acc(n);
    std::vector<long> w;
    for_each_weighting(nodes, g, w, [&](const std::vector<long>& wt) {
        // Subtree weight totals (children precede parents in the arena).
        std::vector<long> sub(nodes);
        for (long v = 0; v < nodes; ++v) {
            sub[v] = wt[v];
            if (tree[v].left >= 0) sub[v] += sub[tree[v].left] + sub[tree[v].right];
        }
        Rational coef = 1;
        SymPoly mono = SymPoly::constant(n, 1);
        for (long v = 0; v < nodes; ++v) {
            long nl = static_cast<long>(tree[v].leaves.size());
            coef *= rat(tree_df(nl - 3 + 2 * (sub[v] - wt[v])), tree_df(nl - 1 + 2 * sub[v]));
            std::vector<long> vars;
            for (long lbl : tree[v].leaves) vars.push_back(lbl);
            mono = mono * SymPoly::linear_sum(n, vars).pow(3 * wt[v] + 1);
        }
        acc += mono * coef;
        if (count) ++*count;
    });
    return acc;
}

} // namespace

SymPoly wmb_expansion(long g, long n) {
    if (g < 0 || n < 1) throw std::invalid_argument("wmb_expansion: bad arguments");
    std::vector<long> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    SymPoly acc(n);
    for (const Tree& t : tree_shapes(labels)) acc += wmb_tree_sum(g, n, t, nullptr);
    return acc;
}

long wmb_configuration_count(long g, long n) {
    std::vector<long> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    long count = 0;
    for (const Tree& t : tree_shapes(labels))
        wmb_tree_sum(g, n, t, &count);
    return count;
}

// ---------------------------------------------------------------------------
// Coefficientwise route
// ---------------------------------------------------------------------------

namespace {

std::shared_mutex g_coef_mutex;
std::map<std::pair<long, std::vector<long>>, Rational> g_coef_cache;

Rational coef(long g, std::vector<long> d); // forward; d need not be sorted

// Coefficient of x^S in (sum_{i in S} x_i)^2 F_{g'}(x_S), by exponent
// multiset S (sorted descending).
Rational pair_block(long gp, const std::vector<long>& S) {
    long m = static_cast<long>(S.size());
    if (m == 1) {
        // x^2 * F_{g'}(x) = x^{3g'} / (24^{g'} g'!), including the g'=0 tail.
        if (S[0] != 3 * gp) return 0;
        Integer den = factorial(gp);
        for (long i = 0; i < gp; ++i) den *= 24;
        return rat(Integer(1), den);
    }
    if (m == 2 && gp == 0) {
        // (x+y)^2 F_0(x,y) has genus-zero part x+y.
        return (S[0] == 1 && S[1] == 0) ? 1 : 0;
    }
    Rational acc = 0;
    for (long i = 0; i < m; ++i) {
        for (long j = 0; j < m; ++j) {
            std::vector<long> t = S;
            --t[i];
            --t[j];
            if (t[i] < 0 || t[j] < 0) continue;
            acc += coef(gp, std::move(t));
        }
    }
    return acc;
}

// Coefficient of x^m in (sum x)^4 F_{g-1} over n variables.
Rational quartic_block(long gm, const std::vector<long>& m) {
    if (gm < 0) return 0;
    long n = static_cast<long>(m.size());
    if (n == 1) {
        // x^4 F_{gm}(x) = x^{3gm+2} / (24^{gm} gm!) with the gm=0 tail x^2.
        if (m[0] != 3 * gm + 2) return 0;
        Integer den = factorial(gm);
        for (long i = 0; i < gm; ++i) den *= 24;
        return rat(Integer(1), den);
    }
    if (n == 2 && gm == 0) {
        // (x+y)^4 F_0(x,y) has genus-zero part (x+y)^3.
        if (m[0] + m[1] != 3) return 0;
        return Rational(binomial(3, m[0]));
    }
    // Distribute total degree 4 over the variables.
    Rational acc = 0;
    std::vector<long> e(n, 0);
    std::function<void(long, long)> rec = [&](long pos, long left) {
        if (pos == n) {
            if (left != 0) return;
            std::vector<long> t(n);
            for (long i = 0; i < n; ++i) {
                t[i] = m[i] - e[i];
                if (t[i] < 0) return;
            }
            acc += Rational(multinomial(4, e)) * coef(gm, std::move(t));
            return;
        }
        for (long v = 0; v <= left; ++v) {
            e[pos] = v;
            rec(pos + 1, left - v);
        }
        e[pos] = 0;
    };
    rec(0, 4);
    return acc;
}

// Coefficient of x^m in the right-hand side of the recursion for
// (sum x) F_g: quartic lower-genus term plus genus- and point-splits.
Rational rhs_coeff(long g, const std::vector<long>& m) {
    Rational acc = quartic_block(g - 1, m) / 12;
    Rational splits = 0;
    for (const auto& sp : multiset_splits(m)) {
        if (sp.left.empty() || sp.right.empty()) continue;
        for (long gp = 0; gp <= g; ++gp) {
            Rational a = pair_block(gp, sp.left);
            if (a == 0) continue;
            splits += Rational(sp.count) * a * pair_block(g - gp, sp.right);
        }
    }
    return acc + splits / 2;
}

Rational coef_impl(long g, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());
    if (g == 0 && n == 3) return 1; // d == (0,0,0) after the dimension check
    // Bump the largest exponent and extract the coefficient of x^m from
    // (2g+n-1)(sum x) F_g; the sibling terms dominate d strictly, so the
    // chain terminates at the one-part exponent vector.
    std::vector<long> m = d;
    m[0] += 1;
    Rational acc = rhs_coeff(g, m) / Rational(2 * g + n - 1);
    for (long i = 1; i < n; ++i) {
        if (m[i] == 0) continue;
        std::vector<long> t = m;
        --t[i];
        acc -= coef(g, std::move(t));
    }
    return acc;
}

Rational coef(long g, std::vector<long> d) {
    if (g < 0) return 0;
    long n = static_cast<long>(d.size());
    for (long x : d)
        if (x < 0) return 0;
    if (!stable(g, n)) return 0;
    long total = std::accumulate(d.begin(), d.end(), 0L);
    if (total != 3 * g - 3 + n) return 0;
    std::sort(d.begin(), d.end(), std::greater<long>());
    std::pair<long, std::vector<long>> key{g, std::move(d)};
    {
        std::shared_lock lock(g_coef_mutex);
        auto it = g_coef_cache.find(key);
        if (it != g_coef_cache.end()) return it->second;
    }
    Rational value = coef_impl(g, key.second);
    std::unique_lock lock(g_coef_mutex);
    g_coef_cache.emplace(std::move(key), value);
    return value;
}

} // namespace

Rational npoint_coefficient(long g, const std::vector<long>& d) { return coef(g, d); }

// ---------------------------------------------------------------------------
// Leading z-coefficient checks for G_g(z, x_1..x_n)
// ---------------------------------------------------------------------------

namespace {

void sorted_exponents(long n, long total, long max_first, std::vector<long>& cur,
                      const std::function<void(const std::vector<long>&)>& emit) {
    if (n == 0) {
        if (total == 0) emit(cur);
        return;
    }
    for (long v = std::min(total, max_first); v >= 0; --v) {
        cur.push_back(v);
        sorted_exponents(n - 1, total - v, v, cur, emit);
        cur.pop_back();
    }
}

Integer odd_df_product(const std::vector<long>& d) {
    Integer p = 1;
    for (long x : d) p *= double_factorial(2 * x + 1);
    return p;
}

} // namespace

bool coeff_vanishing_check(long g, long n) {
    SymPoly G = npoint_G(g, n + 1); // variable 0 plays the distinguished role
    for (const auto& [e, c] : G.terms())
        if (e[0] > 2 * g - 2 + n && c != 0) return false;
    return true;
}

bool coeff_leading_check(long g, long n) {
    SymPoly G = npoint_G(g, n + 1);
    bool ok = true;
    std::vector<long> cur;
    sorted_exponents(n, g, g, cur, [&](const std::vector<long>& d) {
        SymPoly::Exponents e{2 * g - 2 + n};
        e.insert(e.end(), d.begin(), d.end());
        Integer denom = odd_df_product(d);
        for (long i = 0; i < g; ++i) denom *= 4;
        if (G.coeff(e) != rat(Integer(1), denom)) ok = false;
    });
    return ok;
}

bool coeff_subleading_check(long g, long n) {
    if (2 * g - 3 + n < 0) return true;
    SymPoly G = npoint_G(g, n + 1);
    bool ok = true;
    std::vector<long> cur;
    sorted_exponents(n, g + 1, g + 1, cur, [&](const std::vector<long>& d) {
        SymPoly::Exponents e{2 * g - 3 + n};
        e.insert(e.end(), d.begin(), d.end());
        long a = static_cast<long>(std::count(d.begin(), d.end(), 0L));
        // 2g^2 + (2n-1)g + (n^2-n)/2 - 3 + (5a - a^2)/2, over the common
        // double-factorial denominator.
        Rational num = Rational(2 * g * g + (2 * n - 1) * g - 3) +
                       rat(n * n - n, 2) + rat(5 * a - a * a, 2);
        Integer denom = odd_df_product(d);
        for (long i = 0; i < g; ++i) denom *= 4;
        if (G.coeff(e) != num / Rational(denom)) ok = false;
    });
    return ok;
}

// ---------------------------------------------------------------------------
// Convolution-type series and vanishing identities
// ---------------------------------------------------------------------------

namespace {

// Laurent slices of F_{g'}(sign*y, x_I) in n x-variables truncated to xbox.
LaurentSlice f_slice(long n, const std::vector<long>& xbox, long gp,
                     const std::vector<long>& I, int sign) {
    LaurentSlice out(n, xbox);
    long m = static_cast<long>(I.size());
    if (m == 0) {
        // One-point tail: F_{g'}(y) = y^{3g'-2} / (24^{g'} g'!); even
        // negative exponents make the sign irrelevant at g'=0.
        Integer den = factorial(gp);
        for (long i = 0; i < gp; ++i) den *= 24;
        Rational c = rat(Integer(1), den);
        if (sign < 0 && ((3 * gp - 2) % 2 != 0)) c = -c;
        out.add(3 * gp - 2, SymPoly::constant(n, c));
        return out;
    }
    if (m == 1 && gp == 0) {
        // 1/(y+x) and 1/(-y+x) expanded around y = infinity.
        long xi = I[0];
        for (long k = 0; k <= xbox[xi]; ++k) {
            SymPoly::Exponents e(n, 0);
            e[xi] = k;
            Rational c = sign > 0 ? (k % 2 ? Rational(-1) : Rational(1)) : Rational(-1);
            out.add(-1 - k, SymPoly::monomial(e, c));
        }
        return out;
    }
    SymPoly F = npoint_F(gp, m + 1); // variable 0 is the y slot
    for (const auto& [e, c] : F.terms()) {
        SymPoly::Exponents t(n, 0);
        for (long i = 0; i < m; ++i) t[I[i]] = e[i + 1];
        Rational cc = c;
        if (sign < 0 && (e[0] % 2 != 0)) cc = -cc;
        out.add(e[0], SymPoly::monomial(t, cc));
    }
    return out;
}

// (s*y + sum_{i in I} x_i)^p as a Laurent slice.
LaurentSlice linear_power(long n, const std::vector<long>& xbox, int s,
                          const std::vector<long>& I, long p) {
    LaurentSlice out(n, xbox);
    SymPoly sumI = I.empty() ? SymPoly(n) : SymPoly::linear_sum(n, I);
    SymPoly xpow = SymPoly::constant(n, 1);
    for (long t = p; t >= 0; --t) {
        // term: C(p, t) (s)^t y^t * (sum_I)^{p-t}; build powers incrementally
        Rational c(binomial(p, t));
        if (s < 0 && (t % 2 != 0)) c = -c;
        if (!xpow.is_zero()) out.add(t, xpow * c);
        if (t > 0) xpow = xpow * sumI;
    }
    return out;
}

} // namespace

Rational lab_coefficient(long g, long a, long b, long ypow, const std::vector<long>& d) {
    long n = static_cast<long>(d.size());
    std::vector<long> xbox = d;
    LaurentSlice total(n, xbox);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<long> I = mask_to_vars(n, mask);
        std::vector<long> J = mask_to_vars(n, (~mask) & ((1u << n) - 1));
        LaurentSlice pa = linear_power(n, xbox, +1, I, a);
        LaurentSlice pb = linear_power(n, xbox, -1, J, b);
        for (long gp = 0; gp <= g; ++gp) {
            LaurentSlice term = pa * pb * f_slice(n, xbox, gp, I, +1) *
                                f_slice(n, xbox, g - gp, J, -1);
            total = total + term;
        }
    }
    return total.coeff(ypow, d);
}

Rational virtual_correlator(long g, const std::vector<long>& d) {
    bool has_negative = std::any_of(d.begin(), d.end(), [](long x) { return x < 0; });
    if (!has_negative) return psi_correlator(g, d);
    if (g != 0) return 0;
    if (d.size() == 1 && d[0] == -2) return 1;
    if (d.size() == 2 && d[0] + d[1] == -1) {
        long m = std::max(d[0], d[1]);
        return m % 2 ? Rational(-1) : Rational(1);
    }
    return 0;
}

Rational alternating_convolution(long g, long k, const std::vector<long>& P,
                                 const std::vector<long>& Q) {
    long maxP = 0, maxQ = 0;
    for (long x : P) maxP = std::max(maxP, x);
    for (long x : Q) maxQ = std::max(maxQ, x);
    Rational acc = 0;
    for (long j = -(2 + maxP); j <= k + 2 + maxQ; ++j) {
        Rational sign = (j % 2 != 0) ? Rational(-1) : Rational(1);
        for (long gp = 0; gp <= g; ++gp) {
            std::vector<long> left{j};
            left.insert(left.end(), P.begin(), P.end());
            Rational va = virtual_correlator(gp, left);
            if (va == 0) continue;
            std::vector<long> right{k - j};
            right.insert(right.end(), Q.begin(), Q.end());
            acc += sign * va * virtual_correlator(g - gp, right);
        }
    }
    return acc;
}

} // namespace moduli
