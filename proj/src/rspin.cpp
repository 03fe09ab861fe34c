#include <moduli/rspin.hpp>

#include <moduli/combinatorics.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace moduli {

namespace {

std::shared_mutex g_rspin_mutex;
std::map<std::tuple<long, long, std::vector<RSpinInsertion>>, Rational> g_rspin_cache;

Rational eval(long r, long g, std::vector<RSpinInsertion> ins);

// Primary (all n = 0) genus-0 correlators: derivatives at the origin of the
// rank r-1 polynomial potentials
//   r=2: t0^3/6
//   r=3: t0^2 t1 / 2 + t1^4 / 72
//   r=4: t0^2 t2 / 2 + t0 t1^2 / 2 + t1^2 t2^2 / 16 + t2^5 / 960
Rational primary_value(long r, const std::vector<RSpinInsertion>& ins) {
    std::vector<long> count(r - 1, 0); // label multiplicities m = 0..r-2
    for (const auto& [n, m] : ins) ++count[m];
    struct Monomial {
        std::vector<long> expo;
        Rational coef;
    };
    static const auto match = [](const std::vector<long>& c, const std::vector<long>& e) {
        return c == e;
    };
    std::vector<Monomial> table;
    if (r == 2) {
        table = {{{3}, rat(1, 6)}};
    } else if (r == 3) {
        table = {{{2, 1}, rat(1, 2)}, {{0, 4}, rat(1, 72)}};
    } else {
        table = {{{2, 0, 1}, rat(1, 2)},
                 {{1, 2, 0}, rat(1, 2)},
                 {{0, 2, 2}, rat(1, 16)},
                 {{0, 0, 5}, rat(1, 960)}};
    }
    for (const Monomial& mono : table) {
        if (match(count, mono.expo)) {
            Rational v = mono.coef;
            for (long c : count) v *= Rational(factorial(c));
            return v;
        }
    }
    return 0;
}

// Genus-0 topological recursion: lower the highest descendent against two
// fixed co-insertions, splitting the rest over the two sides with the
// diagonal metric pairing m' + m'' = r - 2.
Rational genus0(long r, std::vector<RSpinInsertion> ins) {
    long s = static_cast<long>(ins.size());
    if (s < 3) return 0;
    long pick = 0;
    for (long i = 1; i < s; ++i)
        if (ins[i].first > ins[pick].first) pick = i;
    if (ins[pick].first == 0) return primary_value(r, ins);
    RSpinInsertion top = ins[pick];
    ins.erase(ins.begin() + pick);
    RSpinInsertion X = ins[0], Y = ins[1];
    std::vector<RSpinInsertion> rest(ins.begin() + 2, ins.end());
    std::sort(rest.begin(), rest.end());
    Rational acc = 0;
    for (const auto& sp : multiset_splits(rest)) {
        for (long mp = 0; mp <= r - 2; ++mp) {
            std::vector<RSpinInsertion> left = sp.left;
            left.push_back({top.first - 1, top.second});
            left.push_back({0, mp});
            std::vector<RSpinInsertion> right = sp.right;
            right.push_back({0, r - 2 - mp});
            right.push_back(X);
            right.push_back(Y);
            Rational lv = eval(r, 0, std::move(left));
            if (lv == 0) continue;
            acc += Rational(sp.count) * lv * eval(r, 0, std::move(right));
        }
    }
    return acc;
}

// The explicit lower-genus combinations of the puncture recursion, with the
// passenger insertions distributed over the factors.
Rational low_terms(long r, long g, const std::vector<RSpinInsertion>& passengers) {
    auto single = [&](long gg, std::vector<RSpinInsertion> fixed) -> Rational {
        if (gg < 0) return 0;
        fixed.insert(fixed.end(), passengers.begin(), passengers.end());
        return eval(r, gg, std::move(fixed));
    };
    auto split2 = [&](long gtot, std::vector<RSpinInsertion> fa,
                      std::vector<RSpinInsertion> fb) -> Rational {
        if (gtot < 0) return 0;
        Rational acc = 0;
        for (const auto& sp : multiset_splits(passengers)) {
            for (long gp = 0; gp <= gtot; ++gp) {
                std::vector<RSpinInsertion> left = fa;
                left.insert(left.end(), sp.left.begin(), sp.left.end());
                Rational lv = eval(r, gp, std::move(left));
                if (lv == 0) continue;
                std::vector<RSpinInsertion> right = fb;
                right.insert(right.end(), sp.right.begin(), sp.right.end());
                acc += Rational(sp.count) * lv * eval(r, gtot - gp, std::move(right));
            }
        }
        return acc;
    };
    const RSpinInsertion p00{0, 0};
    if (r == 2) return rat(1, 12) * single(g - 1, {p00, p00, p00, p00});
    if (r == 3) return rat(1, 6) * single(g - 1, {p00, p00, p00, {0, 1}});
    // r == 4
    Rational acc = rat(1, 4) * single(g - 1, {p00, p00, p00, {0, 2}});
    acc += rat(1, 48) * split2(g - 1, {p00, p00}, {p00, p00, p00, p00});
    acc += rat(1, 32) * split2(g - 1, {p00, p00, p00}, {p00, p00, p00});
    acc += rat(1, 480) * single(g - 2, {p00, p00, p00, p00, p00, p00});
    return acc;
}

// Genus >= 1 recursion for a correlator carrying a puncture insertion
// tau_{0,0}; `passengers` are the remaining insertions.
Rational puncture(long r, long g, const std::vector<RSpinInsertion>& passengers) {
    long s = static_cast<long>(passengers.size());
    long a = 0;
    for (const auto& [n, m] : passengers)
        if (n == 0) ++a;
    Rational main = 0;
    for (const auto& sp : multiset_splits(passengers)) {
        // Rule out one-point sides whose single insertion is primary.
        if (sp.left.size() == 1 && sp.left[0].first == 0) continue;
        if (sp.right.size() == 1 && sp.right[0].first == 0) continue;
        for (long mp = 0; mp <= r - 2; ++mp) {
            for (long gp = 0; gp <= g; ++gp) {
                std::vector<RSpinInsertion> right = sp.right;
                right.push_back({0, r - 2 - mp});
                right.push_back({0, 0});
                Rational rv = eval(r, g - gp, std::move(right));
                if (rv == 0) continue;
                std::vector<RSpinInsertion> left = sp.left;
                left.push_back({0, 0});
                left.push_back({0, mp});
                main += Rational(sp.count) * eval(r, gp, std::move(left)) * rv;
            }
        }
    }
    return (main / 2 + low_terms(r, g, passengers)) / Rational(2 * g - 1 + s - a);
}

Rational eval_impl(long r, long g, const std::vector<RSpinInsertion>& ins) {
    if (g == 0) return genus0(r, ins);
    // Look for a puncture insertion.
    for (size_t i = 0; i < ins.size(); ++i) {
        if (ins[i].first == 0 && ins[i].second == 0) {
            std::vector<RSpinInsertion> passengers;
            for (size_t j = 0; j < ins.size(); ++j)
                if (j != i) passengers.push_back(ins[j]);
            return puncture(r, g, passengers);
        }
    }
    // String-equation rewrite on a maximal descendent.
    long pick = 0;
    for (size_t i = 1; i < ins.size(); ++i)
        if (ins[i].first > ins[pick].first) pick = static_cast<long>(i);
    std::vector<RSpinInsertion> raised = ins;
    raised[pick].first += 1;
    std::vector<RSpinInsertion> with_puncture = raised;
    with_puncture.push_back({0, 0});
    Rational acc = eval(r, g, std::move(with_puncture));
    for (size_t j = 0; j < ins.size(); ++j) {
        if (static_cast<long>(j) == pick || ins[j].first == 0) continue;
        std::vector<RSpinInsertion> term = raised;
        term[j].first -= 1;
        acc -= eval(r, g, std::move(term));
    }
    return acc;
}

Rational eval(long r, long g, std::vector<RSpinInsertion> ins) {
    if (g < 0) return 0;
    long nsum = 0, msum = 0;
    for (const auto& [n, m] : ins) {
        if (n < 0 || m < 0 || m > r - 2) return 0; // includes the top label m = r-1
        nsum += n;
        msum += m;
    }
    if ((r + 1) * (2 * g - 2) + r * static_cast<long>(ins.size()) != r * nsum + msum) return 0;
    if (ins.empty()) return 0;
    if (g == 0 && ins.size() < 3) return 0;
    std::sort(ins.begin(), ins.end());
    std::tuple<long, long, std::vector<RSpinInsertion>> key{r, g, std::move(ins)};
    {
        std::shared_lock lock(g_rspin_mutex);
        auto it = g_rspin_cache.find(key);
        if (it != g_rspin_cache.end()) return it->second;
    }
    Rational value = eval_impl(r, g, std::get<2>(key));
    std::unique_lock lock(g_rspin_mutex);
    g_rspin_cache.emplace(std::move(key), value);
    return value;
}

} // namespace

bool rspin_selection(long r, long g, const std::vector<RSpinInsertion>& ins) {
    long nsum = 0, msum = 0;
    for (const auto& [n, m] : ins) {
        nsum += n;
        msum += m;
    }
    return (r + 1) * (2 * g - 2) + r * static_cast<long>(ins.size()) == r * nsum + msum;
}

Rational rspin_correlator(long r, long g, std::vector<RSpinInsertion> ins) {
    if (r < 2 || r > 4) throw std::invalid_argument("rspin_correlator: r must be 2, 3 or 4");
    return eval(r, g, std::move(ins));
}

Rational rspin_genus0(long r, std::vector<RSpinInsertion> ins) {
    if (r < 2 || r > 4) throw std::invalid_argument("rspin_genus0: r must be 2, 3 or 4");
    return eval(r, 0, std::move(ins));
}

} // namespace moduli
