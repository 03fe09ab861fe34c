#include <moduli/faber.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace moduli {

namespace {

std::shared_mutex g_entry_mutex;
std::map<std::pair<long, MultiIndex>, Rational> g_entry_cache;

// Sum over unordered decompositions of m into nonzero multi-indices.  An
// ordered decomposition into r parts with part multiplicities c_j appears
// r!/prod(c_j!) times, which cancels the 1/r! of the closed formula, so each
// unordered decomposition contributes
//   binom(m; parts) / prod(c_j!) * (-1)^{||m||-r} (2g-3+r)! / prod(2|p|+1)!!.
void decompose(long g, const MultiIndex& m, const MultiIndex& remaining,
               const MultiIndex& max_part, std::vector<MultiIndex>& parts, Rational& acc) {
    if (remaining.is_zero()) {
        long r = static_cast<long>(parts.size());
        Integer mult = 1; // prod c_j! over runs of equal parts
        long run = 1;
        for (size_t i = 1; i <= parts.size(); ++i) {
            if (i < parts.size() && parts[i] == parts[i - 1]) {
                ++run;
            } else {
                mult *= factorial(run);
                run = 1;
            }
        }
        Integer den = mult;
        for (const MultiIndex& p : parts) den *= double_factorial(2 * p.weight() + 1);
        Rational term = Rational(multi_binomial(m, parts) * factorial(2 * g - 3 + r)) / Rational(den);
        acc += ((m.length() - r) % 2 != 0) ? -term : term;
        return;
    }
    for (const MultiIndex& p : remaining.sub_indices()) {
        if (p.is_zero()) continue;
        // Keep parts weakly decreasing in an (arbitrary) fixed total order so
        // every unordered decomposition is produced exactly once.
        if (!parts.empty() && max_part < p) continue;
        parts.push_back(p);
        decompose(g, m, remaining - p, p, parts, acc);
        parts.pop_back();
    }
}

Rational entry_sum(long g, const MultiIndex& m) {
    if (m.is_zero()) return Rational(double_factorial(2 * g - 2));
    {
        std::shared_lock lock(g_entry_mutex);
        auto it = g_entry_cache.find({g, m});
        if (it != g_entry_cache.end()) return it->second;
    }
    Rational acc = 0;
    std::vector<MultiIndex> parts;
    decompose(g, m, m, m, parts, acc);
    std::unique_lock lock(g_entry_mutex);
    g_entry_cache.emplace(std::make_pair(g, m), acc);
    return acc;
}

std::vector<MultiIndex> partition_indices(long w) {
    std::vector<MultiIndex> out;
    for (const auto& part : partitions_of(w)) {
        MultiIndex m;
        for (long p : part) m.set(p, m.at(p) + 1);
        out.push_back(m);
    }
    return out;
}

} // namespace

Rational faber_entry(long g, const MultiIndex& L, const MultiIndex& Lp) {
    if (L.weight() + Lp.weight() != g - 2)
        throw std::invalid_argument("faber_entry: |L| + |L'| must equal g - 2");
    return entry_sum(g, L + Lp);
}

FaberMatrix faber_matrix(long g, long k) {
    if (g < 2 || k < 0 || k > g - 2) throw std::invalid_argument("faber_matrix: need 0 <= k <= g-2");
    FaberMatrix M;
    M.g = g;
    M.k = k;
    M.rows = partition_indices(k);
    M.cols = partition_indices(g - 2 - k);
    M.entries.resize(M.rows.size());
    for (size_t i = 0; i < M.rows.size(); ++i) {
        M.entries[i].resize(M.cols.size());
        for (size_t j = 0; j < M.cols.size(); ++j)
            M.entries[i][j] = entry_sum(g, M.rows[i] + M.cols[j]);
    }
    return M;
}

long exact_rank(const std::vector<std::vector<Rational>>& M) {
    if (M.empty() || M[0].empty()) return 0;
    size_t nr = M.size(), nc = M[0].size();
    // Clear denominators row-wise to work with integers.
    std::vector<std::vector<Integer>> A(nr, std::vector<Integer>(nc));
    for (size_t i = 0; i < nr; ++i) {
        Integer lcm = 1;
        for (size_t j = 0; j < nc; ++j) {
            Integer den = M[i][j].get_den();
            Integer gcd;
            mpz_gcd(gcd.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
            lcm = lcm / gcd * den;
        }
        for (size_t j = 0; j < nc; ++j) {
            Rational v = M[i][j] * Rational(lcm);
            A[i][j] = v.get_num();
        }
    }
    // Bareiss fraction-free elimination with full pivot search.
    Integer prev = 1;
    size_t row = 0;
    long rank = 0;
    for (size_t col = 0; col < nc && row < nr; ++col) {
        size_t pr = row, pc = col;
        bool found = false;
        for (size_t j = col; j < nc && !found; ++j)
            for (size_t i = row; i < nr; ++i)
                if (A[i][j] != 0) {
                    pr = i;
                    pc = j;
                    found = true;
                    break;
                }
        if (!found) break;
        std::swap(A[row], A[pr]);
        if (pc != col)
            for (size_t i = 0; i < nr; ++i) std::swap(A[i][col], A[i][pc]);
        for (size_t i = row + 1; i < nr; ++i) {
            for (size_t j = col + 1; j < nc; ++j)
                A[i][j] = (A[row][col] * A[i][j] - A[i][col] * A[row][j]) / prev;
            A[i][col] = 0;
        }
        prev = A[row][col];
        ++row;
        ++rank;
    }
    return rank;
}

RankProfile rank_profile(long g) {
    if (g < 2) throw std::invalid_argument("rank_profile: need g >= 2");
    RankProfile p;
    p.g = g;
    for (long k = 0; k <= g - 2; ++k) {
        FaberMatrix M = faber_matrix(g, k);
        long r = exact_rank(M.entries);
        p.ranks.push_back(r);
        p.total += r;
    }
    return p;
}

Rational faber_relation_coefficient(long g, const MultiIndex& m) {
    if (m.weight() != g - 2)
        throw std::invalid_argument("faber_relation_coefficient: need |m| = g - 2");
    return entry_sum(g, m) / Rational(double_factorial(2 * g - 2));
}

} // namespace moduli
