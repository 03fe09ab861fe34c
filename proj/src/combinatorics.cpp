#include <moduli/combinatorics.hpp>

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace moduli {

Integer factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer double_factorial(long k) {
    if (k < -1) throw std::invalid_argument("double_factorial: argument below -1");
    if (k <= 0) return 1; // (-1)!! = 0!! = 1
    Integer r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

Integer binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer multinomial(long n, const std::vector<long>& parts) {
    long sum = 0;
    for (long p : parts) {
        if (p < 0) return 0;
        sum += p;
    }
    if (sum != n) throw std::invalid_argument("multinomial: parts do not sum to n");
    Integer r = factorial(n);
    for (long p : parts) r /= factorial(p);
    return r;
}

namespace {
std::shared_mutex g_bernoulli_mutex;
// B_0, B_1, B_2, ... with B_1 = -1/2 (internal to the recurrence).
std::vector<Rational> g_bernoulli{Rational(1), rat(-1, 2)};
} // namespace

Rational bernoulli(long two_k) {
    if (two_k < 2 || two_k % 2 != 0)
        throw std::invalid_argument("bernoulli: argument must be even and >= 2");
    {
        std::shared_lock lock(g_bernoulli_mutex);
        if (static_cast<size_t>(two_k) < g_bernoulli.size()) return g_bernoulli[two_k];
    }
    std::unique_lock lock(g_bernoulli_mutex);
    // sum_{j=0}^{n} C(n+1, j) B_j = 0  =>  B_n = -(1/(n+1)) sum_{j<n} C(n+1,j) B_j
    while (g_bernoulli.size() <= static_cast<size_t>(two_k)) {
        long n = static_cast<long>(g_bernoulli.size());
        Rational acc = 0;
        for (long j = 0; j < n; ++j) acc += Rational(binomial(n + 1, j)) * g_bernoulli[j];
        g_bernoulli.push_back(-acc / Rational(n + 1));
    }
    return g_bernoulli[two_k];
}

Integer partition_count(long n) {
    if (n < 0) throw std::invalid_argument("partition_count: negative argument");
    static std::shared_mutex mutex;
    static std::vector<Integer> table{Integer(1)}; // p(0) = 1
    {
        std::shared_lock lock(mutex);
        if (static_cast<size_t>(n) < table.size()) return table[n];
    }
    std::unique_lock lock(mutex);
    // Euler's pentagonal number recurrence.
    while (table.size() <= static_cast<size_t>(n)) {
        long m = static_cast<long>(table.size());
        Integer acc = 0;
        for (long k = 1;; ++k) {
            long p1 = k * (3 * k - 1) / 2;
            long p2 = k * (3 * k + 1) / 2;
            if (p1 > m && p2 > m) break;
            Integer sign = (k % 2 == 1) ? 1 : -1;
            if (p1 <= m) acc += sign * table[m - p1];
            if (p2 <= m) acc += sign * table[m - p2];
        }
        table.push_back(acc);
    }
    return table[n];
}

namespace {
void partitions_rec(long n, long max_part, std::vector<long>& cur,
                    std::vector<std::vector<long>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (long p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<std::vector<long>> partitions_of(long n) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative argument");
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    partitions_rec(n, n == 0 ? 1 : n, cur, out);
    return out;
}

// ---------------------------------------------------------------------------
// MultiIndex
// ---------------------------------------------------------------------------

MultiIndex MultiIndex::delta(long i, long mult) {
    if (i < 1) throw std::invalid_argument("MultiIndex: index must be >= 1");
    MultiIndex m;
    m.set(i, mult);
    return m;
}

long MultiIndex::weight() const {
    long w = 0;
    for (auto& [i, c] : entries_) w += i * c;
    return w;
}

long MultiIndex::length() const {
    long l = 0;
    for (auto& [i, c] : entries_) l += c;
    return l;
}

long MultiIndex::at(long i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? 0 : it->second;
}

void MultiIndex::set(long i, long mult) {
    if (mult < 0) throw std::invalid_argument("MultiIndex: negative multiplicity");
    if (mult == 0) {
        entries_.erase(i);
    } else {
        entries_[i] = mult;
    }
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    MultiIndex r = *this;
    for (auto& [i, c] : o.entries_) r.set(i, r.at(i) + c);
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
    MultiIndex r = *this;
    for (auto& [i, c] : o.entries_) {
        long have = r.at(i);
        if (have < c) throw std::invalid_argument("MultiIndex: subtraction underflow");
        r.set(i, have - c);
    }
    return r;
}

bool MultiIndex::contains(const MultiIndex& o) const {
    for (auto& [i, c] : o.entries_)
        if (at(i) < c) return false;
    return true;
}

Integer MultiIndex::index_factorial() const {
    Integer r = 1;
    for (auto& [i, c] : entries_) r *= factorial(c);
    return r;
}

std::vector<MultiIndex> MultiIndex::sub_indices() const {
    std::vector<MultiIndex> out{MultiIndex()};
    for (auto& [i, c] : entries_) {
        std::vector<MultiIndex> next;
        next.reserve(out.size() * (c + 1));
        for (const MultiIndex& base : out) {
            for (long t = 0; t <= c; ++t) {
                MultiIndex m = base;
                m.set(i, t);
                next.push_back(std::move(m));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::string MultiIndex::str() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [i, c] : entries_) {
        if (!first) os << ",";
        os << i << ":" << c;
        first = false;
    }
    return os.str();
}

Integer multi_binomial(const MultiIndex& m, const std::vector<MultiIndex>& parts) {
    MultiIndex sum;
    for (const auto& p : parts) sum = sum + p;
    if (!(sum == m)) throw std::invalid_argument("multi_binomial: parts do not sum to m");
    Integer r = 1;
    for (auto& [i, c] : m.entries()) {
        std::vector<long> blocks;
        blocks.reserve(parts.size());
        for (const auto& p : parts) blocks.push_back(p.at(i));
        r *= multinomial(c, blocks);
    }
    return r;
}

Integer multi_binomial2(const MultiIndex& m, const MultiIndex& L) {
    if (!m.contains(L)) throw std::invalid_argument("multi_binomial2: L not contained in m");
    Integer r = 1;
    for (auto& [i, c] : L.entries()) r *= binomial(m.at(i), c);
    return r;
}

namespace {
void ordered_decomp_rec(const MultiIndex& remaining, long r, std::vector<MultiIndex>& cur,
                        std::vector<std::vector<MultiIndex>>& out) {
    if (r == 0) {
        if (remaining.is_zero()) out.push_back(cur);
        return;
    }
    if (remaining.length() < r) return; // cannot fill r nonzero blocks
    for (const MultiIndex& part : remaining.sub_indices()) {
        if (part.is_zero()) continue;
        cur.push_back(part);
        ordered_decomp_rec(remaining - part, r - 1, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<std::vector<MultiIndex>> ordered_decompositions(const MultiIndex& m, long r) {
    std::vector<std::vector<MultiIndex>> out;
    if (r < 1) return out;
    std::vector<MultiIndex> cur;
    ordered_decomp_rec(m, r, cur, out);
    return out;
}

} // namespace moduli
