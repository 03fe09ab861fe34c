#ifndef MODULI_COMBINATORICS_HPP
#define MODULI_COMBINATORICS_HPP

#include <moduli/rational.hpp>

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace moduli {

// ---------------------------------------------------------------------------
// Scalar combinatorics
// ---------------------------------------------------------------------------

Integer factorial(long n);                 // n >= 0
Integer double_factorial(long k);          // k >= -1, (-1)!! = 1; k < -1 rejected
Integer binomial(long n, long k);          // 0 for k < 0 or k > n
Integer multinomial(long n, const std::vector<long>& parts); // sum(parts) == n required

// Exact Bernoulli number B_{2k} (argument must be even and >= 2).
// Computed by the defining recurrence sum_{j=0}^{n} C(n+1,j) B_j = 0 and
// cached permanently per process (concurrent reads, serialized inserts).
Rational bernoulli(long two_k);

// Number of partitions of n via Euler's pentagonal recurrence (cached).
Integer partition_count(long n);

// All partitions of n as weakly decreasing part lists.
std::vector<std::vector<long>> partitions_of(long n);

// ---------------------------------------------------------------------------
// MultiIndex: finitely supported exponent vector over indices i >= 1,
// modeling kappa-monomials kappa_1^{b_1} kappa_2^{b_2} ...
// weight |b| = sum i*b_i, length ||b|| = sum b_i.
// ---------------------------------------------------------------------------
class MultiIndex {
public:
    MultiIndex() = default;
    static MultiIndex delta(long i, long mult = 1);

    long weight() const;
    long length() const;
    bool is_zero() const { return entries_.empty(); }
    long at(long i) const;
    void set(long i, long mult); // mult == 0 erases the entry

    const std::map<long, long>& entries() const { return entries_; }

    MultiIndex operator+(const MultiIndex& o) const;
    // Componentwise subtraction; requires o <= *this componentwise.
    MultiIndex operator-(const MultiIndex& o) const;
    bool contains(const MultiIndex& o) const; // o <= *this componentwise
    bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
    bool operator<(const MultiIndex& o) const { return entries_ < o.entries_; }

    // prod_i (b_i)!
    Integer index_factorial() const;

    // All L with L <= *this componentwise (including 0 and *this).
    std::vector<MultiIndex> sub_indices() const;

    std::string str() const; // canonical "i:mult,i:mult" form, "0" when zero

private:
    std::map<long, long> entries_; // index -> multiplicity, all values > 0
};

// binom(m; a_1,...,a_r) = prod_i binom(m_i; a_1(i),...,a_r(i)).
// Parts must sum to m componentwise (rejected otherwise).
Integer multi_binomial(const MultiIndex& m, const std::vector<MultiIndex>& parts);

// Two-block special case binom(m; L, m-L); requires L <= m.
Integer multi_binomial2(const MultiIndex& m, const MultiIndex& L);

// All ordered r-tuples of NONZERO multi-indices summing to m.
// Empty list when r > ||m|| (and for m = 0 with r >= 1).
std::vector<std::vector<MultiIndex>> ordered_decompositions(const MultiIndex& m, long r);

// ---------------------------------------------------------------------------
// Multiset splits: ordered two-block splits (I, J) of a sorted multiset,
// one representative per distinct sub-multiset, with the number of labelled
// subsets realizing it. Used by every boundary-splitting recursion.
// ---------------------------------------------------------------------------
template <typename T>
struct MultisetSplit {
    std::vector<T> left;
    std::vector<T> right;
    Integer count; // number of labelled index subsets giving this split
};

template <typename T>
std::vector<MultisetSplit<T>> multiset_splits(std::vector<T> sorted) {
    // Group equal elements, then choose how many of each go left.
    std::vector<std::pair<T, long>> groups;
    for (const T& v : sorted) {
        if (!groups.empty() && groups.back().first == v) {
            ++groups.back().second;
        } else {
            groups.push_back({v, 1});
        }
    }
    std::vector<MultisetSplit<T>> out;
    std::vector<long> take(groups.size(), 0);
    while (true) {
        MultisetSplit<T> sp;
        sp.count = 1;
        for (size_t i = 0; i < groups.size(); ++i) {
            for (long t = 0; t < take[i]; ++t) sp.left.push_back(groups[i].first);
            for (long t = take[i]; t < groups[i].second; ++t) sp.right.push_back(groups[i].first);
            sp.count *= binomial(groups[i].second, take[i]);
        }
        out.push_back(std::move(sp));
        size_t pos = 0;
        while (pos < groups.size() && take[pos] == groups[pos].second) {
            take[pos] = 0;
            ++pos;
        }
        if (pos == groups.size()) break;
        ++take[pos];
    }
    return out;
}

} // namespace moduli

#endif // MODULI_COMBINATORICS_HPP
