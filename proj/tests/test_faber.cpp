#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <moduli/combinatorics.hpp>
#include <moduli/faber.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>

using namespace moduli;

namespace {

// Brute-force evaluation of the entry formula, directly summing over ordered
// decompositions into nonzero parts.
Rational entry_brute(long g, const MultiIndex& m) {
    Rational acc = 0;
    for (long r = 1; r <= m.length(); ++r) {
        Rational level = 0;
        for (const auto& parts : ordered_decompositions(m, r)) {
            Integer den = 1;
            for (const MultiIndex& p : parts) den *= double_factorial(2 * p.weight() + 1);
            level += Rational(multi_binomial(m, parts) * factorial(2 * g - 3 + r)) / Rational(den);
        }
        level /= Rational(factorial(r));
        acc += ((m.length() - r) % 2 != 0) ? -level : level;
    }
    return acc;
}

MultiIndex from_parts(std::initializer_list<long> parts) {
    MultiIndex m;
    for (long p : parts) m.set(p, m.at(p) + 1);
    return m;
}

std::map<long, std::vector<long>> load_rank_fixture() {
    std::ifstream in(std::string(MODULI_TEST_DATA_DIR) + "/faber_ranks.txt");
    REQUIRE(in.good());
    std::map<long, std::vector<long>> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        long g;
        char sep;
        ss >> g >> sep;
        std::vector<long> ranks;
        long r;
        while (ss >> r) {
            ranks.push_back(r);
            ss >> sep;
        }
        table[g] = ranks;
    }
    return table;
}

} // namespace

TEST_CASE("entry formula examples") {
    CHECK(faber_entry(4, MultiIndex::delta(1), MultiIndex::delta(1)) == 512);
    CHECK(faber_entry(3, MultiIndex(), MultiIndex::delta(1)) == 8);
    CHECK_THROWS_AS(faber_entry(4, MultiIndex::delta(1), MultiIndex::delta(2)),
                    std::invalid_argument);
    // Symmetry: the entry depends only on the combined index.
    CHECK(faber_entry(5, MultiIndex::delta(1), MultiIndex::delta(2)) ==
          faber_entry(5, MultiIndex::delta(2), MultiIndex::delta(1)));
    CHECK(faber_entry(5, MultiIndex(), MultiIndex::delta(3)) ==
          faber_entry(5, MultiIndex::delta(3), MultiIndex()));
}

TEST_CASE("entry formula agrees with ordered-decomposition brute force") {
    for (long w = 1; w <= 6; ++w) {
        long g = w + 2;
        for (const auto& part : partitions_of(w)) {
            MultiIndex m;
            for (long p : part) m.set(p, m.at(p) + 1);
            CAPTURE(g);
            CHECK(faber_entry(g, MultiIndex(), m) == entry_brute(g, m));
        }
    }
}

TEST_CASE("exact rank basics") {
    std::vector<std::vector<Rational>> id3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(exact_rank(id3) == 3);
    std::vector<std::vector<Rational>> zero{{0, 0}, {0, 0}};
    CHECK(exact_rank(zero) == 0);
    std::vector<std::vector<Rational>> frac{{rat(1, 2), rat(1, 3)}, {rat(3, 2), 1}};
    CHECK(exact_rank(frac) == 1); // second row is three times the first
    std::vector<std::vector<Rational>> rect{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}};
    CHECK(exact_rank(rect) == 2);
}

TEST_CASE("rank profiles match the known table") {
    auto table = load_rank_fixture();
    for (long g = 2; g <= 18; ++g) {
        RankProfile p = rank_profile(g);
        CAPTURE(g);
        REQUIRE(table.count(g) == 1);
        CHECK(p.ranks == table[g]);
        long sum = 0;
        for (long k = 0; k <= g - 2; ++k) {
            sum += p.ranks[k];
            CHECK(p.ranks[k] == p.ranks[g - 2 - k]); // transpose symmetry
        }
        CHECK(p.total == sum);
    }
}

TEST_CASE("proportionality constants in the top graded piece") {
    for (long g = 3; g <= 8; ++g)
        CHECK(faber_relation_coefficient(g, MultiIndex::delta(g - 2)) == 1);
    CHECK(faber_relation_coefficient(4, MultiIndex::delta(1, 2)) == rat(512, 48));
    CHECK_THROWS_AS(faber_relation_coefficient(4, MultiIndex::delta(1)), std::invalid_argument);
    CHECK(faber_relation_coefficient(2, MultiIndex()) == 1);
}

TEST_CASE("matrix assembly dimensions") {
    FaberMatrix M = faber_matrix(9, 3);
    CHECK(M.rows.size() == 3);  // partitions of 3
    CHECK(M.cols.size() == 5);  // partitions of 4
    FaberMatrix Mt = faber_matrix(9, 4);
    for (size_t i = 0; i < M.rows.size(); ++i)
        for (size_t j = 0; j < M.cols.size(); ++j)
            CHECK(M.entries[i][j] == Mt.entries[j][i]);
    CHECK_THROWS_AS(faber_matrix(4, 3), std::invalid_argument);
}
