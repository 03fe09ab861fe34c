#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <moduli/descendent.hpp>
#include <moduli/rspin.hpp>

#include <fstream>
#include <functional>
#include <sstream>
#include <string>

using namespace moduli;

namespace {

struct TableEntry {
    long g;
    std::vector<RSpinInsertion> ins;
    Rational value;
};

std::vector<TableEntry> load_table(const std::string& name) {
    std::ifstream in(std::string(MODULI_TEST_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::vector<TableEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string gpart, inspart, valpart;
        std::getline(ss, gpart, '|');
        std::getline(ss, inspart, '|');
        std::getline(ss, valpart, '|');
        TableEntry e;
        e.g = std::stol(gpart);
        std::istringstream insss(inspart);
        std::string tok;
        while (insss >> tok) {
            auto comma = tok.find(',');
            e.ins.push_back({std::stol(tok.substr(0, comma)), std::stol(tok.substr(comma + 1))});
        }
        e.value = Rational(valpart);
        e.value.canonicalize();
        out.push_back(std::move(e));
    }
    return out;
}

void sorted_tuples(long n, long total, long max_first, std::vector<long>& cur,
                   const std::function<void(const std::vector<long>&)>& emit) {
    if (n == 0) {
        if (total == 0) emit(cur);
        return;
    }
    for (long d = std::min(total, max_first); d >= 0; --d) {
        cur.push_back(d);
        sorted_tuples(n - 1, total - d, d, cur, emit);
        cur.pop_back();
    }
}

} // namespace

TEST_CASE("selection rule") {
    CHECK(rspin_selection(3, 3, {{6, 1}}));
    CHECK(rspin_selection(4, 1, {{1, 0}}));
    CHECK(!rspin_selection(3, 1, {{1, 1}}));
    CHECK(rspin_correlator(3, 1, {{1, 1}}) == 0);
    CHECK_THROWS_AS(rspin_correlator(5, 0, {{0, 0}, {0, 0}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("genus-0 primaries and recursion") {
    CHECK(rspin_genus0(2, {{0, 0}, {0, 0}, {0, 0}}) == 1);
    CHECK(rspin_genus0(3, {{0, 0}, {0, 0}, {0, 1}}) == 1);
    CHECK(rspin_genus0(3, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}) == rat(1, 3));
    CHECK(rspin_genus0(4, {{0, 0}, {0, 0}, {0, 2}}) == 1);
    CHECK(rspin_genus0(4, {{0, 0}, {0, 1}, {0, 1}}) == 1);
    CHECK(rspin_genus0(4, {{0, 1}, {0, 1}, {0, 2}, {0, 2}}) == rat(1, 4));
    CHECK(rspin_genus0(4, {{0, 2}, {0, 2}, {0, 2}, {0, 2}, {0, 2}}) == rat(1, 8));
    // Unstable and label-out-of-range configurations vanish.
    CHECK(rspin_genus0(3, {{0, 0}, {0, 2}}) == 0);
    CHECK(rspin_correlator(3, 1, {{1, 2}}) == 0);
}

TEST_CASE("square-root theory equals ordinary descendent integrals") {
    for (long g = 0; g <= 2; ++g) {
        for (long s = std::max(1L, 3 - 2 * g); 3 * g - 3 + s <= 8; ++s) {
            long dim = 3 * g - 3 + s;
            std::vector<long> cur;
            sorted_tuples(s, dim, dim, cur, [&](const std::vector<long>& d) {
                std::vector<RSpinInsertion> ins;
                for (long x : d) ins.push_back({x, 0});
                CAPTURE(g);
                CHECK(rspin_correlator(2, g, ins) == psi_correlator(g, d));
            });
        }
    }
}

TEST_CASE("permutation invariance") {
    CHECK(rspin_correlator(3, 2, {{0, 1}, {2, 0}, {3, 1}}) ==
          rspin_correlator(3, 2, {{3, 1}, {0, 1}, {2, 0}}));
    CHECK(rspin_correlator(4, 2, {{1, 1}, {2, 0}, {2, 1}}) ==
          rspin_correlator(4, 2, {{2, 1}, {1, 1}, {2, 0}}));
}

TEST_CASE("cubic-root table entries") {
    for (const TableEntry& e : load_table("rspin3_values.txt")) {
        if (e.g > 3) continue;
        CAPTURE(e.g);
        CHECK(rspin_correlator(3, e.g, e.ins) == e.value);
    }
}

TEST_CASE("quartic-root table entries") {
    for (const TableEntry& e : load_table("rspin4_values.txt")) {
        if (e.g > 3) continue;
        CAPTURE(e.g);
        CHECK(rspin_correlator(4, e.g, e.ins) == e.value);
    }
}
