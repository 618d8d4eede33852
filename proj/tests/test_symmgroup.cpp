#include "doctest.h"

#include <map>
#include <set>

#include "chanmom/symmgroup.hpp"
#include "support.hpp"

using namespace chanmom;
using testsupport::all_permutations;
using testsupport::bfs_transposition_distance;

namespace {

// Distance tables over S_t from BFS, keyed by image vectors.
struct BfsOracle {
    std::vector<Permutation> perms;
    std::map<Permutation, int> from_e;

    explicit BfsOracle(int t) : perms(all_permutations(t)) {
        for (const auto& p : perms) from_e[p] = bfs_transposition_distance(p);
    }
    int dist(const Permutation& a, const Permutation& b) const { return from_e.at(compose(a.inverse(), b)); }
    // pi lies on a geodesic from e to sigma
    bool below(const Permutation& pi, const Permutation& sigma) const {
        return from_e.at(pi) + dist(pi, sigma) == from_e.at(sigma);
    }
};

long long poset_mobius(const BfsOracle& o, const Permutation& lo, const Permutation& hi, std::map<std::pair<Permutation, Permutation>, long long>& memo) {
    if (lo == hi) return 1;
    auto key = std::make_pair(lo, hi);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    long long acc = 0;
    for (const auto& xi : o.perms)
        if (xi != hi && o.below(lo, xi) && o.below(xi, hi)) acc += poset_mobius(o, lo, xi, memo);
    memo[key] = -acc;
    return -acc;
}

}  // namespace

TEST_CASE("permutation basics") {
    const auto s = Permutation::from_cycles(4, {{0, 2, 1}});
    CHECK(s[0] == 2);
    CHECK(s[2] == 1);
    CHECK(s[1] == 0);
    CHECK(s.to_string() == "(0 2 1)");
    CHECK(Permutation::identity(3).to_string() == "e");
    CHECK(size(s) == 2);
    CHECK(support(s) == std::vector<int>{0, 1, 2});
    CHECK(compose(s, s.inverse()).is_identity());
    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(compose(s, Permutation::identity(3)), OrderMismatch);
    // (a b)[i] = a[b[i]]
    CHECK(compose(Permutation::transposition(3, 0, 1), Permutation::transposition(3, 0, 2)) == Permutation::from_cycles(3, {{0, 2, 1}}));
}

TEST_CASE("size equals BFS transposition distance") {
    for (int t = 1; t <= 5; ++t)
        for (const auto& p : all_permutations(t)) CHECK(size(p) == bfs_transposition_distance(p));
}

TEST_CASE("mobius examples") {
    CHECK(mobius(Permutation::identity(3)) == 1);
    CHECK(mobius(Permutation::transposition(3, 0, 2)) == -1);
    const auto c3 = Permutation::from_cycles(3, {{0, 1, 2}});
    CHECK(mobius(c3) == 2);
    long long total = 0;
    for (const auto& p : enumerate_subpermutations(c3)) total += mobius(p);
    CHECK(total == 0);
    CHECK(enumerate_subpermutations(c3).size() == 5);
}

TEST_CASE("character values") {
    CHECK(character(Permutation::identity(2), 5) == 1);
    CHECK(character(Permutation::transposition(2, 0, 1), 2) == Rational(1, 2));
    CHECK(character(Permutation::from_cycles(3, {{0, 1, 2}}), 3) == Rational(1, 9));
    const auto a = Permutation::transposition(3, 0, 1);
    const auto b = Permutation::transposition(3, 1, 2);
    CHECK(character(a, b, 4) == Rational(1, 16));
    CHECK(character(a, a, 4) == 1);
}

TEST_CASE("sub-permutation relation matches geodesic definition") {
    for (int t = 1; t <= 4; ++t) {
        BfsOracle o(t);
        for (const auto& s : o.perms) {
            std::set<Permutation> listed;
            for (const auto& p : enumerate_subpermutations(s)) listed.insert(p);
            for (const auto& p : o.perms) {
                const bool expect = o.below(p, s);
                CHECK(is_subpermutation(p, s) == expect);
                CHECK(static_cast<bool>(listed.count(p)) == expect);
            }
        }
    }
}

TEST_CASE("mobius matches recursive poset mobius") {
    for (int t = 1; t <= 4; ++t) {
        BfsOracle o(t);
        std::map<std::pair<Permutation, Permutation>, long long> memo;
        const auto e = Permutation::identity(t);
        for (const auto& s : o.perms) {
            CHECK(mobius(s) == poset_mobius(o, e, s, memo));
            for (const auto& p : enumerate_subpermutations(s)) CHECK(mobius(compose(p.inverse(), s)) == poset_mobius(o, p, s, memo));
        }
    }
}

TEST_CASE("property: triangle inequality for size") {
    auto& g = testsupport::rng();
    for (int rep = 0; rep < 400; ++rep) {
        const int t = 2 + static_cast<int>(g() % 6);
        const auto s = testsupport::random_permutation(t);
        const auto p = testsupport::random_permutation(t);
        const int d = size(compose(p.inverse(), s));
        CHECK(std::abs(size(s) - size(p)) <= d);
        CHECK(d <= size(s) + size(p));
    }
}

TEST_CASE("property: sub-permutation order is reflexive, antisymmetric and transitive") {
    auto& g = testsupport::rng();
    for (int rep = 0; rep < 300; ++rep) {
        const int t = 2 + static_cast<int>(g() % 5);
        const auto s = testsupport::random_permutation(t);
        CHECK(is_subpermutation(s, s));
        const auto below = enumerate_subpermutations(s);
        const auto& xi = below[g() % below.size()];
        const auto below_xi = enumerate_subpermutations(xi);
        const auto& pi = below_xi[g() % below_xi.size()];
        CHECK(is_subpermutation(pi, s));
        if (is_subpermutation(s, xi)) CHECK(s == xi);
    }
}

TEST_CASE("mobius sums to delta over every lower set, t <= 6") {
    for (int t = 1; t <= 6; ++t) {
        const auto& tab = perm_table(t);
        for (std::size_t s = 0; s < tab.count(); ++s) {
            long long acc = 0;
            for (std::size_t p : tab.below(s)) acc += mobius(tab.at(p));
            CHECK(acc == (s == tab.identity_index() ? 1 : 0));
        }
    }
}

TEST_CASE("sub-permutation counts follow the Catalan product, t <= 6") {
    for (int t = 1; t <= 6; ++t) {
        const auto& tab = perm_table(t);
        for (std::size_t s = 0; s < tab.count(); ++s) {
            long long expect = 1;
            for (const auto& c : tab.at(s).cycles()) expect *= catalan(static_cast<int>(c.size()));
            CHECK(static_cast<long long>(enumerate_subpermutations(tab.at(s)).size()) == expect);
            CHECK(static_cast<long long>(tab.below(s).size()) == expect);
            CHECK(subpermutation_count(tab.at(s)) == expect);
        }
    }
    // largest lattice in S_6 hangs under a 6-cycle
    CHECK(enumerate_subpermutations(Permutation::from_cycles(6, {{0, 1, 2, 3, 4, 5}})).size() == 132);
    CHECK(enumerate_subpermutations(Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})).size() == 42);
}

TEST_CASE("factorization over disjoint cycles") {
    const auto a = Permutation::from_cycles(6, {{0, 2, 1}});
    const auto b = Permutation::from_cycles(6, {{3, 5, 4}});
    const auto ab = compose(a, b);
    CHECK(mobius(ab) == mobius(a) * mobius(b));
    CHECK(subpermutation_count(ab) == subpermutation_count(a) * subpermutation_count(b));
    CHECK(mobius(Permutation::from_cycles(4, {{0, 1, 2, 3}})) == -5);
}

TEST_CASE("small sequences") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(4) == 14);
    CHECK(derangements(0) == 1);
    CHECK(derangements(4) == 9);
    CHECK(noncrossing_partitions(4).size() == 14);
}

TEST_CASE("canonical order groups by support") {
    const auto& tab = perm_table(4);
    CHECK(tab.count() == 24);
    CHECK(tab.at(0).is_identity());
    for (std::size_t i = 1; i < tab.count(); ++i) {
        const auto a = tab.support_of(i - 1);
        const auto b = tab.support_of(i);
        const int pa = std::popcount(a);
        const int pb = std::popcount(b);
        CHECK((pa < pb || (pa == pb && a <= b)));
    }
    for (std::size_t i = 0; i < tab.count(); ++i) {
        CHECK(tab.index_of(tab.at(i)) == i);
        CHECK(tab.at(tab.product(i, tab.inverse(i))).is_identity());
    }
}

TEST_CASE("order cap") {
    CHECK(max_order() >= 6);
    CHECK_NOTHROW(check_order(6));
    CHECK_THROWS(check_order(max_order() + 1));
}
