#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gknot/expr.hpp"
#include "gknot/oracle.hpp"

using namespace gknot;

namespace {

KnotExpr trefoil() { return cable(2, 3, unknot()); }
KnotExpr t25() { return cable(2, 5, unknot()); }

// Applies single rewrite steps at seeded-random redexes until none remain.
KnotExpr shuffled_rewrite(KnotExpr e, std::uint64_t seed) {
    SplitMix64 rng(seed);
    while (true) {
        std::vector<Redex> rs = find_redexes(e);
        if (rs.empty()) return e;
        e = apply_redex(e, rs[rng.below(rs.size())]);
    }
}

} // namespace

TEST_CASE("parse round trips the grammar") {
    CHECK(parse_expr("U") == unknot());
    CHECK(parse_expr("cable(2,3,U)") == trefoil());
    CHECK(parse_expr(" cable( 2 , 3 , U ) ") == trefoil());
    KnotExpr s = parse_expr("sum(cable(2,3,U),cable(2,5,U))");
    CHECK(s.kind == KnotExpr::Kind::Sum);
    CHECK(serialize(s) == "sum(cable(2,3,U),cable(2,5,U))");
    CHECK(parse_expr(serialize(s)) == s);
}

TEST_CASE("parse rejects bad input") {
    CHECK_THROWS_AS(parse_expr("cable(2,4,U)"), MalformedExpression);  // gcd 2
    CHECK_THROWS_AS(parse_expr("cable(0,0,U)"), MalformedExpression);
    CHECK_THROWS_AS(parse_expr("sum(U)"), ParseError);   // needs two summands
    CHECK_THROWS_AS(parse_expr("cable(2,3)"), ParseError);
    CHECK_THROWS_AS(parse_expr("knot"), ParseError);
    CHECK_THROWS_AS(parse_expr("U extra"), ParseError);
    try {
        parse_expr("cable(2,,U)");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column > 1);
    }
}

TEST_CASE("normalize applies the isotopy rules") {
    // (1,r)-cable of K is K
    CHECK(normalize(parse_expr("cable(1,5,U)")) == unknot());
    CHECK(normalize(cable(1, 7, trefoil())) == trefoil());
    // unknot is the identity of connected sum
    CHECK(normalize(sum({unknot(), trefoil()})) == trefoil());
    // orientation reversal of both coefficients
    CHECK(normalize(cable(-2, -3, unknot())) == trefoil());
    // meridian cable is trivial
    CHECK(normalize(cable(0, 1, trefoil())) == unknot());
    CHECK(normalize(cable(0, -1, trefoil())) == unknot());
    // trivial torus knots
    CHECK(normalize(cable(2, 1, unknot())) == unknot());
    CHECK(normalize(cable(2, -1, unknot())) == unknot());
    CHECK(normalize(cable(5, 1, unknot())) == unknot());
    // longitude of an arbitrary knot collapses
    CHECK(normalize(cable(1, 0, trefoil())) == trefoil());
    // nested sums flatten and sort
    KnotExpr n = normalize(sum({sum({t25(), trefoil()}), trefoil()}));
    CHECK(n.kind == KnotExpr::Kind::Sum);
    CHECK(n.kids.size() == 3);
    CHECK(std::is_sorted(n.kids.begin(), n.kids.end()));
    CHECK(serialize(n) == "sum(cable(2,3,U),cable(2,3,U),cable(2,5,U))");
}

TEST_CASE("normalize is idempotent on random expressions") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        KnotExpr e = random_expr(seed, 1 + static_cast<int>(seed % 4), 7);
        KnotExpr n = normalize(e);
        CHECK(normalize(n) == n);
    }
}

TEST_CASE("rewrite rules are confluent under shuffled application") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        KnotExpr e = random_expr(seed, 1 + static_cast<int>(seed % 4), 7);
        KnotExpr a = shuffled_rewrite(e, seed * 2 + 1);
        KnotExpr b = shuffled_rewrite(e, seed * 7 + 3);
        CHECK(a == b);
        CHECK(a == normalize(e));
    }
}

TEST_CASE("equal_normalized respects the multiset laws") {
    KnotExpr a = sum({trefoil(), t25()});
    KnotExpr b = sum({t25(), trefoil()});
    CHECK(equal_normalized(a, b));
    CHECK(equal_normalized(cable(1, 7, trefoil()), trefoil()));
    CHECK(equal_normalized(cable(-2, -3, unknot()), cable(2, 3, unknot())));
    CHECK_FALSE(equal_normalized(cable(2, 3, unknot()), cable(2, 5, unknot())));
    // mirrors stay distinct
    CHECK_FALSE(equal_normalized(cable(2, 3, unknot()), cable(2, -3, unknot())));
}

TEST_CASE("is_unknot") {
    CHECK(is_unknot(unknot()));
    CHECK(is_unknot(parse_expr("cable(0,1,cable(2,3,U))")));
    CHECK_FALSE(is_unknot(trefoil()));
}

TEST_CASE("level of the hierarchy") {
    CHECK(level(unknot()) == 0);
    CHECK(level(trefoil()) == 1);
    CHECK(level(sum({trefoil(), t25()})) == 2);
    CHECK(level(cable(2, 3, trefoil())) == 2);
    CHECK(level(cable(2, 3, sum({trefoil(), t25()}))) == 2);
    CHECK(level(cable(3, 2, cable(2, 3, sum({trefoil(), t25()})))) == 3);
}

TEST_CASE("level is monotone under cabling") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        KnotExpr e = random_expr(seed, static_cast<int>(seed % 4), 5);
        int base = level(e);
        int p = 2 + static_cast<int>(seed % 3);
        int q = 1 + static_cast<int>((seed / 3) % 4);
        if (std::gcd(p, q) != 1) continue;
        CHECK(level(cable(p, q, e)) >= base);
    }
}

TEST_CASE("kit of the torus knot sum example") {
    GraphKit kit = kit_of(sum({trefoil(), t25()}));
    REQUIRE(kit.elements.size() == 4);
    int trefoils = 0, t25s = 0, unknots = 0;
    for (const auto& [label, e] : kit.elements) {
        if (e == trefoil()) ++trefoils;
        else if (e == t25()) ++t25s;
        else if (e == unknot()) ++unknots;
    }
    CHECK(trefoils == 1);
    CHECK(t25s == 1);
    CHECK(unknots == 2);
    CHECK(kit.gamma.size() == 2);  // the two torus knots each unroll to one unknot
    CHECK(kit_top_labels(kit).size() == 2);
}

TEST_CASE("kit of the unknot is empty, of a torus knot a single unknot") {
    CHECK(kit_of(unknot()).elements.empty());
    GraphKit kit = kit_of(trefoil());
    REQUIRE(kit.elements.size() == 1);
    CHECK(kit.elements.begin()->second == unknot());
    CHECK(kit.gamma.empty());
}

TEST_CASE("kits are well founded and reconstruct their elements") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        KnotExpr e = random_expr(seed, 1 + static_cast<int>(seed % 4), 5);
        GraphKit kit = kit_of(e);
        // acyclic: every gamma child label is strictly later in a DFS; check
        // by walking with a visited set
        for (const auto& [label, kids] : kit.gamma) {
            std::vector<std::string> stack = {label};
            std::vector<std::string> seen;
            while (!stack.empty()) {
                std::string cur = stack.back();
                stack.pop_back();
                REQUIRE(std::find(seen.begin(), seen.end(), cur) == seen.end());
                seen.push_back(cur);
                auto it = kit.gamma.find(cur);
                if (it != kit.gamma.end())
                    for (const auto& k : it->second) stack.push_back(k);
            }
        }
        // reconstruction: a nontrivial element is a cable over the sum of
        // its gamma children
        for (const auto& [label, kids] : kit.gamma) {
            const KnotExpr& elem = kit.elements.at(label);
            REQUIRE(elem.kind == KnotExpr::Kind::Cable);
            std::vector<KnotExpr> parts;
            for (const auto& k : kids) parts.push_back(kit.elements.at(k));
            KnotExpr companion = parts.size() == 1 ? parts[0] : normalize(sum(parts));
            CHECK(equal_normalized(elem.kids[0], companion));
        }
    }
}

TEST_CASE("structure checks reject programmatic misuse") {
    KnotExpr bad = cable(2, 4, unknot());
    CHECK_THROWS_AS(normalize(bad), MalformedExpression);
    KnotExpr single = sum({trefoil()});
    (void)single;
    CHECK_THROWS_AS(check_structure(sum({trefoil()})), MalformedExpression);
}

TEST_CASE("serialization of canonical forms parses back to itself") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        KnotExpr n = normalize(random_expr(seed, 1 + static_cast<int>(seed % 4), 7));
        CHECK(parse_expr(serialize(n)) == n);
    }
}
