// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "gknot/errors.hpp"
#include "gknot/invariants.hpp"
#include "gknot/oracle.hpp"
#include "gknot/rhd.hpp"

using namespace gknot;

namespace {

struct Outcome {
    bool ok;
    std::string note;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Schoolbook product over exponent maps, independent of LaurentPoly::operator*.
LaurentPoly expand_product(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly::zero();
    std::map<int, std::int64_t> acc;
    for (int i = a.lowest_exponent(); i <= a.highest_exponent(); ++i)
        for (int j = b.lowest_exponent(); j <= b.highest_exponent(); ++j)
            acc[i + j] += a.coeff(i) * b.coeff(j);
    LaurentPoly out;
    for (const auto& [e, c] : acc) out = out + LaurentPoly::monomial(c, e);
    return out.canonical();
}

KnotExpr shuffled_rewrite(KnotExpr e, std::uint64_t seed) {
    SplitMix64 rng(seed);
    while (true) {
        std::vector<Redex> rs = find_redexes(e);
        if (rs.empty()) return e;
        e = apply_redex(e, rs[rng.below(rs.size())]);
    }
}

// 1. No-saddle decompositions: the only valid shape is one source capped by
// one sink; its cores are unknots forming a Hopf link.
Outcome criterion1() {
    EnumerationBudget b;
    b.max_saddles = 0;
    b.coeff_bound = 3;
    b.max_depth = 4;
    std::vector<std::string> valid;
    enumerate_rhds(b, [&](const RHD& r) {
        if (validate(r).empty()) valid.push_back(serialize_rhd(r));
        return true;
    });
    if (valid.size() != 1 || valid[0] != "source s1 split\nsink z1 s1\n")
        return {false, "valid no-saddle shapes: " + std::to_string(valid.size())};

    BuiltRHD u = build_unknot();
    ExtractionResult res = extract(u.rhd, u.root);
    std::string sink_id;
    for (const auto& ev : u.rhd.events)
        if (ev.kind == HandleEvent::Kind::Sink) sink_id = ev.id;
    for (const auto& [id, e] : res.knot_exprs)
        if (e != unknot()) return {false, "core " + id + " not the unknot"};
    if (!res.kit.elements.empty()) return {false, "unknot kit not empty"};
    PairClassification pc = classify_pair(u.rhd, u.root, sink_id);
    if (pc.kind != PairClass::HopfLink) return {false, "pair is " + pc.to_string()};
    return {true, "hopf base case"};
}

// 2. The kit of T(2,3) # T(2,5) is {T(2,3), T(2,5), unknot, unknot}.
Outcome criterion2() {
    BuiltRHD a = build_expr(cable(2, 3, unknot()));
    BuiltRHD b = build_expr(cable(2, 5, unknot()));
    BuiltRHD s = build_sum(a.rhd, b.rhd, a.root, b.root);
    ExtractionResult res = extract(s.rhd, s.root);
    std::multiset<std::string> got;
    for (const auto& [label, e] : res.kit.elements) got.insert(serialize(e));
    std::multiset<std::string> want = {"cable(2,3,U)", "cable(2,5,U)", "U", "U"};
    if (got != want) {
        std::string detail;
        for (const auto& g : got) detail += g + " ";
        return {false, "kit multiset { " + detail + "}"};
    }
    return {true, "kit multiset exact"};
}

// 3. Round trip build/extract against normalize on 500 seeded expressions.
Outcome criterion3() {
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        int depth = static_cast<int>(seed % 5);
        KnotExpr e = random_expr(seed, depth, 7);
        BuiltRHD built = build_expr(e);
        if (!validate(built.rhd).empty()) {
            ++failures;
            continue;
        }
        ExtractionResult res = extract(built.rhd, built.root);
        if (!equal_normalized(res.knot_exprs.at(built.root), e)) ++failures;
    }
    if (failures) return {false, std::to_string(failures) + "/500 round trips failed"};
    return {true, "500/500 round trips"};
}

// 4. Exhaustive genus-one soundness and sphere rejection at the default budget.
Outcome criterion4() {
    EnumerationBudget b;  // defaults: 2 saddles, coeff 3, 4 events
    std::uint64_t accepted = 0, disk_pairs = 0, total = 0;
    std::string failure;
    enumerate_rhds(b, [&](const RHD& r) {
        ++total;
        bool disjoint_disks = false;
        for (const auto& ev : r.events) {
            if (ev.kind != HandleEvent::Kind::Saddle) continue;
            if (ev.c1.cls.disk && ev.c2.cls.disk &&
                (ev.c1.comp != ev.c2.comp || !ev.region.present))
                disjoint_disks = true;
        }
        std::vector<Violation> vs = validate(r);
        if (disjoint_disks) {
            ++disk_pairs;
            bool sphere = false;
            for (const auto& v : vs) sphere |= v.kind == ViolationKind::SphereProduced;
            if (!sphere) {
                failure = "disjoint disks not rejected with SphereProduced: " + serialize_rhd(r);
                return false;
            }
        }
        if (!vs.empty()) return true;
        ++accepted;
        // replay and devolve every regular level: all components genus 1
        LevelState st = LevelState::initial();
        for (const auto& ev : r.events) {
            ReplayStep step = apply_event(st, ev);
            if (!step.violations.empty()) {
                failure = "accepted decomposition fails replay: " + serialize_rhd(r);
                return false;
            }
            st = std::move(step.state);
            for (const auto& [id, c] : st.components)
                if (c.genus != 1) {
                    failure = "accepted decomposition reaches genus " +
                              std::to_string(c.genus) + ": " + serialize_rhd(r);
                    return false;
                }
        }
        return true;
    });
    if (!failure.empty()) return {false, failure};
    if (accepted == 0 || disk_pairs == 0) return {false, "enumeration did not cover the cases"};
    return {true, std::to_string(total) + " enumerated, " + std::to_string(accepted) +
                      " accepted, " + std::to_string(disk_pairs) + " disk pairs rejected"};
}

// 5. Cabling formula against exact long division, coprime 2 <= p < q <= 12.
Outcome criterion5() {
    int checked = 0;
    for (int p = 2; p < 12; ++p)
        for (int q = p + 1; q <= 12; ++q) {
            if (std::gcd(p, q) != 1) continue;
            ++checked;
            if (alexander(cable(p, q, unknot())) != poly_div_torus(p, q))
                return {false, "mismatch at (" + std::to_string(p) + "," + std::to_string(q) + ")"};
        }
    return {true, std::to_string(checked) + " torus knots agree"};
}

// 6. Multiplicativity against an independent expansion, 200 seeded pairs.
Outcome criterion6() {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        KnotExpr a = random_expr(seed * 2 + 1, 1 + static_cast<int>(seed % 3), 5);
        KnotExpr b = random_expr(seed * 2 + 2, 1 + static_cast<int>((seed + 1) % 3), 5);
        if (alexander(sum({a, b})) != expand_product(alexander(a), alexander(b)))
            return {false, "pair seed " + std::to_string(seed)};
    }
    return {true, "200/200 products agree"};
}

// 7. span(alexander) = 2 * genus for 50 iterated positive cables of positive
// torus knots.
Outcome criterion7() {
    SplitMix64 rng(2026);
    int done = 0;
    while (done < 50) {
        int p0 = rng.range(2, 5), q0 = rng.range(2, 7);
        if (std::gcd(p0, q0) != 1) continue;
        KnotExpr e = cable(p0, q0, unknot());
        int steps = rng.range(0, 3);
        for (int s = 0; s < steps;) {
            int p = rng.range(2, 4), q = rng.range(1, 7);
            if (std::gcd(p, q) != 1) continue;
            e = cable(p, q, e);
            ++s;
        }
        if (alexander(e).span() != 2 * genus(e))
            return {false, "span != 2g at " + serialize(e)};
        ++done;
    }
    return {true, "50/50 fibered spans agree"};
}

// 8. Confluence: two shuffled rule application orders on 1000 expressions.
Outcome criterion8() {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        KnotExpr e = random_expr(seed, 1 + static_cast<int>(seed % 4), 7);
        KnotExpr a = shuffled_rewrite(e, seed * 65537 + 1);
        KnotExpr c = shuffled_rewrite(e, seed * 9973 + 5);
        if (a != c || a != normalize(e)) return {false, "divergence at seed " + std::to_string(seed)};
    }
    return {true, "1000/1000 orders agree"};
}

// 9. Soundness of equality: single-rule rewrites stay equal with matching
// invariants; pairs with different Alexander polynomials never compare equal.
Outcome criterion9() {
    int related = 0;
    for (std::uint64_t seed = 0; related < 300; ++seed) {
        if (seed > 50000) return {false, "could not generate related pairs"};
        KnotExpr e = random_expr(seed, 1 + static_cast<int>(seed % 4), 6);
        std::vector<Redex> rs = find_redexes(e);
        if (rs.empty()) continue;
        SplitMix64 rng(seed);
        KnotExpr f = apply_redex(e, rs[rng.below(rs.size())]);
        if (!equal_normalized(e, f)) return {false, "rewrite changed the knot at seed " + std::to_string(seed)};
        if (alexander(e) != alexander(f)) return {false, "alexander differs across a rewrite"};
        if (genus(e) != genus(f)) return {false, "genus differs across a rewrite"};
        ++related;
    }
    int differing = 0;
    for (std::uint64_t seed = 0; differing < 300; ++seed) {
        if (seed > 50000) return {false, "could not generate differing pairs"};
        KnotExpr a = random_expr(seed * 3 + 1, 1 + static_cast<int>(seed % 3), 5);
        KnotExpr b = random_expr(seed * 3 + 2, 1 + static_cast<int>((seed + 1) % 3), 5);
        if (alexander(a) == alexander(b)) continue;
        if (equal_normalized(a, b)) return {false, "distinct invariants but equal forms"};
        ++differing;
    }
    return {true, "300 related + 300 differing pairs behave"};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        Outcome (*fn)();
    };
    const Criterion criteria[] = {
        {"1 no-saddle base case (Hopf pair)", 1.0, criterion1},
        {"2 torus knot sum kit multiset", 1.0, criterion2},
        {"3 build/extract round trip x500", 10.0, criterion3},
        {"4 exhaustive torus levels + sphere rejection", 60.0, criterion4},
        {"5 cabling formula vs long division", 1.0, criterion5},
        {"6 Alexander multiplicativity x200", 5.0, criterion6},
        {"7 fibered span = 2*genus x50", 5.0, criterion7},
        {"8 normalization confluence x1000", 10.0, criterion8},
        {"9 equality soundness x600", 10.0, criterion9},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double dt = seconds_since(t0);
        bool ok = out.ok && dt < c.limit_s;
        std::printf("%s criterion %s (%.2fs%s) %s\n", ok ? "PASS" : "FAIL", c.name, dt,
                    dt < c.limit_s ? "" : " OVER LIMIT", out.note.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
