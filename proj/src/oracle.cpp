#include "gknot/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "gknot/errors.hpp"

namespace gknot {

LaurentPoly poly_div_torus(int p, int q) {
    if (p < 2 || q < 2)
        throw NonCoprime("torus coefficients must both be >= 2, got (" +
                         std::to_string(p) + "," + std::to_string(q) + ")");
    if (std::gcd(p, q) != 1)
        throw NonCoprime("torus coefficients (" + std::to_string(p) + "," +
                         std::to_string(q) + ") are not coprime");
    auto cyc = [](int n) {  // t^n - 1
        return LaurentPoly::monomial(1, n) - LaurentPoly::one();
    };
    LaurentPoly num = cyc(p * q) * cyc(1);
    LaurentPoly den = cyc(p) * cyc(q);
    return num.divide_exact(den).canonical();
}

std::uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
    return n == 0 ? 0 : next() % n;
}

int SplitMix64::range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

namespace {

// Primitive cable coefficients: 1 <= p <= bound, |q| <= bound.  For height-1
// nodes both are kept positive (a plain torus knot).
std::pair<int, int> random_class(SplitMix64& rng, int bound, bool positive_only) {
    while (true) {
        int p = rng.range(1, bound);
        int q = positive_only ? rng.range(1, bound) : rng.range(-bound, bound);
        if (std::gcd(p, std::abs(q)) == 1) return {p, q};
    }
}

KnotExpr random_height(SplitMix64& rng, int h, int bound) {
    if (h <= 0) return unknot();
    if (h == 1) {
        auto [p, q] = random_class(rng, bound, true);
        return cable(p, q, unknot());
    }
    if (rng.below(2) == 0) {
        auto [p, q] = random_class(rng, bound, false);
        return cable(p, q, random_height(rng, h - 1, bound));
    }
    int m = rng.range(2, 3);
    std::vector<KnotExpr> kids;
    kids.push_back(random_height(rng, h - 1, bound));
    for (int i = 1; i < m; ++i)
        kids.push_back(random_height(rng, rng.range(0, h - 1), bound));
    return sum(std::move(kids));
}

} // namespace

KnotExpr random_expr(std::uint64_t seed, int depth, int coeff_bound) {
    SplitMix64 rng(seed);
    return random_height(rng, depth, coeff_bound);
}

namespace {

// Exhaustive event-sequence generation.  Canonical ids (s1.., t1.., z1..),
// backward placement references only, saddle circles on live components,
// side assignments emitted exactly where a split demands them.  Prefixes
// that already violate the replay are emitted but not extended.
struct Enumerator {
    const EnumerationBudget& budget;
    const std::function<bool(const RHD&)>& visit;
    std::uint64_t count = 0;
    bool stop = false;

    std::vector<CurveClass> classes;

    Enumerator(const EnumerationBudget& b, const std::function<bool(const RHD&)>& v)
        : budget(b), visit(v) {
        classes.push_back(CurveClass::Disk());
        classes.push_back(CurveClass::Class(0, 1));
        for (int p = 1; p <= budget.coeff_bound; ++p)
            for (int q = -budget.coeff_bound; q <= budget.coeff_bound; ++q)
                if (std::gcd(p, std::abs(q)) == 1)
                    classes.push_back(CurveClass::Class(p, q));
    }

    struct Node {
        RHD rhd;
        LevelState state;
        int sources = 0, saddles = 0, sinks = 0;
        int phase = 0;  // 0 source, 1 saddle, 2 sink
        std::vector<std::string> declared_comps;  // sources + saddle side ids
    };

    std::vector<std::string> live_sorted(const LevelState& st) const {
        std::vector<std::string> out;
        for (const auto& [id, c] : st.components) out.push_back(id);
        return out;  // std::map iterates sorted
    }

    void emit_and_extend(Node& node) {
        if (stop) return;
        if (!node.rhd.events.empty()) {
            ++count;
            if (!visit(node.rhd)) { stop = true; return; }
        }
        if (static_cast<int>(node.rhd.events.size()) >= budget.max_depth) return;

        std::vector<HandleEvent> candidates;
        if (node.phase == 0) next_sources(node, candidates);
        if (node.phase <= 1 && node.saddles < budget.max_saddles) next_saddles(node, candidates);
        next_sinks(node, candidates);

        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const HandleEvent& a, const HandleEvent& b) {
                             RHD ra, rb;
                             ra.events.push_back(a);
                             rb.events.push_back(b);
                             return serialize_rhd(ra) < serialize_rhd(rb);
                         });
        for (const HandleEvent& ev : candidates) {
            if (stop) return;
            ReplayStep step = apply_event(node.state, ev);
            Node child;
            child.rhd = node.rhd;
            child.rhd.events.push_back(ev);
            child.state = std::move(step.state);
            child.sources = node.sources + (ev.kind == HandleEvent::Kind::Source);
            child.saddles = node.saddles + (ev.kind == HandleEvent::Kind::Saddle);
            child.sinks = node.sinks + (ev.kind == HandleEvent::Kind::Sink);
            child.phase = ev.kind == HandleEvent::Kind::Source ? 0
                        : ev.kind == HandleEvent::Kind::Saddle ? 1 : 2;
            child.declared_comps = node.declared_comps;
            if (ev.kind == HandleEvent::Kind::Source) {
                child.declared_comps.push_back(ev.id);
            } else if (ev.kind == HandleEvent::Kind::Saddle) {
                child.declared_comps.push_back(side_id(ev.id, 'A'));
                child.declared_comps.push_back(side_id(ev.id, 'B'));
                child.declared_comps.push_back(merge_id(ev.id));
            }
            if (!step.violations.empty()) {
                // Emit the broken shape itself, do not grow it further.
                ++count;
                if (!visit(child.rhd)) { stop = true; return; }
                continue;
            }
            emit_and_extend(child);
        }
    }

    void next_sources(const Node& node, std::vector<HandleEvent>& out) const {
        std::string id = "s" + std::to_string(node.sources + 1);
        out.push_back(HandleEvent::source(id, Placement::Split()));
        for (int j = 1; j <= node.sources; ++j) {
            std::string ref = "s" + std::to_string(j);
            out.push_back(HandleEvent::source(id, Placement::Hopf(ref)));
            out.push_back(HandleEvent::source(id, Placement::Tube(ref)));
        }
    }

    void next_saddles(const Node& node, std::vector<HandleEvent>& out) const {
        std::string id = "t" + std::to_string(node.saddles + 1);
        std::vector<std::string> live = live_sorted(node.state);
        for (size_t i = 0; i < live.size(); ++i) {
            for (size_t j = i; j < live.size(); ++j) {
                for (size_t a = 0; a < classes.size(); ++a) {
                    size_t b0 = (i == j) ? a : 0;
                    for (size_t b = b0; b < classes.size(); ++b) {
                        AttachCircle ca{live[i], classes[a]};
                        AttachCircle cb{live[j], classes[b]};
                        saddle_variants(node, id, ca, cb, out);
                    }
                }
            }
        }
    }

    void saddle_variants(const Node& node, const std::string& id, const AttachCircle& ca,
                         const AttachCircle& cb, std::vector<HandleEvent>& out) const {
        bool same = ca.comp == cb.comp;
        if (!same) {
            out.push_back(HandleEvent::saddle(id, ca, cb));
            return;
        }
        if (ca.cls.disk && cb.cls.disk) {
            out.push_back(HandleEvent::saddle(id, ca, cb));  // disjoint disks
            RegionTag nested;
            nested.present = true;  // nested disks, empty assignment
            out.push_back(HandleEvent::saddle(id, ca, cb, nested));
            return;
        }
        if (ca.cls == cb.cls && !ca.cls.disk) {
            // A split: enumerate the side assignments of the other
            // components sharing the region.
            const std::string& region = node.state.components.at(ca.comp).region;
            std::vector<std::string> others;
            for (const auto& [cid, c] : node.state.components)
                if (cid != ca.comp && c.region == region) others.push_back(cid);
            bool strict = ca.cls.is_meridian();
            int n = static_cast<int>(others.size());
            for (int mask = 0; mask < (1 << n); ++mask) {
                RegionTag tag;
                tag.present = strict || mask != 0;
                for (int k = 0; k < n; ++k)
                    tag.sides.emplace_back(others[static_cast<size_t>(k)],
                                           (mask >> k) & 1 ? 'A' : 'B');
                if (!tag.present && mask == 0 && !strict) tag = RegionTag{};
                out.push_back(HandleEvent::saddle(id, ca, cb, tag));
                if (n == 0) break;  // single variant when nothing to assign
            }
            return;
        }
        out.push_back(HandleEvent::saddle(id, ca, cb));
    }

    void next_sinks(const Node& node, std::vector<HandleEvent>& out) const {
        std::string id = "z" + std::to_string(node.sinks + 1);
        for (const std::string& comp : node.declared_comps)
            out.push_back(HandleEvent::sink(id, comp));
    }
};

} // namespace

std::uint64_t enumerate_rhds(const EnumerationBudget& budget,
                             const std::function<bool(const RHD&)>& visit) {
    Enumerator e(budget, visit);
    Enumerator::Node root;
    root.state = LevelState::initial();
    e.emit_and_extend(root);
    return e.count;
}

} // namespace gknot
