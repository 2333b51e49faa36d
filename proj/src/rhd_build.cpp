#include <numeric>
#include <set>

#include "gknot/errors.hpp"
#include "gknot/rhd.hpp"

namespace gknot {

namespace {

std::set<std::string> all_ids(const RHD& r) {
    std::set<std::string> ids;
    for (const auto& ev : r.events) ids.insert(ev.id);
    return ids;
}

std::string fresh_id(const std::set<std::string>& used, char prefix) {
    for (int n = 1;; ++n) {
        std::string id = std::string(1, prefix) + std::to_string(n);
        if (!used.count(id)) return id;
    }
}

bool is_source(const RHD& r, const std::string& id) {
    for (const auto& ev : r.events)
        if (ev.kind == HandleEvent::Kind::Source && ev.id == id) return true;
    return false;
}

// Rewrites every reference to component `from` (placements, attach circles,
// sink targets, region tags) to `to`.  Side ids "<from>.X" follow along.
void rewrite_ref(std::string& s, const std::string& from, const std::string& to) {
    if (s == from) {
        s = to;
    } else if (s.size() > from.size() && s.compare(0, from.size(), from) == 0 &&
               s[from.size()] == '.') {
        s = to + s.substr(from.size());
    }
}

void rewrite_refs(RHD& r, const std::string& from, const std::string& to) {
    for (auto& ev : r.events) {
        rewrite_ref(ev.placement.ref, from, to);
        rewrite_ref(ev.c1.comp, from, to);
        rewrite_ref(ev.c2.comp, from, to);
        rewrite_ref(ev.target, from, to);
        for (auto& [eid, side] : ev.region.sides) rewrite_ref(eid, from, to);
    }
}

struct Split {
    std::vector<HandleEvent> sources, saddles, sinks;
};

Split split_events(const RHD& r) {
    Split s;
    for (const auto& ev : r.events) {
        switch (ev.kind) {
        case HandleEvent::Kind::Source: s.sources.push_back(ev); break;
        case HandleEvent::Kind::Saddle: s.saddles.push_back(ev); break;
        case HandleEvent::Kind::Sink: s.sinks.push_back(ev); break;
        }
    }
    return s;
}

RHD join(const Split& s) {
    RHD r;
    r.events.insert(r.events.end(), s.sources.begin(), s.sources.end());
    r.events.insert(r.events.end(), s.saddles.begin(), s.saddles.end());
    r.events.insert(r.events.end(), s.sinks.begin(), s.sinks.end());
    return r;
}

} // namespace

BuiltRHD build_unknot() {
    RHD r;
    r.events.push_back(HandleEvent::source("s1", Placement::Split()));
    r.events.push_back(HandleEvent::sink("z1", "s1"));
    return BuiltRHD{std::move(r), "s1"};
}

BuiltRHD build_cable(const RHD& base, const std::string& j, int p, int q) {
    if (!is_source(base, j))
        throw UnknownComponent("cable companion " + j + " is not a source of the decomposition");
    if (p < 0) { p = -p; q = -q; }
    if (std::gcd(p, std::abs(q)) != 1)
        throw NonPrimitiveClass("cable class (" + std::to_string(p) + "," + std::to_string(q) +
                                ") is not primitive");
    if (p == 0)
        throw NonPrimitiveClass("meridian cable (0,q) is the unknot; build it directly");

    std::set<std::string> used = all_ids(base);
    std::string k = fresh_id(used, 's');
    used.insert(k);
    std::string t = fresh_id(used, 't');

    Split s = split_events(base);
    // New lowest source inside j's tube, new lowest saddle joining a
    // longitude of the new tube to the (p,q)-curve on j's tube.  The stable
    // annulus forces the longitude framing to the surface framing p*q of the
    // curve it is parallel to.
    s.sources.insert(s.sources.begin(), HandleEvent::source(k, Placement::Tube(j)));
    s.saddles.insert(s.saddles.begin(),
                     HandleEvent::saddle(t, AttachCircle{k, CurveClass::Class(1, p * q)},
                                         AttachCircle{j, CurveClass::Class(p, q)}));
    return BuiltRHD{join(s), k};
}

BuiltRHD build_sum(const RHD& a, const RHD& b, const std::string& sa, const std::string& sb) {
    if (!is_source(a, sa))
        throw UnknownComponent("summand " + sa + " is not a source of the first decomposition");
    if (!is_source(b, sb))
        throw UnknownComponent("summand " + sb + " is not a source of the second decomposition");

    RHD a2 = a;
    RHD b2 = b;
    std::string sb2 = sb;

    // Disjoint id namespaces: rename colliding ids of b.
    std::set<std::string> a_ids = all_ids(a2);
    std::set<std::string> b_ids = all_ids(b2);
    for (const std::string& id : b_ids) {
        if (!a_ids.count(id)) continue;
        std::string renamed = id;
        do { renamed += "'"; } while (a_ids.count(renamed) || b_ids.count(renamed));
        for (auto& ev : b2.events)
            if (ev.id == id) ev.id = renamed;
        rewrite_refs(b2, id, renamed);
        if (sb2 == id) sb2 = renamed;
        b_ids.insert(renamed);
    }

    std::set<std::string> used = a_ids;
    used.insert(b_ids.begin(), b_ids.end());
    std::string v = fresh_id(used, 's');
    used.insert(v);
    std::string t = fresh_id(used, 't');

    // Drop the summand sources; their tubes become the saddle's two sides.
    auto drop = [](RHD& r, const std::string& id) {
        for (auto it = r.events.begin(); it != r.events.end(); ++it) {
            if (it->kind == HandleEvent::Kind::Source && it->id == id) {
                r.events.erase(it);
                return;
            }
        }
    };
    drop(a2, sa);
    drop(b2, sb2);
    rewrite_refs(a2, sa, side_id(t, 'A'));
    rewrite_refs(b2, sb2, side_id(t, 'B'));

    RegionTag tag;
    tag.present = true;
    for (const auto& ev : a2.events) tag.sides.emplace_back(ev.id, 'A');
    for (const auto& ev : b2.events) tag.sides.emplace_back(ev.id, 'B');

    Split pa = split_events(a2);
    Split pb = split_events(b2);
    Split s;
    s.sources.push_back(HandleEvent::source(v, Placement::Split()));
    s.sources.insert(s.sources.end(), pa.sources.begin(), pa.sources.end());
    s.sources.insert(s.sources.end(), pb.sources.begin(), pb.sources.end());
    s.saddles.push_back(HandleEvent::saddle(t, AttachCircle{v, CurveClass::Class(0, 1)},
                                            AttachCircle{v, CurveClass::Class(0, 1)}, tag));
    s.saddles.insert(s.saddles.end(), pa.saddles.begin(), pa.saddles.end());
    s.saddles.insert(s.saddles.end(), pb.saddles.begin(), pb.saddles.end());
    s.sinks.insert(s.sinks.end(), pa.sinks.begin(), pa.sinks.end());
    s.sinks.insert(s.sinks.end(), pb.sinks.begin(), pb.sinks.end());
    return BuiltRHD{join(s), v};
}

BuiltRHD build_expr(const KnotExpr& e) {
    KnotExpr n = normalize(e);
    switch (n.kind) {
    case KnotExpr::Kind::Unknot:
        return build_unknot();
    case KnotExpr::Kind::Cable: {
        BuiltRHD inner = build_expr(n.kids[0]);
        return build_cable(inner.rhd, inner.root, n.p, n.q);
    }
    case KnotExpr::Kind::Sum: {
        BuiltRHD acc = build_expr(n.kids[0]);
        for (size_t i = 1; i < n.kids.size(); ++i) {
            BuiltRHD next = build_expr(n.kids[i]);
            acc = build_sum(acc.rhd, next.rhd, acc.root, next.root);
        }
        return acc;
    }
    }
    return build_unknot();
}

} // namespace gknot
