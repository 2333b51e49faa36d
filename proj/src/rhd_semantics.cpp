#include <algorithm>
#include <cassert>
#include <set>

#include "gknot/errors.hpp"
#include "gknot/rhd.hpp"

// Replay semantics for round handle decompositions.
//
// The level surface between events is a set of torus components, each
// facing one unfilled region.  Sources create tubes; a saddle performs
// surgery on its two attach circles; a sink fills the region its target
// faces, which must contain no other live torus.
//
// A saddle either merges two components (circles on distinct tori) or
// splits one (circles on the same torus).  The case analysis on the two
// curve classes decides the outcome and records the cable / sum relation
// that extraction later resolves into knot expressions:
//
//   cross-component
//     disk & disk                 -> sphere (rejected)
//     disk & exact longitude      -> absorb, the longitude side is an unknot
//     disk & anything else        -> not embeddable (rejected)
//     meridian & meridian         -> not embeddable (rejected)
//     meridian & longitude        -> absorb, the longitude side is an unknot
//     meridian & other            -> not embeddable (rejected)
//     longitude (1,m) & (p,q)     -> cable relation; companion side survives
//     (p,q) & (r,s), p,r >= 2     -> Hopf configuration; merged torus is
//                                    filled by a Seifert piece, cap core is
//                                    the torus knot of the first circle
//   same component
//     disk & disk, tagged         -> nested disks: split off a trivial region
//     disk & disk, untagged       -> disjoint disks: sphere (rejected)
//     disk & exact longitude      -> absorb, companion unchanged
//     disk & other essential      -> not embeddable (rejected)
//     meridian & meridian         -> connected-sum split into two sides
//     (p,q) & +-(p,q), p >= 1     -> parallel split: thin cable side + rest
//     mismatched slopes           -> not embeddable (rejected)

namespace gknot {

namespace {

struct Term {
    enum class K { Ground, ForcedUnknot, CableOf, SumOf, AliasOf };
    K k = K::Ground;
    int p = 0, q = 0;
    std::string a, b;  // CableOf: a = companion; SumOf: a,b = sides; AliasOf: a

    static Term forced_unknot() { return Term{K::ForcedUnknot, 0, 0, "", ""}; }
    static Term cable_of(int p, int q, std::string comp) {
        return Term{K::CableOf, p, q, std::move(comp), ""};
    }
    static Term sum_of(std::string a, std::string b) {
        return Term{K::SumOf, 0, 0, std::move(a), std::move(b)};
    }
    static Term alias_of(std::string a) { return Term{K::AliasOf, 0, 0, std::move(a), ""}; }
};

struct CableEdge {
    std::string from, to;  // `from` is a (p,q)-cable of `to`
    int p, q;
};

struct Engine {
    LevelState st = LevelState::initial();
    std::vector<Violation> viol;
    bool stopped = false;

    std::map<std::string, Term> comp_term;     // defined-once component relations
    std::map<std::string, Term> saddle_term;   // saddle id -> core term
    std::map<std::string, Term> sink_term;     // sink id -> core term
    std::map<std::string, std::string> saddle_pos;  // saddle id -> position node
    std::vector<CableEdge> cable_edges;
    std::vector<std::pair<std::string, std::string>> hopf_pairs;
    std::set<std::string> ever_components;

    void report(ViolationKind k, int idx, std::string detail) {
        viol.push_back(Violation{k, idx, std::move(detail)});
    }

    void define_if_absent(const std::string& comp, Term t) {
        comp_term.emplace(comp, std::move(t));
    }

    bool live(const std::string& id) const {
        return st.components.count(id) != 0;
    }

    void migrate_pending(const std::string& comp) {
        std::string pending = "pending:" + comp;
        std::string target = st.components.at(comp).region;
        for (auto& [id, c] : st.components)
            if (c.region == pending) c.region = target;
        st.regions.erase(pending);
    }

    LevelState::Region& ensure_region(const std::string& id, LevelState::RegionKind kind,
                                      const std::string& owner) {
        auto it = st.regions.find(id);
        if (it == st.regions.end())
            it = st.regions.emplace(id, LevelState::Region{kind, owner}).first;
        return it->second;
    }

    void add_component(const std::string& id, const std::string& region, Placement origin) {
        LevelComponent c;
        c.genus = 1;
        c.region = region;
        c.origin = std::move(origin);
        st.components.emplace(id, std::move(c));
        ever_components.insert(id);
        migrate_pending(id);
    }

    void kill(const std::string& id) { st.components.erase(id); }

    // ---- events ----

    void do_source(const HandleEvent& ev, int idx) {
        if (ever_components.count(ev.id)) {
            report(ViolationKind::UnknownComponent, idx, "duplicate component id " + ev.id);
            stopped = true;
            return;
        }
        std::string region;
        switch (ev.placement.kind) {
        case PlacementKind::SplitBall:
            region = "ambient";
            break;
        case PlacementKind::HopfDual:
        case PlacementKind::InsideTube: {
            const std::string& ref = ev.placement.ref;
            if (ref == ev.id) {
                report(ViolationKind::UnknownComponent, idx, "source " + ev.id + " placed relative to itself");
                stopped = true;
                return;
            }
            if (live(ref)) {
                region = st.components.at(ref).region;
            } else {
                region = "pending:" + ref;
                ensure_region(region, LevelState::RegionKind::Ambient, "");
            }
            if (ev.placement.kind == PlacementKind::HopfDual)
                hopf_pairs.emplace_back(ev.id, ref);
            break;
        }
        }
        add_component(ev.id, region, ev.placement);
    }

    char side_of_component(const RegionTag& tag, const std::string& comp) const {
        if (auto s = tag.side_of(comp)) return *s;
        return 0;
    }

    // Moves every other live component of `region` to a side region per the
    // tag.  `strict` demands a tag for each (connected-sum splits); otherwise
    // untagged components stay on side B.
    bool assign_sides(const RegionTag& tag, const std::string& region,
                      const std::string& skip, const std::string& region_a,
                      const std::string& region_b, bool strict, int idx) {
        for (auto& [id, c] : st.components) {
            if (id == skip || c.region != region) continue;
            char s = side_of_component(tag, id);
            if (s == 'A') c.region = region_a;
            else if (s == 'B') c.region = region_b;
            else if (strict) {
                report(ViolationKind::IncompatibleAttachment, idx,
                       "component " + id + " in split region has no side assignment");
                stopped = true;
                return false;
            } else {
                c.region = region_b;
            }
        }
        return true;
    }

    void do_saddle(const HandleEvent& ev, int idx) {
        const std::string& t1 = ev.c1.comp;
        const std::string& t2 = ev.c2.comp;
        for (const std::string* t : {&t1, &t2}) {
            if (!live(*t)) {
                report(ever_components.count(*t) ? ViolationKind::DeadComponent
                                                 : ViolationKind::UnknownComponent,
                       idx, "attach circle on " + *t);
                stopped = true;
                return;
            }
        }
        LevelComponent& a = st.components.at(t1);
        LevelComponent& b = st.components.at(t2);
        if (a.genus != 1 || b.genus != 1) {
            report(ViolationKind::GenusExceeded, idx, "attach circle on a non-torus component");
            stopped = true;
            return;
        }
        const std::string region = a.region;
        const CurveClass c1 = ev.c1.cls;
        const CurveClass c2 = ev.c2.cls;
        // Two disk-bounding circles with disjoint disks always surger into a
        // sphere, whatever else is wrong with the attachment.
        if (c1.disk && c2.disk && (t1 != t2 || !ev.region.present)) {
            kill(t1);
            if (t1 != t2) kill(t2);
            spawn_sphere_pair(ev, idx, region);
            return;
        }
        if (a.sfs_filled || b.sfs_filled) {
            report(ViolationKind::IncompatibleAttachment, idx,
                   "component filled by a Seifert piece admits no further handles");
            stopped = true;
            return;
        }
        if (a.region != b.region) {
            report(ViolationKind::IncompatibleAttachment, idx,
                   "attach circles face different regions " + a.region + " / " + b.region);
            stopped = true;
            return;
        }

        if (t1 == t2) {
            do_split(ev, idx, t1, c1, c2, region);
        } else {
            do_merge(ev, idx, t1, t2, c1, c2, region);
        }
    }

    void spawn_sphere_pair(const HandleEvent& ev, int idx, const std::string& region) {
        std::string sa = side_id(ev.id, 'A');
        std::string sb = side_id(ev.id, 'B');
        add_component(sa, region, Placement::Split());
        add_component(sb, region, Placement::Split());
        st.components.at(sa).genus = 0;
        st.components.at(sb).genus = 2;
        report(ViolationKind::SphereProduced, idx, "surgery on disjoint disk circles yields a sphere");
        report(ViolationKind::GenusExceeded, idx, "surgery on disjoint disk circles yields genus 2");
        stopped = true;
    }

    void do_split(const HandleEvent& ev, int idx, const std::string& t,
                  const CurveClass& c1, const CurveClass& c2, const std::string& region) {
        if (c1.disk && c2.disk) {
            // Nested disks (the disjoint case was handled before dispatch):
            // side A is the trivial region spliced off.
            std::string sa = side_id(ev.id, 'A');
            std::string sb = side_id(ev.id, 'B');
            std::string ra = "reg:" + sa;
            ensure_region(ra, LevelState::RegionKind::TrivialSide, ev.id);
            if (!assign_sides(ev.region, region, t, ra, region, false, idx)) return;
            kill(t);
            add_component(sa, ra, Placement::Split());
            add_component(sb, region, Placement::Split());
            define_if_absent(sb, Term::alias_of(t));
            saddle_term[ev.id] = Term::forced_unknot();
            saddle_pos[ev.id] = ev.id;
            return;
        }
        if (c1.disk || c2.disk) {
            const CurveClass& ess = c1.disk ? c2 : c1;
            if (!(ess.is_longitude() && ess.q == 0)) {
                report(ViolationKind::IncompatibleAttachment, idx,
                       "disk circle beside a non-longitude circle on one torus");
                stopped = true;
                return;
            }
            // Absorb; the component survives with its core unchanged.
            define_if_absent(t, Term::forced_unknot());
            saddle_term[ev.id] = Term::forced_unknot();
            saddle_pos[ev.id] = ev.id;
            return;
        }
        // Both essential: disjoint curves on one torus are parallel, and
        // classes are sign-canonical, so they must coincide.
        if (c1.p != c2.p || c1.q != c2.q) {
            report(ViolationKind::IncompatibleAttachment, idx,
                   "essential circles of different slope on one torus");
            stopped = true;
            return;
        }
        std::string sa = side_id(ev.id, 'A');
        std::string sb = side_id(ev.id, 'B');
        if (c1.is_meridian()) {
            // Connected-sum split: the region separates into two sides.
            std::string ra = "reg:" + sa;
            std::string rb = "reg:" + sb;
            ensure_region(ra, LevelState::RegionKind::SumSide, ev.id);
            ensure_region(rb, LevelState::RegionKind::SumSide, ev.id);
            if (!assign_sides(ev.region, region, t, ra, rb, true, idx)) return;
            kill(t);
            add_component(sa, ra, Placement::Split());
            add_component(sb, rb, Placement::Split());
            define_if_absent(t, Term::sum_of(sa, sb));
            saddle_term[ev.id] = Term::forced_unknot();
            saddle_pos[ev.id] = ev.id;
            return;
        }
        // Parallel essential split: side A is the thin tube around the curve.
        std::string ra = "reg:" + sa;
        ensure_region(ra, LevelState::RegionKind::ThinSide, ev.id);
        if (!assign_sides(ev.region, region, t, ra, region, false, idx)) return;
        kill(t);
        add_component(sa, ra, Placement::Split());
        add_component(sb, region, Placement::Split());
        comp_term[sa] = Term::cable_of(c1.p, c1.q, t);
        define_if_absent(sb, Term::alias_of(t));
        saddle_term[ev.id] = Term::cable_of(c1.p, c1.q, t);
        saddle_pos[ev.id] = sa;
        cable_edges.push_back(CableEdge{sa, t, c1.p, c1.q});
        return;
    }

    void do_merge(const HandleEvent& ev, int idx, const std::string& t1, const std::string& t2,
                  const CurveClass& c1, const CurveClass& c2, const std::string& region) {
        (void)region;
        if (c1.disk || c2.disk) {
            const std::string& td = c1.disk ? t1 : t2;  // disk side survives
            const std::string& te = c1.disk ? t2 : t1;
            const CurveClass& ess = c1.disk ? c2 : c1;
            if (!(ess.is_longitude() && ess.q == 0)) {
                report(ViolationKind::IncompatibleAttachment, idx,
                       "disk circle against a non-longitude circle");
                stopped = true;
                return;
            }
            kill(te);
            define_if_absent(te, Term::forced_unknot());
            saddle_term[ev.id] = Term::forced_unknot();
            saddle_pos[ev.id] = ev.id;
            cable_edges.push_back(CableEdge{ev.id, te, 1, 0});
            (void)td;
            return;
        }
        bool m1 = c1.is_meridian(), m2 = c2.is_meridian();
        if (m1 && m2) {
            report(ViolationKind::IncompatibleAttachment, idx,
                   "meridian circles on two distinct tubes");
            stopped = true;
            return;
        }
        if (m1 || m2) {
            const std::string& tm = m1 ? t1 : t2;  // meridian side survives
            const std::string& to = m1 ? t2 : t1;
            const CurveClass& other = m1 ? c2 : c1;
            // The meridian disk caps the saddle annulus into a disk bounded
            // by the other circle, forcing it to be a 0-framed longitude.
            if (!(other.is_longitude() && other.q == 0)) {
                report(ViolationKind::IncompatibleAttachment, idx,
                       "meridian circle against a non-longitude circle");
                stopped = true;
                return;
            }
            kill(to);
            define_if_absent(to, Term::forced_unknot());
            saddle_term[ev.id] = Term::forced_unknot();
            saddle_pos[ev.id] = ev.id;
            cable_edges.push_back(CableEdge{to, tm, 0, 1});
            (void)tm;
            return;
        }
        bool l1 = c1.is_longitude(), l2 = c2.is_longitude();
        if (l1 || l2) {
            // Cable relation: the longitude side is the cable knot, the other
            // tube is its companion and carries the merged component.
            const std::string& tc = l1 ? t1 : t2;
            const std::string& tj = l1 ? t2 : t1;
            const CurveClass& cls = l1 ? c2 : c1;
            kill(tc);
            define_if_absent(tc, Term::cable_of(cls.p, cls.q, tj));
            saddle_term[ev.id] = Term::alias_of(tc);
            saddle_pos[ev.id] = tc;
            cable_edges.push_back(CableEdge{tc, tj, cls.p, cls.q});
            return;
        }
        // Both circles have longitude coefficient >= 2: the two cores are
        // Hopf-linked unknots and the saddle core is a torus knot.  The
        // merged torus bounds a Seifert piece; only a sink may follow.
        kill(t1);
        kill(t2);
        std::string m = merge_id(ev.id);
        add_component(m, region, Placement::Split());
        st.components.at(m).sfs_filled = true;
        st.components.at(m).cap_saddle = ev.id;
        define_if_absent(t1, Term::forced_unknot());
        define_if_absent(t2, Term::forced_unknot());
        saddle_term[ev.id] = Term::cable_of(c1.p, c1.q, t1);
        saddle_pos[ev.id] = ev.id;
        cable_edges.push_back(CableEdge{ev.id, t1, c1.p, c1.q});
        cable_edges.push_back(CableEdge{ev.id, t2, c2.p, c2.q});
        hopf_pairs.emplace_back(t1, t2);
    }

    void do_sink(const HandleEvent& ev, int idx) {
        const std::string& t = ev.target;
        if (!live(t)) {
            report(ever_components.count(t) ? ViolationKind::DeadComponent
                                            : ViolationKind::UnknownComponent,
                   idx, "sink target " + t);
            return;
        }
        const LevelComponent& c = st.components.at(t);
        if (c.genus != 1) {
            report(ViolationKind::GenusExceeded, idx, "sink target has genus " + std::to_string(c.genus));
            return;
        }
        if (st.live_in_region(c.region) != 1) return;  // blocked; reported as dangling at the end
        // Standalone replays (apply_event) carry no recorded saddle cores;
        // the fallback only matters for extraction, which always replays
        // from the start.
        auto term_or_unknot = [&](const std::string& saddle) {
            auto it = saddle_term.find(saddle);
            return it == saddle_term.end() ? Term::forced_unknot() : it->second;
        };
        if (c.sfs_filled) {
            sink_term[ev.id] = term_or_unknot(c.cap_saddle);
        } else {
            auto rit = st.regions.find(c.region);
            auto kind = rit == st.regions.end() ? LevelState::RegionKind::Ambient
                                                : rit->second.kind;
            switch (kind) {
            case LevelState::RegionKind::ThinSide: {
                // The sink fills the thin tube; its core is the tube's own
                // core and the saddle circle is its (1, pq)-framed cable.
                const std::string& owner = rit->second.owner_saddle;
                Term tt = term_or_unknot(owner);
                sink_term[ev.id] = tt;
                if (tt.k == Term::K::CableOf)
                    cable_edges.push_back(
                        CableEdge{side_id(owner, 'A'), ev.id, 1, tt.p * tt.q});
                break;
            }
            case LevelState::RegionKind::TrivialSide:
                sink_term[ev.id] = Term::forced_unknot();
                break;
            case LevelState::RegionKind::Ambient:
            case LevelState::RegionKind::SumSide:
                // Hopf dual of the filled tube the sink closes off.
                sink_term[ev.id] = Term::forced_unknot();
                hopf_pairs.emplace_back(ev.id, t);
                break;
            }
        }
        kill(t);
    }

    void finish() {
        for (const auto& [id, c] : st.components)
            report(ViolationKind::DanglingComponent, -1, "component " + id + " unfilled at the end");
    }

    void run(const RHD& r) {
        for (size_t i = 0; i < r.events.size() && !stopped; ++i) {
            const HandleEvent& ev = r.events[i];
            switch (ev.kind) {
            case HandleEvent::Kind::Source: do_source(ev, static_cast<int>(i)); break;
            case HandleEvent::Kind::Saddle: do_saddle(ev, static_cast<int>(i)); break;
            case HandleEvent::Kind::Sink: do_sink(ev, static_cast<int>(i)); break;
            }
        }
        if (!stopped) finish();
    }
};

// Phase ordering and reference sanity, before any replay.
std::vector<Violation> prepass(const RHD& r) {
    std::vector<Violation> out;
    int phase = 0;
    std::set<std::string> event_ids;
    std::set<std::string> comp_ids;  // sources + derived saddle side ids
    bool has_source = false, has_sink = false;

    for (size_t i = 0; i < r.events.size(); ++i) {
        const HandleEvent& ev = r.events[i];
        int p = ev.kind == HandleEvent::Kind::Source ? 0
              : ev.kind == HandleEvent::Kind::Saddle ? 1 : 2;
        if (p < phase)
            out.push_back(Violation{ViolationKind::OrderingViolation, static_cast<int>(i),
                                    (p == 0 ? "source" : p == 1 ? "saddle" : "sink") +
                                        std::string(" ") + ev.id + " after a later phase"});
        phase = std::max(phase, p);
        if (!event_ids.insert(ev.id).second)
            out.push_back(Violation{ViolationKind::UnknownComponent, static_cast<int>(i),
                                    "duplicate event id " + ev.id});
        if (ev.kind == HandleEvent::Kind::Source) {
            has_source = true;
            comp_ids.insert(ev.id);
        } else if (ev.kind == HandleEvent::Kind::Saddle) {
            comp_ids.insert(side_id(ev.id, 'A'));
            comp_ids.insert(side_id(ev.id, 'B'));
            comp_ids.insert(merge_id(ev.id));
        } else {
            has_sink = true;
        }
    }
    for (size_t i = 0; i < r.events.size(); ++i) {
        const HandleEvent& ev = r.events[i];
        if (ev.kind == HandleEvent::Kind::Source) {
            if (ev.placement.kind != PlacementKind::SplitBall &&
                !comp_ids.count(ev.placement.ref))
                out.push_back(Violation{ViolationKind::UnknownComponent, static_cast<int>(i),
                                        "placement refers to unknown component " + ev.placement.ref});
        } else if (ev.kind == HandleEvent::Kind::Saddle) {
            for (const AttachCircle* c : {&ev.c1, &ev.c2})
                if (!comp_ids.count(c->comp))
                    out.push_back(Violation{ViolationKind::UnknownComponent, static_cast<int>(i),
                                            "attach circle on unknown component " + c->comp});
        } else if (!comp_ids.count(ev.target)) {
            out.push_back(Violation{ViolationKind::UnknownComponent, static_cast<int>(i),
                                    "sink target " + ev.target + " unknown"});
        }
    }
    // Missing sources or sinks surface as dangling components during the
    // replay; only the empty list needs an explicit report.
    (void)has_source;
    (void)has_sink;
    if (r.events.empty())
        out.push_back(Violation{ViolationKind::DanglingComponent, -1, "empty decomposition"});
    return out;
}

Engine replay_checked(const RHD& r) {
    Engine e;
    e.viol = prepass(r);
    if (e.viol.empty()) e.run(r);
    return e;
}

} // namespace

LevelState LevelState::initial() {
    LevelState st;
    st.regions.emplace("ambient", Region{RegionKind::Ambient, ""});
    return st;
}

int LevelState::live_in_region(const std::string& region) const {
    int n = 0;
    for (const auto& [id, c] : components)
        if (c.region == region) ++n;
    return n;
}

std::vector<Violation> validate(const RHD& r) {
    return replay_checked(r).viol;
}

LevelState apply_source(const LevelState& state, const HandleEvent& source_event) {
    if (source_event.kind != HandleEvent::Kind::Source)
        throw UnknownComponent("apply_source called with a non-source event");
    Engine e;
    e.st = state;
    for (const auto& [id, c] : state.components) e.ever_components.insert(id);
    e.do_source(source_event, 0);
    if (!e.viol.empty()) throw UnknownComponent(e.viol.front().detail);
    return e.st;
}

ReplayStep apply_event(const LevelState& state, const HandleEvent& ev) {
    Engine e;
    e.st = state;
    for (const auto& [id, c] : state.components) e.ever_components.insert(id);
    switch (ev.kind) {
    case HandleEvent::Kind::Source: e.do_source(ev, 0); break;
    case HandleEvent::Kind::Saddle: e.do_saddle(ev, 0); break;
    case HandleEvent::Kind::Sink: e.do_sink(ev, 0); break;
    }
    return ReplayStep{std::move(e.st), std::move(e.viol)};
}

SurgeryOutcome surger(const LevelState& state, const HandleEvent& saddle_event) {
    if (saddle_event.kind != HandleEvent::Kind::Saddle)
        throw DeadComponent("surger called with a non-saddle event");
    for (const AttachCircle* c : {&saddle_event.c1, &saddle_event.c2})
        if (!state.components.count(c->comp))
            throw DeadComponent("attach circle on missing component " + c->comp);
    Engine e;
    e.st = state;
    for (const auto& [id, c] : state.components) e.ever_components.insert(id);
    // Euler characteristic before (tori contribute 0).
    long long chi_before = 0;
    for (const auto& [id, c] : state.components) chi_before += 2 - 2 * c.genus;
    e.do_saddle(saddle_event, 0);
    long long chi_after = 0;
    for (const auto& [id, c] : e.st.components) chi_after += 2 - 2 * c.genus;
    assert(chi_before == chi_after && "surgery must preserve Euler characteristic");
    // Surgery keeps known cores on surviving components; merged survivors
    // inherit whatever the input state carried.
    return SurgeryOutcome{std::move(e.st), std::move(e.viol)};
}

// ---- extraction ----

namespace {

struct Resolver {
    const Engine& eng;
    std::map<std::string, KnotExpr> memo;
    std::set<std::string> in_progress;

    const Term* term_of(const std::string& comp) const {
        auto it = eng.comp_term.find(comp);
        return it == eng.comp_term.end() ? nullptr : &it->second;
    }

    KnotExpr resolve_comp(const std::string& comp) {
        auto it = memo.find(comp);
        if (it != memo.end()) return it->second;
        if (!in_progress.insert(comp).second)
            throw InvalidDecomposition("cyclic companion relation at " + comp);
        const Term* t = term_of(comp);
        KnotExpr e = t ? resolve_term(*t) : unknot();
        in_progress.erase(comp);
        memo[comp] = e;
        return e;
    }

    KnotExpr resolve_term(const Term& t) {
        switch (t.k) {
        case Term::K::Ground:
        case Term::K::ForcedUnknot:
            return unknot();
        case Term::K::CableOf:
            return normalize(cable(t.p, t.q, resolve_comp(t.a)));
        case Term::K::SumOf:
            return normalize(sum({resolve_comp(t.a), resolve_comp(t.b)}));
        case Term::K::AliasOf:
            return resolve_comp(t.a);
        }
        return unknot();
    }

    // Follows aliases to the component whose term structurally defines it.
    std::pair<std::string, const Term*> canonical(const std::string& comp) {
        std::string c = comp;
        std::set<std::string> seen;
        while (true) {
            if (!seen.insert(c).second) throw InvalidDecomposition("cyclic alias at " + c);
            const Term* t = term_of(c);
            if (t && t->k == Term::K::AliasOf) { c = t->a; continue; }
            return {c, t};
        }
    }

    // Immediate summand components of a companion, flattening nested sums.
    void flatten_sum(const std::string& comp, std::vector<std::string>& out) {
        auto [c, t] = canonical(comp);
        if (t && t->k == Term::K::SumOf) {
            flatten_sum(t->a, out);
            flatten_sum(t->b, out);
        } else {
            out.push_back(c);
        }
    }
};

struct KitAssembler {
    Resolver& res;
    ExtractionResult& out;
    std::map<std::string, int> label_uses;

    std::string fresh_label(const std::string& comp) {
        int n = ++label_uses[comp];
        return n == 1 ? comp : comp + "#" + std::to_string(n);
    }

    // Children component list of a defining term.
    std::vector<std::string> children_of(const Term* t) {
        std::vector<std::string> kids;
        if (!t) return kids;
        if (t->k == Term::K::CableOf) {
            res.flatten_sum(t->a, kids);
        } else if (t->k == Term::K::SumOf) {
            res.flatten_sum(t->a, kids);
            res.flatten_sum(t->b, kids);
        }
        return kids;
    }

    std::string add_element(const std::string& comp) {
        auto [c, t] = res.canonical(comp);
        std::string label = fresh_label(c);
        KnotExpr e = res.resolve_comp(c);
        out.kit.elements[label] = e;
        out.witness_r[label] = c;
        if (e.kind != KnotExpr::Kind::Unknot) {
            std::vector<std::string> kid_labels;
            for (const std::string& kid : children_of(t)) kid_labels.push_back(add_element(kid));
            out.kit.gamma[label] = std::move(kid_labels);
            if (t && t->k == Term::K::CableOf) {
                auto [base, bt] = res.canonical(t->a);
                (void)bt;
                out.witness_gamma[label] = base;
                out.cable_class[label] = {t->p, t->q};
            } else {
                // A composite element is the (1,0)-cable of its own tube.
                out.witness_gamma[label] = c;
                out.cable_class[label] = {1, 0};
            }
        }
        return label;
    }
};

const Term* event_term(const Engine& eng, const RHD& r, const std::string& k,
                       const HandleEvent** ev_out) {
    for (const auto& ev : r.events) {
        if (ev.id != k) continue;
        if (ev_out) *ev_out = &ev;
        switch (ev.kind) {
        case HandleEvent::Kind::Source: {
            auto it = eng.comp_term.find(k);
            return it == eng.comp_term.end() ? nullptr : &it->second;
        }
        case HandleEvent::Kind::Saddle: {
            auto it = eng.saddle_term.find(k);
            if (it == eng.saddle_term.end())
                throw InvalidDecomposition("saddle " + k + " has no recorded core");
            return &it->second;
        }
        case HandleEvent::Kind::Sink: {
            auto it = eng.sink_term.find(k);
            if (it == eng.sink_term.end())
                throw InvalidDecomposition("sink " + k + " filled nothing");
            return &it->second;
        }
        }
    }
    throw UnknownComponent("no critical knot named " + k);
}

} // namespace

ExtractionResult extract(const RHD& r, const std::string& k) {
    Engine eng = replay_checked(r);
    if (!eng.viol.empty())
        throw InvalidDecomposition("decomposition fails validation: " +
                                   std::string(to_string(eng.viol.front().kind)) +
                                   " " + eng.viol.front().detail);
    ExtractionResult out;
    Resolver res{eng, {}, {}};

    for (const auto& ev : r.events) {
        switch (ev.kind) {
        case HandleEvent::Kind::Source:
            out.knot_exprs[ev.id] = res.resolve_comp(ev.id);
            break;
        case HandleEvent::Kind::Saddle:
            out.knot_exprs[ev.id] = res.resolve_term(eng.saddle_term.at(ev.id));
            break;
        case HandleEvent::Kind::Sink:
            out.knot_exprs[ev.id] = res.resolve_term(eng.sink_term.at(ev.id));
            break;
        }
    }
    for (const std::string& c : eng.ever_components)
        out.component_cores[c] = res.resolve_comp(c);

    const HandleEvent* target_ev = nullptr;
    const Term* t = event_term(eng, r, k, &target_ev);
    KnotExpr e = t ? res.resolve_term(*t) : unknot();
    if (e.kind == KnotExpr::Kind::Unknot) return out;  // empty kit

    // Resolve the target's companion structure.
    Term local;
    if (t->k == Term::K::AliasOf) {
        auto [c, ct] = res.canonical(t->a);
        if (!ct) return out;  // alias of a ground unknot; unreachable for nontrivial e
        local = *ct;
        out.witness_gamma_target = (ct->k == Term::K::CableOf) ? res.canonical(ct->a).first : c;
    } else {
        local = *t;
        if (t->k == Term::K::CableOf) {
            out.witness_gamma_target = res.canonical(t->a).first;
        } else if (target_ev->kind == HandleEvent::Kind::Source) {
            out.witness_gamma_target = target_ev->id;  // its own tube
        }
    }
    KitAssembler asmblr{res, out, {}};
    for (const std::string& kid : asmblr.children_of(&local)) asmblr.add_element(kid);
    return out;
}

PairClassification classify_pair(const RHD& r, const std::string& k1, const std::string& k2) {
    Engine eng = replay_checked(r);
    if (!eng.viol.empty())
        throw InvalidDecomposition("decomposition fails validation");
    Resolver res{eng, {}, {}};

    auto pos_of = [&](const std::string& k) -> std::string {
        for (const auto& ev : r.events) {
            if (ev.id != k) continue;
            switch (ev.kind) {
            case HandleEvent::Kind::Source: return k;
            case HandleEvent::Kind::Saddle: {
                auto it = eng.saddle_pos.find(k);
                return it == eng.saddle_pos.end() ? k : it->second;
            }
            case HandleEvent::Kind::Sink: return k;
            }
        }
        throw UnknownComponent("no critical knot named " + k);
    };

    const Term* t1 = event_term(eng, r, k1, nullptr);
    const Term* t2 = event_term(eng, r, k2, nullptr);
    KnotExpr e1 = t1 ? res.resolve_term(*t1) : unknot();
    KnotExpr e2 = t2 ? res.resolve_term(*t2) : unknot();
    if (e1.kind != KnotExpr::Kind::Unknot || e2.kind != KnotExpr::Kind::Unknot)
        throw NotUnknots("classified knots must both be unknots");

    std::string p1 = pos_of(k1), p2 = pos_of(k2);
    auto degenerate = [](int p, int q) -> PairClassification {
        if (q == 0) return PairClassification{PairClass::SplitLink, 0, 0};
        if (q == 1 || q == -1) return PairClassification{PairClass::HopfLink, 0, 0};
        return PairClassification{PairClass::CableOfEachOther, p, q};
    };
    for (const CableEdge& e : eng.cable_edges) {
        if ((e.from == p1 && e.to == p2) || (e.from == p2 && e.to == p1))
            return degenerate(e.p, e.q);
    }
    for (const auto& [a, b] : eng.hopf_pairs) {
        if ((a == p1 && b == p2) || (a == p2 && b == p1))
            return PairClassification{PairClass::HopfLink, 0, 0};
    }
    return PairClassification{PairClass::SplitLink, 0, 0};
}

} // namespace gknot
