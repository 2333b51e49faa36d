#ifndef GKNOT_RHD_HPP
#define GKNOT_RHD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gknot/expr.hpp"

namespace gknot {

// Curve class on a level torus, in the longitude/meridian basis of the
// solid torus it bounds.  Disk marks a circle bounding a disk in the
// surface itself.  Essential classes are kept sign-canonical: p > 0, or
// (0, 1) for the meridian.
struct CurveClass {
    bool disk = false;
    int p = 0, q = 0;

    static CurveClass Disk() { return CurveClass{true, 0, 0}; }
    static CurveClass Class(int p, int q);  // throws NonPrimitiveClass

    bool is_meridian() const { return !disk && p == 0; }
    bool is_longitude() const { return !disk && (p == 1 || p == -1); }

    bool operator==(const CurveClass& o) const {
        return disk == o.disk && p == o.p && q == o.q;
    }
    std::string to_string() const;  // disk | m | l<q> | (<p>,<q>)
};

struct AttachCircle {
    std::string comp;
    CurveClass cls;
};

enum class PlacementKind { SplitBall, HopfDual, InsideTube };

struct Placement {
    PlacementKind kind = PlacementKind::SplitBall;
    std::string ref;  // source id for HopfDual, component id for InsideTube

    static Placement Split() { return Placement{PlacementKind::SplitBall, ""}; }
    static Placement Hopf(std::string id) { return Placement{PlacementKind::HopfDual, std::move(id)}; }
    static Placement Tube(std::string id) { return Placement{PlacementKind::InsideTube, std::move(id)}; }
};

// Split-region annotation on a saddle: which events live on which side of
// the splitting surface.  Presence of the annotation on a disk/disk saddle
// marks the two disks as nested (side A is the enclosed region); without it
// disjoint disks are meant and the surgery produces a sphere.
struct RegionTag {
    bool present = false;
    std::vector<std::pair<std::string, char>> sides;  // event id -> 'A' | 'B'

    std::optional<char> side_of(const std::string& id) const;
};

struct HandleEvent {
    enum class Kind { Source, Saddle, Sink };
    Kind kind = Kind::Source;
    std::string id;
    Placement placement;    // Source
    AttachCircle c1, c2;    // Saddle
    RegionTag region;       // Saddle
    std::string target;     // Sink

    static HandleEvent source(std::string id, Placement pl);
    static HandleEvent saddle(std::string id, AttachCircle a, AttachCircle b, RegionTag tag = {});
    static HandleEvent sink(std::string id, std::string target);
};

struct RHD {
    std::vector<HandleEvent> events;
};

// Line-based file format, one event per line, '#' comments:
//   source <id> split | source <id> hopf <id> | source <id> tube <id>
//   saddle <id> <comp>:<class> <comp>:<class> [region <id>=A|B ...]
//   sink <id> <comp>
// with <class> one of: disk | m | l<q> | (<p>,<q>).
std::string serialize_rhd(const RHD& r);
RHD parse_rhd(const std::string& text);

// ---- validation ----

enum class ViolationKind {
    OrderingViolation,
    SphereProduced,
    GenusExceeded,
    DanglingComponent,
    UnknownComponent,
    DeadComponent,
    IncompatibleAttachment,
};

const char* to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    int event_index;  // -1 for end-of-replay checks
    std::string detail;
};

// Replays the event list through the surgery bookkeeping.  Empty result
// means the decomposition closes S^3 with every regular level a union of
// genus-one tori.
std::vector<Violation> validate(const RHD& r);

// ---- level-surface state ----

struct LevelComponent {
    int genus = 1;
    std::optional<KnotExpr> core;   // filled-side core once known
    std::string region;             // unfilled region this torus faces
    Placement origin;               // lineage of the creating source
    bool sfs_filled = false;        // Hopf/torus-knot merge: only a sink may follow
    std::string cap_saddle;         // saddle owning the cap core, when special
};

struct LevelState {
    std::map<std::string, LevelComponent> components;

    enum class RegionKind { Ambient, SumSide, ThinSide, TrivialSide };
    struct Region {
        RegionKind kind = RegionKind::Ambient;
        std::string owner_saddle;
    };
    std::map<std::string, Region> regions;

    static LevelState initial();
    int live_in_region(const std::string& region) const;
};

// Single surgery step.  Throws DeadComponent when an attach circle names a
// missing or filled component; structural problems (spheres, slope
// mismatches, region mismatches) are reported as violations.
struct SurgeryOutcome {
    LevelState state;
    std::vector<Violation> violations;
};

SurgeryOutcome surger(const LevelState& state, const HandleEvent& saddle_event);

// Applies a source event to the state (tube creation); used by validate and
// by tests that build states by hand.
LevelState apply_source(const LevelState& state, const HandleEvent& source_event);

// One replay step of any event kind, reporting violations instead of
// throwing.  Incremental consumers (the enumerator) thread states through
// this; blocked sinks leave the state unchanged without a violation.
struct ReplayStep {
    LevelState state;
    std::vector<Violation> violations;
};
ReplayStep apply_event(const LevelState& state, const HandleEvent& ev);

// ---- construction (the cable / sum / unknot calculus) ----

struct BuiltRHD {
    RHD rhd;
    std::string root;  // distinguished source id
};

BuiltRHD build_unknot();

// Inserts a new lowest source inside j's tube and a new lowest saddle whose
// circles are (new tube, l0) and (j's tube, (p,q)).  Requires p >= 1 after
// sign canonicalization and gcd(|p|,|q|) = 1.
BuiltRHD build_cable(const RHD& base, const std::string& j, int p, int q);

// Merges two decompositions along a new lowest split-ball source V and a
// double-meridian saddle on V; the summand sources sa/sb are removed and
// references to them are rewired to the saddle's side components.
BuiltRHD build_sum(const RHD& a, const RHD& b, const std::string& sa, const std::string& sb);

// Composes the three builders along the canonical tree of e.
BuiltRHD build_expr(const KnotExpr& e);

// ---- extraction ----

struct ExtractionResult {
    std::map<std::string, KnotExpr> knot_exprs;        // critical knot id -> expr
    GraphKit kit;                                      // kit of the target knot
    std::map<std::string, std::string> witness_r;      // kit label -> component id
    std::map<std::string, std::string> witness_gamma;  // kit label -> component id
    std::string witness_gamma_target;                  // R_Gamma of the target ("" if trivial)
    std::map<std::string, KnotExpr> component_cores;   // component id -> resolved core
    std::map<std::string, std::pair<int, int>> cable_class;  // kit label -> (p,q) over witness_gamma
};

// Requires validate(r) to pass; k names any source, saddle or sink.
ExtractionResult extract(const RHD& r, const std::string& k);

enum class PairClass { SplitLink, HopfLink, CableOfEachOther };

struct PairClassification {
    PairClass kind;
    int p = 0, q = 0;  // CableOfEachOther only
    std::string to_string() const;
};

// Link type of two critical unknots, from placement lineage and the
// recorded cable relations.  Throws NotUnknots if either expression is
// nontrivial, InvalidDecomposition if validate fails.
PairClassification classify_pair(const RHD& r, const std::string& k1, const std::string& k2);

// Saddle side-component ids are derived, never written in files.
std::string side_id(const std::string& saddle_id, char side);   // "<id>.A" / "<id>.B"
std::string merge_id(const std::string& saddle_id);             // "<id>.M"

} // namespace gknot

#endif
