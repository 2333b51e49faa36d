#include "gknot/rhd.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "gknot/errors.hpp"

namespace gknot {

CurveClass CurveClass::Class(int p, int q) {
    if (std::gcd(std::abs(p), std::abs(q)) != 1)
        throw NonPrimitiveClass("curve class (" + std::to_string(p) + "," +
                                std::to_string(q) + ") is not primitive");
    if (p < 0 || (p == 0 && q < 0)) { p = -p; q = -q; }
    return CurveClass{false, p, q};
}

std::string CurveClass::to_string() const {
    if (disk) return "disk";
    if (p == 0) return "m";
    if (p == 1) return "l" + std::to_string(q);
    return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

std::optional<char> RegionTag::side_of(const std::string& id) const {
    for (const auto& [eid, side] : sides)
        if (eid == id) return side;
    return std::nullopt;
}

HandleEvent HandleEvent::source(std::string id, Placement pl) {
    HandleEvent e;
    e.kind = Kind::Source;
    e.id = std::move(id);
    e.placement = std::move(pl);
    return e;
}

HandleEvent HandleEvent::saddle(std::string id, AttachCircle a, AttachCircle b, RegionTag tag) {
    HandleEvent e;
    e.kind = Kind::Saddle;
    e.id = std::move(id);
    e.c1 = std::move(a);
    e.c2 = std::move(b);
    e.region = std::move(tag);
    return e;
}

HandleEvent HandleEvent::sink(std::string id, std::string target) {
    HandleEvent e;
    e.kind = Kind::Sink;
    e.id = std::move(id);
    e.target = std::move(target);
    return e;
}

std::string side_id(const std::string& saddle_id, char side) {
    return saddle_id + "." + side;
}

std::string merge_id(const std::string& saddle_id) {
    return saddle_id + ".M";
}

const char* to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::OrderingViolation: return "OrderingViolation";
    case ViolationKind::SphereProduced: return "SphereProduced";
    case ViolationKind::GenusExceeded: return "GenusExceeded";
    case ViolationKind::DanglingComponent: return "DanglingComponent";
    case ViolationKind::UnknownComponent: return "UnknownComponent";
    case ViolationKind::DeadComponent: return "DeadComponent";
    case ViolationKind::IncompatibleAttachment: return "IncompatibleAttachment";
    }
    return "?";
}

std::string PairClassification::to_string() const {
    switch (kind) {
    case PairClass::SplitLink: return "SplitLink";
    case PairClass::HopfLink: return "HopfLink";
    case PairClass::CableOfEachOther:
        return "CableOfEachOther(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
    return "?";
}

std::string serialize_rhd(const RHD& r) {
    std::string out;
    for (const auto& ev : r.events) {
        switch (ev.kind) {
        case HandleEvent::Kind::Source:
            out += "source " + ev.id + " ";
            switch (ev.placement.kind) {
            case PlacementKind::SplitBall: out += "split"; break;
            case PlacementKind::HopfDual: out += "hopf " + ev.placement.ref; break;
            case PlacementKind::InsideTube: out += "tube " + ev.placement.ref; break;
            }
            break;
        case HandleEvent::Kind::Saddle:
            out += "saddle " + ev.id + " " + ev.c1.comp + ":" + ev.c1.cls.to_string() +
                   " " + ev.c2.comp + ":" + ev.c2.cls.to_string();
            if (ev.region.present) {
                out += " region";
                for (const auto& [eid, side] : ev.region.sides)
                    out += " " + eid + "=" + side;
            }
            break;
        case HandleEvent::Kind::Sink:
            out += "sink " + ev.id + " " + ev.target;
            break;
        }
        out += '\n';
    }
    return out;
}

namespace {

bool valid_id(const std::string& s, bool allow_dot) {
    if (s.empty()) return false;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') continue;
        if (c == '.' && allow_dot) continue;
        return false;
    }
    return true;
}

struct LineParser {
    int line_no;
    std::vector<std::string> tokens;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(line_no, static_cast<int>(pos) + 1, expected);
    }

    bool done() const { return pos >= tokens.size(); }

    const std::string& next(const std::string& expected) {
        if (done()) fail(expected);
        return tokens[pos++];
    }
};

int parse_int_token(LineParser& lp, const std::string& s, const std::string& what) {
    size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    if (i >= s.size()) lp.fail(what);
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) lp.fail(what);
    return std::stoi(s);
}

CurveClass parse_class(LineParser& lp, const std::string& s) {
    if (s == "disk") return CurveClass::Disk();
    if (s == "m") return CurveClass::Class(0, 1);
    if (s.size() > 1 && s[0] == 'l')
        return CurveClass::Class(1, parse_int_token(lp, s.substr(1), "longitude coefficient"));
    if (s.size() >= 5 && s.front() == '(' && s.back() == ')') {
        size_t comma = s.find(',');
        if (comma == std::string::npos) lp.fail("'(p,q)' curve class");
        int p = parse_int_token(lp, s.substr(1, comma - 1), "integer");
        int q = parse_int_token(lp, s.substr(comma + 1, s.size() - comma - 2), "integer");
        return CurveClass::Class(p, q);
    }
    lp.fail("curve class 'disk', 'm', 'l<q>' or '(<p>,<q>)'");
}

AttachCircle parse_circle(LineParser& lp, const std::string& s) {
    size_t colon = s.rfind(':');
    if (colon == std::string::npos) lp.fail("'<comp>:<class>' attach circle");
    std::string comp = s.substr(0, colon);
    if (!valid_id(comp, true)) lp.fail("component id");
    return AttachCircle{comp, parse_class(lp, s.substr(colon + 1))};
}

} // namespace

RHD parse_rhd(const std::string& text) {
    RHD r;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        LineParser lp{line_no, {}, 0};
        std::istringstream ls(raw);
        std::string tok;
        while (ls >> tok) lp.tokens.push_back(tok);
        if (lp.tokens.empty()) continue;

        const std::string& kw = lp.next("event keyword");
        if (kw == "source") {
            const std::string& id = lp.next("source id");
            if (!valid_id(id, false)) lp.fail("source id");
            const std::string& pl = lp.next("'split', 'hopf' or 'tube'");
            Placement placement;
            if (pl == "split") {
                placement = Placement::Split();
            } else if (pl == "hopf") {
                const std::string& ref = lp.next("source id");
                if (!valid_id(ref, true)) lp.fail("source id");
                placement = Placement::Hopf(ref);
            } else if (pl == "tube") {
                const std::string& ref = lp.next("component id");
                if (!valid_id(ref, true)) lp.fail("component id");
                placement = Placement::Tube(ref);
            } else {
                lp.fail("'split', 'hopf' or 'tube'");
            }
            if (!lp.done()) lp.fail("end of line");
            r.events.push_back(HandleEvent::source(id, placement));
        } else if (kw == "saddle") {
            const std::string& id = lp.next("saddle id");
            if (!valid_id(id, false)) lp.fail("saddle id");
            AttachCircle a = parse_circle(lp, lp.next("attach circle"));
            AttachCircle b = parse_circle(lp, lp.next("attach circle"));
            RegionTag tag;
            if (!lp.done()) {
                const std::string& kw2 = lp.next("'region'");
                if (kw2 != "region") lp.fail("'region'");
                tag.present = true;
                while (!lp.done()) {
                    const std::string& entry = lp.next("'<id>=A|B'");
                    size_t eq = entry.rfind('=');
                    if (eq == std::string::npos || eq + 2 != entry.size() ||
                        (entry[eq + 1] != 'A' && entry[eq + 1] != 'B'))
                        lp.fail("'<id>=A|B'");
                    std::string eid = entry.substr(0, eq);
                    if (!valid_id(eid, true)) lp.fail("event id");
                    tag.sides.emplace_back(eid, entry[eq + 1]);
                }
            }
            r.events.push_back(HandleEvent::saddle(id, a, b, tag));
        } else if (kw == "sink") {
            const std::string& id = lp.next("sink id");
            if (!valid_id(id, false)) lp.fail("sink id");
            const std::string& target = lp.next("component id");
            if (!valid_id(target, true)) lp.fail("component id");
            if (!lp.done()) lp.fail("end of line");
            r.events.push_back(HandleEvent::sink(id, target));
        } else {
            lp.fail("'source', 'saddle' or 'sink'");
        }
    }
    return r;
}

} // namespace gknot
