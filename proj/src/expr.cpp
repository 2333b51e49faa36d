#include "gknot/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <sstream>

namespace gknot {

bool KnotExpr::operator==(const KnotExpr& o) const {
    return kind == o.kind && p == o.p && q == o.q && kids == o.kids;
}

bool KnotExpr::operator<(const KnotExpr& o) const {
    return serialize(*this) < serialize(o);
}

KnotExpr unknot() { return KnotExpr{}; }

KnotExpr cable(int p, int q, KnotExpr companion) {
    KnotExpr e;
    e.kind = KnotExpr::Kind::Cable;
    e.p = p;
    e.q = q;
    e.kids.push_back(std::move(companion));
    return e;
}

KnotExpr sum(std::vector<KnotExpr> summands) {
    KnotExpr e;
    e.kind = KnotExpr::Kind::Sum;
    e.kids = std::move(summands);
    return e;
}

void check_structure(const KnotExpr& e) {
    switch (e.kind) {
    case KnotExpr::Kind::Unknot:
        return;
    case KnotExpr::Kind::Cable: {
        if (e.kids.size() != 1)
            throw MalformedExpression("cable node must have exactly one companion");
        int g = std::gcd(std::abs(e.p), std::abs(e.q));
        if (g != 1)
            throw MalformedExpression("cable class (" + std::to_string(e.p) + "," +
                                      std::to_string(e.q) + ") is not primitive");
        check_structure(e.kids[0]);
        return;
    }
    case KnotExpr::Kind::Sum:
        if (e.kids.size() < 2)
            throw MalformedExpression("sum node must have at least two summands");
        for (const auto& k : e.kids) check_structure(k);
        return;
    }
}

static void serialize_into(const KnotExpr& e, std::string& out) {
    switch (e.kind) {
    case KnotExpr::Kind::Unknot:
        out += 'U';
        return;
    case KnotExpr::Kind::Cable:
        out += "cable(";
        out += std::to_string(e.p);
        out += ',';
        out += std::to_string(e.q);
        out += ',';
        serialize_into(e.kids[0], out);
        out += ')';
        return;
    case KnotExpr::Kind::Sum:
        out += "sum(";
        for (size_t i = 0; i < e.kids.size(); ++i) {
            if (i) out += ',';
            serialize_into(e.kids[i], out);
        }
        out += ')';
        return;
    }
}

std::string serialize(const KnotExpr& e) {
    std::string out;
    serialize_into(e, out);
    return out;
}

namespace {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    KnotExpr run() {
        KnotExpr e = parse();
        skip_ws();
        if (pos_ != s_.size()) fail("end of input");
        check_structure(e);
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) {
        int line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') { ++line; col = 1; } else ++col;
        }
        throw ParseError(line, col, expected);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("'") + c + "'");
    }

    bool eat_word(const char* w) {
        skip_ws();
        size_t n = std::strlen(w);
        if (s_.compare(pos_, n, w) == 0) { pos_ += n; return true; }
        return false;
    }

    int parse_int() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
        size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) { pos_ = start; fail("integer"); }
        return std::stoi(s_.substr(start, pos_ - start));
    }

    KnotExpr parse() {
        skip_ws();
        if (eat_word("U")) return unknot();
        if (eat_word("cable")) {
            expect('(');
            int p = parse_int();
            expect(',');
            int q = parse_int();
            expect(',');
            KnotExpr c = parse();
            expect(')');
            return cable(p, q, std::move(c));
        }
        if (eat_word("sum")) {
            expect('(');
            std::vector<KnotExpr> kids;
            kids.push_back(parse());
            expect(',');
            kids.push_back(parse());
            while (eat(',')) kids.push_back(parse());
            expect(')');
            return sum(std::move(kids));
        }
        fail("'U', 'cable' or 'sum'");
    }
};

} // namespace

KnotExpr parse_expr(const std::string& text) {
    return ExprParser(text).run();
}

static KnotExpr norm(const KnotExpr& e) {
    switch (e.kind) {
    case KnotExpr::Kind::Unknot:
        return e;
    case KnotExpr::Kind::Cable: {
        KnotExpr c = norm(e.kids[0]);
        int p = e.p, q = e.q;
        if (p < 0) { p = -p; q = -q; }
        if (p == 0) return unknot();            // meridian
        if (p == 1) return c;                   // (1,q)-cable is isotopic to the companion
        if (c.kind == KnotExpr::Kind::Unknot && std::abs(q) <= 1)
            return unknot();                    // trivial torus knot
        return cable(p, q, std::move(c));
    }
    case KnotExpr::Kind::Sum: {
        std::vector<KnotExpr> parts;
        for (const auto& k : e.kids) {
            KnotExpr n = norm(k);
            if (n.kind == KnotExpr::Kind::Sum) {
                for (auto& g : n.kids) parts.push_back(std::move(g));
            } else if (n.kind != KnotExpr::Kind::Unknot) {
                parts.push_back(std::move(n));
            }
        }
        if (parts.empty()) return unknot();
        if (parts.size() == 1) return parts[0];
        std::sort(parts.begin(), parts.end());
        return sum(std::move(parts));
    }
    }
    return unknot();
}

KnotExpr normalize(const KnotExpr& e) {
    check_structure(e);
    return norm(e);
}

bool equal_normalized(const KnotExpr& a, const KnotExpr& b) {
    return normalize(a) == normalize(b);
}

bool is_unknot(const KnotExpr& e) {
    return normalize(e).kind == KnotExpr::Kind::Unknot;
}

static int level_canonical(const KnotExpr& e) {
    switch (e.kind) {
    case KnotExpr::Kind::Unknot:
        return 0;
    case KnotExpr::Kind::Cable: {
        const KnotExpr& c = e.kids[0];
        if (c.kind == KnotExpr::Kind::Sum) {
            int m = 0;
            for (const auto& k : c.kids) m = std::max(m, level_canonical(k));
            return 1 + m;
        }
        return 1 + level_canonical(c);
    }
    case KnotExpr::Kind::Sum: {
        int m = 0;
        for (const auto& k : e.kids) m = std::max(m, level_canonical(k));
        return 1 + m;
    }
    }
    return 0;
}

int level(const KnotExpr& e) {
    return level_canonical(normalize(e));
}

// ---- single-step rewriting ----

static const KnotExpr& at_path(const KnotExpr& e, const std::vector<int>& path) {
    const KnotExpr* n = &e;
    for (int i : path) n = &n->kids.at(static_cast<size_t>(i));
    return *n;
}

static void collect_redexes(const KnotExpr& e, std::vector<int>& path, std::vector<Redex>& out) {
    if (e.kind == KnotExpr::Kind::Cable) {
        if (e.p < 0) out.push_back({RewriteRule::SignCanonical, path, 0});
        if (e.p == 1 || e.p == -1) out.push_back({RewriteRule::CollapseUnit, path, 0});
        if (e.p == 0) out.push_back({RewriteRule::Meridian, path, 0});
        if (e.p >= 2 && e.kids[0].kind == KnotExpr::Kind::Unknot && std::abs(e.q) <= 1)
            out.push_back({RewriteRule::TrivialTorus, path, 0});
    } else if (e.kind == KnotExpr::Kind::Sum) {
        for (size_t i = 0; i < e.kids.size(); ++i) {
            if (e.kids[i].kind == KnotExpr::Kind::Unknot)
                out.push_back({RewriteRule::DropUnknot, path, static_cast<int>(i)});
            if (e.kids[i].kind == KnotExpr::Kind::Sum)
                out.push_back({RewriteRule::FlattenSum, path, static_cast<int>(i)});
        }
        if (e.kids.size() <= 1) out.push_back({RewriteRule::SingletonSum, path, 0});
        if (!std::is_sorted(e.kids.begin(), e.kids.end()))
            out.push_back({RewriteRule::SortSum, path, 0});
    }
    for (size_t i = 0; i < e.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect_redexes(e.kids[i], path, out);
        path.pop_back();
    }
}

std::vector<Redex> find_redexes(const KnotExpr& e) {
    std::vector<Redex> out;
    std::vector<int> path;
    collect_redexes(e, path, out);
    return out;
}

static KnotExpr apply_at(const KnotExpr& node, const Redex& r) {
    KnotExpr e = node;
    switch (r.rule) {
    case RewriteRule::SignCanonical:
        e.p = -e.p;
        e.q = -e.q;
        return e;
    case RewriteRule::CollapseUnit:
        return e.kids[0];
    case RewriteRule::Meridian:
        return unknot();
    case RewriteRule::TrivialTorus:
        return unknot();
    case RewriteRule::DropUnknot:
        e.kids.erase(e.kids.begin() + r.arg);
        if (e.kids.empty()) return unknot();
        if (e.kids.size() == 1) return e.kids[0];
        return e;
    case RewriteRule::FlattenSum: {
        KnotExpr inner = e.kids[static_cast<size_t>(r.arg)];
        e.kids.erase(e.kids.begin() + r.arg);
        e.kids.insert(e.kids.begin() + r.arg, inner.kids.begin(), inner.kids.end());
        return e;
    }
    case RewriteRule::SingletonSum:
        if (e.kids.empty()) return unknot();
        return e.kids[0];
    case RewriteRule::SortSum:
        std::sort(e.kids.begin(), e.kids.end());
        return e;
    }
    return e;
}

static KnotExpr rebuild(const KnotExpr& e, const std::vector<int>& path, size_t depth, const Redex& r) {
    if (depth == path.size()) return apply_at(e, r);
    KnotExpr out = e;
    size_t i = static_cast<size_t>(path[depth]);
    out.kids[i] = rebuild(e.kids[i], path, depth + 1, r);
    return out;
}

KnotExpr apply_redex(const KnotExpr& e, const Redex& r) {
    (void)at_path(e, r.path);  // bounds check
    return rebuild(e, r.path, 0, r);
}

// ---- graph kits ----

namespace {

struct KitBuilder {
    GraphKit kit;
    int counter = 0;

    std::string fresh() { return "k" + std::to_string(++counter); }

    // Immediate companion multiset of a canonical expression: the summands
    // of the companion for a cable-of-sum, the single companion otherwise.
    static std::vector<const KnotExpr*> tops(const KnotExpr& e) {
        std::vector<const KnotExpr*> out;
        if (e.kind == KnotExpr::Kind::Cable) {
            const KnotExpr& c = e.kids[0];
            if (c.kind == KnotExpr::Kind::Sum) {
                for (const auto& k : c.kids) out.push_back(&k);
            } else {
                out.push_back(&c);
            }
        } else if (e.kind == KnotExpr::Kind::Sum) {
            for (const auto& k : e.kids) out.push_back(&k);
        }
        return out;
    }

    std::string add(const KnotExpr& e) {
        std::string label = fresh();
        kit.elements[label] = e;
        if (e.kind != KnotExpr::Kind::Unknot) {
            std::vector<std::string> children;
            for (const KnotExpr* t : tops(e)) children.push_back(add(*t));
            kit.gamma[label] = std::move(children);
        }
        return label;
    }
};

} // namespace

GraphKit kit_of(const KnotExpr& e) {
    KnotExpr n = normalize(e);
    KitBuilder b;
    if (n.kind == KnotExpr::Kind::Unknot) return b.kit;
    for (const KnotExpr* t : KitBuilder::tops(n)) b.add(*t);
    return b.kit;
}

std::vector<std::string> kit_top_labels(const GraphKit& kit) {
    std::map<std::string, bool> below;
    for (const auto& [label, kids] : kit.gamma)
        for (const auto& k : kids) below[k] = true;
    std::vector<std::string> out;
    for (const auto& [label, e] : kit.elements)
        if (!below.count(label)) out.push_back(label);
    return out;
}

} // namespace gknot
