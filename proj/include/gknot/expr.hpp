#ifndef GKNOT_EXPR_HPP
#define GKNOT_EXPR_HPP

#include <map>
#include <string>
#include <vector>

#include "gknot/errors.hpp"

namespace gknot {

// Knot expression tree over the cable / connected-sum calculus.
//   Unknot            -- the trivial knot
//   Cable(p, q, K)    -- curve of class p*longitude + q*meridian on the tube of K
//   Sum(K1, ..., Km)  -- unordered connected sum, m >= 2
//
// Canonical form (produced by normalize):
//   * every Cable has p >= 2 and gcd(p, |q|) = 1,
//   * Cable(p, q, Unknot) has |q| >= 2,
//   * Sum has >= 2 summands, none Unknot, none Sum, sorted by serialization.
struct KnotExpr {
    enum class Kind { Unknot, Cable, Sum };
    Kind kind = Kind::Unknot;
    int p = 0, q = 0;             // Cable only
    std::vector<KnotExpr> kids;   // Cable: exactly one; Sum: >= 2

    bool operator==(const KnotExpr& o) const;
    bool operator!=(const KnotExpr& o) const { return !(*this == o); }
    bool operator<(const KnotExpr& o) const;
};

KnotExpr unknot();
KnotExpr cable(int p, int q, KnotExpr companion);
KnotExpr sum(std::vector<KnotExpr> summands);

// Throws MalformedExpression on a non-primitive cable class or a Sum of
// fewer than two summands, anywhere in the tree.
void check_structure(const KnotExpr& e);

// Text grammar:  expr := "U" | "cable(" int "," int "," expr ")"
//                       | "sum(" expr ("," expr)+ ")"
// Whitespace is ignored on input; serialization emits none.
std::string serialize(const KnotExpr& e);
KnotExpr parse_expr(const std::string& text);

KnotExpr normalize(const KnotExpr& e);
bool equal_normalized(const KnotExpr& a, const KnotExpr& b);
bool is_unknot(const KnotExpr& e);

// Level of e in the cable-sum hierarchy: unknot is 0, torus knots are 1,
// a cable or sum sits one above the deepest constituent.
int level(const KnotExpr& e);

// Single-step rewrite machinery.  A redex is a (rule, path) pair; applying
// rules at arbitrary redexes until none remain reaches the canonical form
// regardless of order.  Used by confluence and soundness tests.
enum class RewriteRule {
    SignCanonical,   // Cable(p<0, q, K)      -> Cable(-p, -q, K)
    CollapseUnit,    // Cable(+-1, q, K)      -> K
    Meridian,        // Cable(0, +-1, K)      -> Unknot
    TrivialTorus,    // Cable(p, q, U), |q|<=1 -> Unknot   (p >= 2)
    DropUnknot,      // Sum(..., U, ...)      -> Sum without that U
    FlattenSum,      // Sum(..., Sum(xs), ...) -> spliced
    SingletonSum,    // Sum(x)                -> x   (also empty Sum -> U)
    SortSum          // unsorted Sum          -> sorted Sum
};

struct Redex {
    RewriteRule rule;
    std::vector<int> path;  // child indices from the root
    int arg = 0;            // summand index for DropUnknot / FlattenSum
};

std::vector<Redex> find_redexes(const KnotExpr& e);
KnotExpr apply_redex(const KnotExpr& e, const Redex& r);

// Graph kit: the labelled multiset of companion knots unrolled from an
// expression, with gamma mapping each nontrivial element to the labels of
// its immediate summands.  Distinct labels may carry isotopic expressions.
struct GraphKit {
    std::map<std::string, KnotExpr> elements;
    std::map<std::string, std::vector<std::string>> gamma;
};

GraphKit kit_of(const KnotExpr& e);

// Labels of kit elements that are not below any other element (the
// immediate companions of the expression the kit was unrolled from).
std::vector<std::string> kit_top_labels(const GraphKit& kit);

} // namespace gknot

#endif
