#ifndef GKNOT_ORACLE_HPP
#define GKNOT_ORACLE_HPP

#include <cstdint>
#include <functional>

#include "gknot/expr.hpp"
#include "gknot/laurent.hpp"
#include "gknot/rhd.hpp"

namespace gknot {

// Desk-scale enumeration bounds.  maxDepth caps the total event count of an
// enumerated decomposition (the tree height for random_expr shares the
// field name).  Defaults keep exhaustive runs in the seconds range.
struct EnumerationBudget {
    int max_saddles = 2;
    int coeff_bound = 3;
    int max_depth = 4;
    std::uint64_t seed = 0;
};

// Delta of the (p,q) torus knot by exact long division of
// (t^{pq} - 1)(t - 1) by (t^p - 1)(t^q - 1).  Requires p, q >= 2 coprime;
// throws NonCoprime otherwise, DivisionRemainder on an arithmetic bug.
LaurentPoly poly_div_torus(int p, int q);

// Deterministic seeded generator (splitmix64-driven).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    int range(int lo, int hi);  // inclusive
};

// Structurally valid pseudo-random expression of tree height exactly
// `depth` with 1 <= p <= bound, |q| <= bound on every cable.
KnotExpr random_expr(std::uint64_t seed, int depth, int coeff_bound);

// Every syntactically well-formed decomposition within the budget (phase
// ordering and declared references enforced; saddle circles attach to
// components live at the time), streamed in lexicographic order of the
// serialized event list.  Returns the number of decompositions visited;
// the callback may return false to stop early.
std::uint64_t enumerate_rhds(const EnumerationBudget& budget,
                             const std::function<bool(const RHD&)>& visit);

} // namespace gknot

#endif
