#ifndef GKNOT_INVARIANTS_HPP
#define GKNOT_INVARIANTS_HPP

#include "gknot/expr.hpp"
#include "gknot/laurent.hpp"

namespace gknot {

// Alexander polynomial of a graph-knot expression, canonical representative.
// Multiplicative under connected sum; Cable(p,q,K) contributes
// alexander(K)(t^p) * alexander(T(p,q))(t).
LaurentPoly alexander(const KnotExpr& e);

// Torus-knot polynomial computed from the numerical semigroup <p, q>:
//   (1 - t) * sum_{s in S, s <= F} t^s + t^(F+1),  F = pq - p - q.
// Deliberately a different route than the oracle's long-division formula.
LaurentPoly torus_alexander(int p, int q);

// Seifert genus: additive under sum; p * g(K) + (p-1)(|q|-1)/2 for a cable.
long long genus(const KnotExpr& e);

} // namespace gknot

#endif
