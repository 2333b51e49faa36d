#include "gknot/invariants.hpp"

#include <cassert>
#include <cstdlib>
#include <numeric>

namespace gknot {

LaurentPoly torus_alexander(int p, int q) {
    p = std::abs(p);
    q = std::abs(q);
    if (p <= 1 || q <= 1) return LaurentPoly::one();
    assert(std::gcd(p, q) == 1);
    int frob = p * q - p - q;
    std::vector<char> reach(static_cast<size_t>(frob) + 1, 0);
    reach[0] = 1;
    for (int k = 1; k <= frob; ++k)
        reach[static_cast<size_t>(k)] =
            (k >= p && reach[static_cast<size_t>(k - p)]) ||
            (k >= q && reach[static_cast<size_t>(k - q)]);
    LaurentPoly semi = LaurentPoly::zero();
    for (int k = 0; k <= frob; ++k)
        if (reach[static_cast<size_t>(k)])
            semi = semi + LaurentPoly::monomial(1, k);
    LaurentPoly one_minus_t = LaurentPoly::one() - LaurentPoly::monomial(1, 1);
    return (one_minus_t * semi + LaurentPoly::monomial(1, frob + 1)).canonical();
}

static LaurentPoly alex_canonical(const KnotExpr& e) {
    switch (e.kind) {
    case KnotExpr::Kind::Unknot:
        return LaurentPoly::one();
    case KnotExpr::Kind::Cable:
        return alex_canonical(e.kids[0]).substitute_power(e.p) * torus_alexander(e.p, e.q);
    case KnotExpr::Kind::Sum: {
        LaurentPoly acc = LaurentPoly::one();
        for (const auto& k : e.kids) acc = acc * alex_canonical(k);
        return acc;
    }
    }
    return LaurentPoly::one();
}

LaurentPoly alexander(const KnotExpr& e) {
    return alex_canonical(normalize(e)).canonical();
}

static long long genus_canonical(const KnotExpr& e) {
    switch (e.kind) {
    case KnotExpr::Kind::Unknot:
        return 0;
    case KnotExpr::Kind::Cable: {
        long long g = genus_canonical(e.kids[0]);
        long long p = e.p, aq = std::abs(e.q);
        return p * g + (p - 1) * (aq - 1) / 2;
    }
    case KnotExpr::Kind::Sum: {
        long long acc = 0;
        for (const auto& k : e.kids) acc += genus_canonical(k);
        return acc;
    }
    }
    return 0;
}

long long genus(const KnotExpr& e) {
    return genus_canonical(normalize(e));
}

} // namespace gknot
