#include "gknot/laurent.hpp"

#include <cassert>

#include "gknot/errors.hpp"

namespace gknot {

LaurentPoly::LaurentPoly(std::vector<std::int64_t> coeffs, int offset)
    : coeffs_(std::move(coeffs)), offset_(offset) {
    trim();
}

LaurentPoly LaurentPoly::monomial(std::int64_t c, int exponent) {
    if (c == 0) return LaurentPoly();
    return LaurentPoly({c}, exponent);
}

void LaurentPoly::trim() {
    size_t lo = 0;
    while (lo < coeffs_.size() && coeffs_[lo] == 0) ++lo;
    if (lo == coeffs_.size()) {
        coeffs_.clear();
        offset_ = 0;
        return;
    }
    size_t hi = coeffs_.size();
    while (hi > lo && coeffs_[hi - 1] == 0) --hi;
    coeffs_ = std::vector<std::int64_t>(coeffs_.begin() + static_cast<long>(lo),
                                        coeffs_.begin() + static_cast<long>(hi));
    offset_ += static_cast<int>(lo);
}

std::int64_t LaurentPoly::coeff(int exponent) const {
    int i = exponent - offset_;
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<size_t>(i)];
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int lo = std::min(offset_, o.offset_);
    int hi = std::max(highest_exponent(), o.highest_exponent());
    std::vector<std::int64_t> out(static_cast<size_t>(hi - lo + 1), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        out[static_cast<size_t>(offset_ - lo) + i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i)
        out[static_cast<size_t>(o.offset_ - lo) + i] += o.coeffs_[i];
    return LaurentPoly(std::move(out), lo);
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly neg = o;
    for (auto& c : neg.coeffs_) c = -c;
    return *this + neg;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (is_zero() || o.is_zero()) return LaurentPoly();
    std::vector<std::int64_t> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return LaurentPoly(std::move(out), offset_ + o.offset_);
}

LaurentPoly LaurentPoly::substitute_power(int k) const {
    assert(k >= 1);
    if (is_zero() || k == 1) return *this;
    std::vector<std::int64_t> out(static_cast<size_t>((coeffs_.size() - 1) * static_cast<size_t>(k) + 1), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        out[i * static_cast<size_t>(k)] = coeffs_[i];
    return LaurentPoly(std::move(out), offset_ * k);
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& divisor) const {
    if (divisor.is_zero()) throw DivisionRemainder("division by zero polynomial");
    if (is_zero()) return LaurentPoly();
    std::vector<std::int64_t> rem = coeffs_;
    const std::vector<std::int64_t>& d = divisor.coeffs_;
    if (rem.size() < d.size()) throw DivisionRemainder("degree of dividend below divisor");
    std::vector<std::int64_t> quot(rem.size() - d.size() + 1, 0);
    std::int64_t lead = d.back();
    for (size_t i = quot.size(); i-- > 0;) {
        std::int64_t top = rem[i + d.size() - 1];
        if (top % lead != 0) throw DivisionRemainder("non-integral quotient coefficient");
        std::int64_t f = top / lead;
        quot[i] = f;
        if (f == 0) continue;
        for (size_t j = 0; j < d.size(); ++j) rem[i + j] -= f * d[j];
    }
    for (std::int64_t c : rem)
        if (c != 0) throw DivisionRemainder("nonzero remainder in exact division");
    return LaurentPoly(std::move(quot), offset_ - divisor.offset_);
}

std::int64_t LaurentPoly::evaluate(std::int64_t t) const {
    // Only meaningful for offset >= 0 callers; tests use it on canonical reps.
    std::int64_t acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    for (int k = 0; k < offset_; ++k) acc *= t;
    return acc;
}

LaurentPoly LaurentPoly::canonical() const {
    if (is_zero()) return LaurentPoly();
    LaurentPoly out = *this;
    out.offset_ = 0;
    if (out.coeffs_.back() < 0)
        for (auto& c : out.coeffs_) c = -c;
    return out;
}

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) out += " + ";
        first = false;
        int e = offset_ + static_cast<int>(i);
        if (e == 0) {
            out += std::to_string(coeffs_[i]);
        } else {
            out += std::to_string(coeffs_[i]);
            out += "*t";
            if (e != 1) {
                out += '^';
                out += std::to_string(e);
            }
        }
    }
    return out;
}

} // namespace gknot
