#ifndef GKNOT_LAURENT_HPP
#define GKNOT_LAURENT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gknot {

// Integer Laurent polynomial.  Stored as a coefficient run starting at
// exponent `offset`; the first and last stored coefficients are nonzero
// unless the polynomial is zero (empty run, offset 0).
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(std::vector<std::int64_t> coeffs, int offset);

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return monomial(1, 0); }
    static LaurentPoly monomial(std::int64_t c, int exponent);

    bool is_zero() const { return coeffs_.empty(); }
    int lowest_exponent() const { return offset_; }
    int highest_exponent() const { return offset_ + static_cast<int>(coeffs_.size()) - 1; }
    // Width of the exponent range (degree span); 0 for constants and zero.
    int span() const { return is_zero() ? 0 : static_cast<int>(coeffs_.size()) - 1; }

    std::int64_t coeff(int exponent) const;
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    int offset() const { return offset_; }

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly& o) const {
        return offset_ == offset_trim(o) && coeffs_ == o.coeffs_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // t -> t^k for k >= 1.
    LaurentPoly substitute_power(int k) const;

    // Exact division; throws DivisionRemainder if the remainder is nonzero.
    LaurentPoly divide_exact(const LaurentPoly& divisor) const;

    std::int64_t evaluate(std::int64_t t) const;

    // Representative modulo +-t^k: lowest exponent 0, positive leading
    // (highest-degree) coefficient.
    LaurentPoly canonical() const;

    // "c0 + c1*t + c2*t^2 + ..." with zero terms omitted; "0" for zero.
    std::string to_string() const;

private:
    std::vector<std::int64_t> coeffs_;
    int offset_ = 0;

    void trim();
    static int offset_trim(const LaurentPoly& p) { return p.offset_; }
};

} // namespace gknot

#endif
