#pragma once

#include <cstdint>
#include <mpfr.h>

namespace hardylab {

/// Arbitrary-precision binary float backed by MPFR, round-to-nearest.
///
/// Each value carries its own precision in bits. In-place kernels
/// (`r.add(a, b)` meaning r = a + b) round into the precision of the
/// target and never allocate; the operator overloads allocate a result
/// at the wider of the operand precisions and are meant for tests and
/// cold paths.
class BigFloat {
public:
    static constexpr unsigned kMinBits = 64;
    static constexpr unsigned kMaxBits = 65536;

    explicit BigFloat(unsigned bits = 256);
    BigFloat(double value, unsigned bits);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }

    BigFloat& set(double v) { mpfr_set_d(value_, v, MPFR_RNDN); return *this; }
    BigFloat& set(const BigFloat& v) { mpfr_set(value_, v.value_, MPFR_RNDN); return *this; }
    BigFloat& set_integer(std::uint64_t v) { mpfr_set_uj(value_, v, MPFR_RNDN); return *this; }
    BigFloat& set_zero() { mpfr_set_zero(value_, 1); return *this; }

    BigFloat& add(const BigFloat& a, const BigFloat& b) { mpfr_add(value_, a.value_, b.value_, MPFR_RNDN); return *this; }
    BigFloat& add(const BigFloat& a, double b) { mpfr_add_d(value_, a.value_, b, MPFR_RNDN); return *this; }
    BigFloat& sub(const BigFloat& a, const BigFloat& b) { mpfr_sub(value_, a.value_, b.value_, MPFR_RNDN); return *this; }
    BigFloat& sub(double a, const BigFloat& b) { mpfr_d_sub(value_, a, b.value_, MPFR_RNDN); return *this; }
    BigFloat& mul(const BigFloat& a, const BigFloat& b) { mpfr_mul(value_, a.value_, b.value_, MPFR_RNDN); return *this; }
    BigFloat& mul(const BigFloat& a, double b) { mpfr_mul_d(value_, a.value_, b, MPFR_RNDN); return *this; }
    BigFloat& div(const BigFloat& a, const BigFloat& b) { mpfr_div(value_, a.value_, b.value_, MPFR_RNDN); return *this; }
    BigFloat& div(double a, const BigFloat& b) { mpfr_d_div(value_, a, b.value_, MPFR_RNDN); return *this; }
    BigFloat& neg(const BigFloat& a) { mpfr_neg(value_, a.value_, MPFR_RNDN); return *this; }
    BigFloat& abs_of(const BigFloat& a) { mpfr_abs(value_, a.value_, MPFR_RNDN); return *this; }
    BigFloat& sqrt_of(const BigFloat& a) { mpfr_sqrt(value_, a.value_, MPFR_RNDN); return *this; }
    BigFloat& sqrt_of_integer(std::uint64_t n) { mpfr_set_uj(value_, n, MPFR_RNDN); mpfr_sqrt(value_, value_, MPFR_RNDN); return *this; }
    BigFloat& log_of(const BigFloat& a) { mpfr_log(value_, a.value_, MPFR_RNDN); return *this; }
    BigFloat& log1p_of(const BigFloat& a) { mpfr_log1p(value_, a.value_, MPFR_RNDN); return *this; }

    /// Accumulation shorthands (this ±= x).
    BigFloat& operator+=(const BigFloat& x) { return add(*this, x); }
    BigFloat& operator+=(double x) { return add(*this, x); }
    BigFloat& operator-=(const BigFloat& x) { return sub(*this, x); }

    int compare(const BigFloat& other) const { return mpfr_cmp(value_, other.value_); }
    int compare(double other) const { return mpfr_cmp_d(value_, other); }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.compare(b) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.compare(b) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return a.compare(b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return a.compare(b) == 0; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat sqrt(const BigFloat& a);
    friend BigFloat log(const BigFloat& a);
    friend BigFloat log1p(const BigFloat& a);
    friend BigFloat abs(const BigFloat& a);

    mpfr_ptr raw() { return value_; }
    mpfr_srcptr raw() const { return value_; }

private:
    mpfr_t value_;
};

} // namespace hardylab
