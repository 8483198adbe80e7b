#include "hardylab/bigfloat.hpp"

#include <algorithm>

namespace hardylab {

BigFloat::BigFloat(unsigned bits) {
    mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, unsigned bits) {
    mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    if (this != &other) mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() {
    mpfr_clear(value_);
}

namespace {
unsigned wider(const BigFloat& a, const BigFloat& b) {
    return std::max(a.bits(), b.bits());
}
} // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(wider(a, b));
    r.add(a, b);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(wider(a, b));
    r.sub(a, b);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(wider(a, b));
    r.mul(a, b);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(wider(a, b));
    r.div(a, b);
    return r;
}

BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.bits());
    r.sqrt_of(a);
    return r;
}

BigFloat log(const BigFloat& a) {
    BigFloat r(a.bits());
    r.log_of(a);
    return r;
}

BigFloat log1p(const BigFloat& a) {
    BigFloat r(a.bits());
    r.log1p_of(a);
    return r;
}

BigFloat abs(const BigFloat& a) {
    BigFloat r(a.bits());
    r.abs_of(a);
    return r;
}

} // namespace hardylab
