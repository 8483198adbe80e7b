#include "hardylab/weights.hpp"

#include <cmath>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

void require_index(std::uint64_t n, const char* what) {
    if (n == 0) throw ValidationError(std::string(what) + ": index must be >= 1");
    // n+1 must convert to double exactly
    if (n >= (1ULL << 53)) {
        throw ValidationError(std::string(what) + ": index beyond 2^53");
    }
}

// n at which the double-precision gap subtraction starts losing digits.
constexpr std::uint64_t kGapExtendedThreshold = 10'000;
constexpr unsigned kInternalBits = 256;

} // namespace

WeightKind WeightKind::perturbed(WeightVariant base, std::uint64_t site, double epsilon) {
    WeightKind k{WeightVariant::perturbed, base, site, epsilon};
    k.validate();
    return k;
}

void WeightKind::validate() const {
    if (variant == WeightVariant::perturbed) {
        if (base == WeightVariant::perturbed) {
            throw ValidationError("perturbed weight must have a kpp or classical base");
        }
        if (site == 0) throw ValidationError("perturbation site must be >= 1");
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
            throw ValidationError("perturbation epsilon must be a positive finite real");
        }
    }
}

double kpp_weight(std::uint64_t n) {
    require_index(n, "kpp_weight");
    const double sn = std::sqrt(static_cast<double>(n));
    const double sp = std::sqrt(static_cast<double>(n + 1));
    const double sm = std::sqrt(static_cast<double>(n - 1));
    return 2.0 / (sn * (sn + sm) * (sp + sn) * (sp + sm));
}

double classical_weight(std::uint64_t n) {
    require_index(n, "classical_weight");
    const double nd = static_cast<double>(n);
    return 1.0 / (4.0 * nd * nd);
}

double sqrt_step(std::uint64_t n) {
    require_index(n, "sqrt_step");
    const double sn = std::sqrt(static_cast<double>(n));
    const double sm = std::sqrt(static_cast<double>(n - 1));
    return 1.0 / (sn + sm);
}

void kpp_weight_big(BigFloat& out, std::uint64_t n) {
    require_index(n, "kpp_weight_big");
    BigFloat sn(out.bits()), sp(out.bits()), sm(out.bits()), t(out.bits());
    sn.sqrt_of_integer(n);
    sp.sqrt_of_integer(n + 1);
    sm.sqrt_of_integer(n - 1);
    t.add(sn, sm);
    out.mul(sn, t);
    t.add(sp, sn);
    out.mul(out, t);
    t.add(sp, sm);
    out.mul(out, t);
    out.div(2.0, out);
}

void kpp_weight_literal_big(BigFloat& out, std::uint64_t n) {
    require_index(n, "kpp_weight_literal_big");
    BigFloat sn(out.bits()), sp(out.bits()), sm(out.bits());
    sn.sqrt_of_integer(n);
    sp.sqrt_of_integer(n + 1);
    sm.sqrt_of_integer(n - 1);
    sp.div(sp, sn); // sqrt((n+1)/n)
    sm.div(sm, sn); // sqrt((n-1)/n)
    out.sub(2.0, sp);
    out.sub(out, sm);
}

double weight_gap(std::uint64_t n) {
    require_index(n, "weight_gap");
    if (n < kGapExtendedThreshold) {
        return kpp_weight(n) - classical_weight(n);
    }
    BigFloat w(kInternalBits), c(kInternalBits);
    kpp_weight_big(w, n);
    c.set_integer(n);
    c.mul(c, c);
    c.mul(c, 4.0);
    c.div(1.0, c);
    w.sub(w, c);
    return w.to_double();
}

double telescoping_residual(std::uint64_t n) {
    require_index(n, "telescoping_residual");
    const unsigned bits = kInternalBits;
    BigFloat sn(bits), sp(bits), sm(bits), w(bits), h_n(bits), h_next(bits), r(bits);
    sn.sqrt_of_integer(n);
    sp.sqrt_of_integer(n + 1);
    sm.sqrt_of_integer(n - 1);
    // literal weight: 2 - sqrt((n+1)/n) - sqrt((n-1)/n)
    w.div(sp, sn);
    w.sub(2.0, w);
    r.div(sm, sn);
    w.sub(w, r);
    // telescoped route: (h_n - h_{n+1})/sqrt(n) with h_m = 1/(sqrt(m)+sqrt(m-1))
    h_n.add(sn, sm);
    h_n.div(1.0, h_n);
    h_next.add(sp, sn);
    h_next.div(1.0, h_next);
    r.sub(h_n, h_next);
    r.div(r, sn);
    w.sub(w, r);
    return w.to_double();
}

double WeightTable::value(std::uint64_t n) const {
    require_index(n, "weight value");
    switch (kind.variant) {
        case WeightVariant::kpp: return kpp_weight(n);
        case WeightVariant::classical: return classical_weight(n);
        case WeightVariant::perturbed: {
            const double base = kind.base == WeightVariant::kpp ? kpp_weight(n) : classical_weight(n);
            return n == kind.site ? base + kind.epsilon : base;
        }
    }
    return 0.0;
}

void WeightTable::value_big(BigFloat& out, std::uint64_t n) const {
    require_index(n, "weight value");
    const WeightVariant effective = kind.is_perturbed() ? kind.base : kind.variant;
    if (effective == WeightVariant::kpp) {
        kpp_weight_big(out, n);
    } else {
        out.set_integer(n);
        out.mul(out, out);
        out.mul(out, 4.0);
        out.div(1.0, out);
    }
    if (kind.is_perturbed() && n == kind.site) {
        out.add(out, kind.epsilon);
    }
}

} // namespace hardylab
