#include "hardylab/forms.hpp"

#include <cmath>

#include "hardylab/roots.hpp"

namespace hardylab {

namespace {

// Visits every index n >= 1 whose difference term can be nonzero, in
// ascending order: for each stored entry the term at its own index
// (pairing with the stored or implicit-zero predecessor) and, when the
// next stored index is not adjacent, the closing term at index + 1.
template <class F>
void for_each_adjacent_pair(const Sequence& u, F&& visit) {
    const auto entries = u.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        std::complex<double> prev{0.0, 0.0};
        if (i > 0 && entries[i - 1].index + 1 == e.index) prev = entries[i - 1].value;
        visit(e.index, e.value, prev);
        const bool next_adjacent = i + 1 < entries.size() && entries[i + 1].index == e.index + 1;
        if (!next_adjacent) visit(e.index + 1, std::complex<double>{0.0, 0.0}, e.value);
    }
}

double norm2(std::complex<double> z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

// |x*u - y*v|^2 for real coefficients x, y.
double scaled_difference_norm2(double x, std::complex<double> u, double y,
                               std::complex<double> v) {
    const double re = x * u.real() - y * v.real();
    const double im = x * u.imag() - y * v.imag();
    return re * re + im * im;
}

// Extended-precision scratch registers shared across one walk.
struct BigScratch {
    explicit BigScratch(unsigned bits)
        : t0(bits), t1(bits), t2(bits), t3(bits), t4(bits), t5(bits) {}
    BigFloat t0, t1, t2, t3, t4, t5;
};

// t0 = |u|^2 for a complex double split into parts.
void norm2_big(BigScratch& s, std::complex<double> z) {
    s.t1.set(z.real());
    s.t1.mul(s.t1, s.t1);
    s.t2.set(z.imag());
    s.t2.mul(s.t2, s.t2);
    s.t0.add(s.t1, s.t2);
}

// t0 = |x*u - y*v|^2 with BigFloat coefficients x (t4) and y (t5).
void scaled_difference_norm2_big(BigScratch& s, std::complex<double> u,
                                 std::complex<double> v) {
    s.t1.mul(s.t4, u.real());
    s.t2.mul(s.t5, v.real());
    s.t1.sub(s.t1, s.t2);
    s.t1.mul(s.t1, s.t1);
    s.t2.mul(s.t4, u.imag());
    s.t3.mul(s.t5, v.imag());
    s.t2.sub(s.t2, s.t3);
    s.t2.mul(s.t2, s.t2);
    s.t0.add(s.t1, s.t2);
}

} // namespace

RemainderCoefficients RemainderCoefficients::at(std::uint64_t n) {
    if (n < 2) throw ValidationError("remainder coefficients are defined for n >= 2");
    return {fourth_root_ratio(n - 1, n), fourth_root_ratio(n, n - 1)};
}

bool FormReport::passes() const {
    return std::abs(residual) <= tolerance * std::max(dirichlet, 1.0);
}

double dirichlet_energy(const Sequence& u, const SummationMode& mode) {
    if (mode.is_extended()) {
        BigFloat out(mode.precision_bits);
        detail::dirichlet_energy_big(out, u);
        return out.to_double();
    }
    Accumulator acc(mode);
    for_each_adjacent_pair(u, [&](std::uint64_t, std::complex<double> un,
                                  std::complex<double> up) { acc.add(norm2(un - up)); });
    return acc.value();
}

double weighted_form(const Sequence& u, const WeightTable& table, const SummationMode& mode) {
    if (mode.is_extended()) {
        BigFloat out(mode.precision_bits);
        detail::weighted_form_big(out, u, table);
        return out.to_double();
    }
    Accumulator acc(mode);
    for (const auto& e : u.entries()) acc.add(table.value(e.index) * norm2(e.value));
    return acc.value();
}

double remainder_form(const Sequence& u, const SummationMode& mode) {
    if (mode.is_extended()) {
        BigFloat out(mode.precision_bits);
        detail::remainder_form_big(out, u);
        return out.to_double();
    }
    Accumulator acc(mode);
    for_each_adjacent_pair(u, [&](std::uint64_t n, std::complex<double> un,
                                  std::complex<double> up) {
        if (n < 2) return;
        const auto [a, b] = RemainderCoefficients::at(n);
        acc.add(scaled_difference_norm2(a, un, b, up));
    });
    return acc.value();
}

FormReport identity_report(const Sequence& u, const SummationMode& mode) {
    mode.validate();
    FormReport report;
    report.mode = mode;
    report.support_size = u.support_size();
    report.tolerance = identity_tolerance(mode, u.support_size());
    if (mode.is_extended()) {
        const unsigned bits = mode.precision_bits;
        BigFloat d(bits), w(bits), r(bits), resid(bits);
        detail::dirichlet_energy_big(d, u);
        detail::weighted_form_big(w, u, WeightTable{WeightKind::kpp()});
        detail::remainder_form_big(r, u);
        resid.sub(d, w);
        resid.sub(resid, r);
        report.dirichlet = d.to_double();
        report.weighted = w.to_double();
        report.remainder = r.to_double();
        report.residual = resid.to_double();
    } else {
        report.dirichlet = dirichlet_energy(u, mode);
        report.weighted = weighted_form(u, WeightTable{WeightKind::kpp()}, mode);
        report.remainder = remainder_form(u, mode);
        report.residual = report.dirichlet - report.weighted - report.remainder;
    }
    if (!report.passes()) {
        throw IdentityViolation(
            "identity residual " + std::to_string(report.residual) + " exceeds " +
                std::to_string(report.tolerance) + " * max(D, 1) in mode " + mode.describe(),
            report);
    }
    return report;
}

double pointwise_identity_residual(std::uint64_t n, std::complex<double> u_n,
                                   std::complex<double> u_prev) {
    if (n == 0) throw ValidationError("pointwise identity index must be >= 1");
    const double h = sqrt_step(n);
    const double sn = std::sqrt(static_cast<double>(n));
    if (n == 1) {
        // 1 - h_1/sqrt(1) = 0 and the u_prev terms read as zero.
        return h * norm2(u_n) / sn - norm2(u_n);
    }
    const double sm = std::sqrt(static_cast<double>(n - 1));
    const double shrink = std::sqrt(1.0 - h / sn);
    const double grow = std::sqrt(1.0 + h / sm);
    const double square_term = scaled_difference_norm2(shrink, u_n, grow, u_prev);
    const double telescoped = h * (norm2(u_n) / sn - norm2(u_prev) / sm);
    return square_term + telescoped - norm2(u_n - u_prev);
}

double summation_by_parts_residual(const Sequence& u, const SummationMode& mode) {
    if (mode.is_extended()) {
        BigFloat out(mode.precision_bits);
        detail::summation_by_parts_big(out, u);
        return out.to_double();
    }
    const WeightTable kpp{WeightKind::kpp()};
    const double weighted = weighted_form(u, kpp, mode);
    Accumulator acc(mode);
    for_each_adjacent_pair(u, [&](std::uint64_t n, std::complex<double> un,
                                  std::complex<double> up) {
        const double h = sqrt_step(n);
        double term = norm2(un) / std::sqrt(static_cast<double>(n));
        if (n >= 2) term -= norm2(up) / std::sqrt(static_cast<double>(n - 1));
        acc.add(h * term);
    });
    return weighted - acc.value();
}

double hardy_quotient(const Sequence& u, const WeightTable& table, const SummationMode& mode) {
    if (u.is_zero()) throw ValidationError("hardy quotient is undefined for the zero sequence");
    return dirichlet_energy(u, mode) / weighted_form(u, table, mode);
}

namespace detail {

void dirichlet_energy_big(BigFloat& out, const Sequence& u) {
    BigScratch s(out.bits());
    out.set_zero();
    for_each_adjacent_pair(u, [&](std::uint64_t, std::complex<double> un,
                                  std::complex<double> up) {
        s.t4.set(1.0);
        s.t5.set(1.0);
        scaled_difference_norm2_big(s, un, up);
        out.add(out, s.t0);
    });
}

void weighted_form_big(BigFloat& out, const Sequence& u, const WeightTable& table) {
    BigScratch s(out.bits());
    BigFloat w(out.bits());
    out.set_zero();
    for (const auto& e : u.entries()) {
        table.value_big(w, e.index);
        norm2_big(s, e.value);
        s.t0.mul(s.t0, w);
        out.add(out, s.t0);
    }
}

void remainder_form_big(BigFloat& out, const Sequence& u) {
    BigScratch s(out.bits());
    BigFloat sn(out.bits()), sm(out.bits());
    out.set_zero();
    for_each_adjacent_pair(u, [&](std::uint64_t n, std::complex<double> un,
                                  std::complex<double> up) {
        if (n < 2) return;
        // a_n = (sm/sn)^(1/2), b_n = 1/a_n with sn = sqrt(n), sm = sqrt(n-1)
        sn.sqrt_of_integer(n);
        sm.sqrt_of_integer(n - 1);
        s.t4.div(sm, sn);
        s.t4.sqrt_of(s.t4);
        s.t5.div(1.0, s.t4);
        scaled_difference_norm2_big(s, un, up);
        out.add(out, s.t0);
    });
}

void summation_by_parts_big(BigFloat& out, const Sequence& u) {
    const unsigned bits = out.bits();
    BigScratch s(bits);
    BigFloat weighted(bits), telescoped(bits), h(bits), sn(bits), sm(bits), term(bits);
    weighted_form_big(weighted, u, WeightTable{WeightKind::kpp()});
    telescoped.set_zero();
    for_each_adjacent_pair(u, [&](std::uint64_t n, std::complex<double> un,
                                  std::complex<double> up) {
        sn.sqrt_of_integer(n);
        sm.sqrt_of_integer(n - 1);
        h.add(sn, sm);
        h.div(1.0, h);
        norm2_big(s, un);
        term.div(s.t0, sn);
        if (n >= 2) {
            norm2_big(s, up);
            s.t0.div(s.t0, sm);
            term.sub(term, s.t0);
        }
        term.mul(term, h);
        telescoped.add(telescoped, term);
    });
    out.sub(weighted, telescoped);
}

} // namespace detail

} // namespace hardylab
