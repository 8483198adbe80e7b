#pragma once

#include <complex>
#include <cstdint>

#include "hardylab/errors.hpp"
#include "hardylab/sequence.hpp"
#include "hardylab/summation.hpp"
#include "hardylab/weights.hpp"

namespace hardylab {

/// The bidiagonal coefficients of the remainder form at index n >= 2:
/// a = ((n-1)/n)^(1/4), b = (n/(n-1))^(1/4). Algebra: a*b = 1,
/// a^2 = sqrt((n-1)/n), b^2 = sqrt(n/(n-1)), and
/// a_n^2 + b_{n+1}^2 = 2 - w_n.
struct RemainderCoefficients {
    double a;
    double b;

    static RemainderCoefficients at(std::uint64_t n);
};

/// The three forms of one evaluation: Dirichlet energy D, weighted form
/// W (improved weight), remainder R, and the identity residual
/// D - W - R. `tolerance` is the relative bound the residual was held
/// to: |residual| <= tolerance * max(D, 1).
struct FormReport {
    double dirichlet = 0.0;
    double weighted = 0.0;
    double remainder = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    SummationMode mode;
    std::size_t support_size = 0;

    bool passes() const;
};

/// Exact mathematics failed to hold numerically; always an
/// implementation defect. Carries the offending report.
class IdentityViolation : public Error {
public:
    IdentityViolation(const std::string& what, FormReport report_)
        : Error(what), report(std::move(report_)) {}

    FormReport report;
};

/// D(u) = sum_{n>=1} |u_n - u_{n-1}|^2 with u_0 = 0, including the
/// trailing |0 - u_max|^2 term at n = max_index + 1.
double dirichlet_energy(const Sequence& u,
                        const SummationMode& mode = SummationMode::compensated());

/// sum over the support of w(n) |u_n|^2.
double weighted_form(const Sequence& u, const WeightTable& table,
                     const SummationMode& mode = SummationMode::compensated());

/// R(u) = sum_{n>=2} |a_n u_n - b_n u_{n-1}|^2, including the trailing
/// term at n = max_index + 1 where u_n = 0.
double remainder_form(const Sequence& u,
                      const SummationMode& mode = SummationMode::compensated());

/// Computes D, W (improved weight), R and the residual D - W - R, and
/// checks |residual| <= identity_tolerance(mode, support) * max(D, 1).
/// Throws IdentityViolation if the check fails.
FormReport identity_report(const Sequence& u,
                           const SummationMode& mode = SummationMode::compensated());

/// Residual of the pointwise key identity at index n:
///   |sqrt(1 - h_n/sqrt(n)) u_n - sqrt(1 + h_n/sqrt(n-1)) u_prev|^2
///   + h_n (|u_n|^2/sqrt(n) - |u_prev|^2/sqrt(n-1)) - |u_n - u_prev|^2.
/// At n = 1 the u_prev terms are taken as zero; u_prev is ignored.
/// Zero in exact arithmetic for every complex pair.
double pointwise_identity_residual(std::uint64_t n, std::complex<double> u_n,
                                   std::complex<double> u_prev);

/// sum w_n |u_n|^2 minus its summation-by-parts rewrite
/// sum h_n (|u_n|^2/sqrt(n) - |u_{n-1}|^2/sqrt(n-1)); zero in exact
/// arithmetic.
double summation_by_parts_residual(const Sequence& u,
                                   const SummationMode& mode = SummationMode::compensated());

/// D(u)/W(u). Throws ValidationError on the zero sequence.
double hardy_quotient(const Sequence& u, const WeightTable& table,
                      const SummationMode& mode = SummationMode::compensated());

namespace detail {

/// Extended-precision form kernels; results land in `out` at its own
/// precision. Used by identity_report so the residual is formed before
/// any rounding to double.
void dirichlet_energy_big(BigFloat& out, const Sequence& u);
void weighted_form_big(BigFloat& out, const Sequence& u, const WeightTable& table);
void remainder_form_big(BigFloat& out, const Sequence& u);
void summation_by_parts_big(BigFloat& out, const Sequence& u);

} // namespace detail

} // namespace hardylab
