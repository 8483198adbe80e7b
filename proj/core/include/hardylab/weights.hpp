#pragma once

#include <cstdint>

#include "hardylab/bigfloat.hpp"

namespace hardylab {

enum class WeightVariant { kpp, classical, perturbed };

/// Selects one of the three weight families: the improved weight
/// w_n = 2 - sqrt((n+1)/n) - sqrt((n-1)/n), the classical 1/(4n^2),
/// or a single-site bump w + epsilon*delta_k on top of one of those.
struct WeightKind {
    WeightVariant variant = WeightVariant::kpp;
    WeightVariant base = WeightVariant::kpp; // perturbed only
    std::uint64_t site = 0;                  // perturbed only, k >= 1
    double epsilon = 0.0;                    // perturbed only, > 0

    static WeightKind kpp() { return {}; }
    static WeightKind classical() { return {WeightVariant::classical}; }
    static WeightKind perturbed(WeightVariant base, std::uint64_t site, double epsilon);

    void validate() const;
    bool is_perturbed() const { return variant == WeightVariant::perturbed; }
};

/// Lazy evaluator from index n >= 1 to the weight value of `kind`.
struct WeightTable {
    WeightKind kind;

    double value(std::uint64_t n) const;

    /// Same value in the precision of `out`.
    void value_big(BigFloat& out, std::uint64_t n) const;
};

/// w_n = 2 - sqrt((n+1)/n) - sqrt((n-1)/n), evaluated in the
/// cancellation-free product form
///   w_n = 2 / (sqrt(n) (sqrt(n)+sqrt(n-1)) (sqrt(n+1)+sqrt(n)) (sqrt(n+1)+sqrt(n-1)))
/// so the result keeps full relative accuracy even where w_n ~ 1/(4n^2)
/// is ten orders below the individual square roots.
double kpp_weight(std::uint64_t n);

/// 1/(4n^2).
double classical_weight(std::uint64_t n);

/// h_n = sqrt(n) - sqrt(n-1), computed as 1/(sqrt(n)+sqrt(n-1)).
double sqrt_step(std::uint64_t n);

/// kpp_weight(n) - classical_weight(n). Strictly positive. Below the
/// 64-bit cancellation threshold (n >= 10^4) the subtraction runs in
/// 256-bit arithmetic automatically.
double weight_gap(std::uint64_t n);

/// w_n - (h_n - h_{n+1})/sqrt(n), both sides evaluated from their
/// defining formulas in 256-bit arithmetic. Exactly zero in exact
/// arithmetic; anything above a few ulp of w_n flags a defect in the
/// weight or step evaluation.
double telescoping_residual(std::uint64_t n);

/// w_n into `out` at its precision, product form (no cancellation).
void kpp_weight_big(BigFloat& out, std::uint64_t n);

/// w_n into `out` from the literal defining formula
/// 2 - sqrt((n+1)/n) - sqrt((n-1)/n); loses ~2*log2(n) of out's bits to
/// cancellation, which is harmless at 256 bits. Independent route used
/// to cross-check the product form.
void kpp_weight_literal_big(BigFloat& out, std::uint64_t n);

} // namespace hardylab
