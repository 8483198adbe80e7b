#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "hardylab/bigfloat.hpp"

namespace hardylab {

enum class SummationKind { naive, compensated, extended };

/// Policy selecting how reductions are evaluated. `precision_bits` is
/// honored by the extended kind only.
struct SummationMode {
    SummationKind kind = SummationKind::compensated;
    unsigned precision_bits = 256;

    static SummationMode naive() { return {SummationKind::naive, 256}; }
    static SummationMode compensated() { return {SummationKind::compensated, 256}; }
    static SummationMode extended(unsigned bits = 256) { return {SummationKind::extended, bits}; }

    bool is_extended() const { return kind == SummationKind::extended; }

    /// Throws ConfigurationError if the mode cannot be instantiated
    /// (extended with precision_bits outside [64, 65536]).
    void validate() const;

    /// Human-readable form: "naive", "compensated", "extended(256)".
    std::string describe() const;
};

/// Streaming reduction under a SummationMode. Feeding the same terms in
/// the same order always reproduces the same bits for a fixed mode.
///
/// The compensated kind keeps a separate carry that also absorbs error
/// when an incoming term is larger than the running sum, so mixed-scale
/// series lose at most ulp-level accuracy regardless of length.
class Accumulator {
public:
    explicit Accumulator(const SummationMode& mode);

    /// Throws ValidationError on a non-finite term.
    void add(double term);

    /// Current total rounded to double.
    double value() const;

    const SummationMode& mode() const { return mode_; }

private:
    SummationMode mode_;
    double sum_ = 0.0;
    double carry_ = 0.0;
    BigFloat big_;
};

/// Sum of `terms` in ascending given order under `mode`.
double sum(std::span<const double> terms, const SummationMode& mode);

/// Relative tolerance on |D - W - R| (and on the summation-by-parts
/// residual) as a function of the mode and the support size. Pinned
/// points: compensated 64-bit -> 1e-12, extended(256) -> 1e-60; naive
/// scales with the term count, extended with the precision.
double identity_tolerance(const SummationMode& mode, std::size_t support_size);

} // namespace hardylab
