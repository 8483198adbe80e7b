#include "hardylab/summation.hpp"

#include <cmath>
#include <limits>

#include "hardylab/errors.hpp"

namespace hardylab {

void SummationMode::validate() const {
    if (kind == SummationKind::extended) {
        if (precision_bits < BigFloat::kMinBits || precision_bits > BigFloat::kMaxBits) {
            throw ConfigurationError(
                "extended precision unavailable at " + std::to_string(precision_bits) +
                " bits (supported range: " + std::to_string(BigFloat::kMinBits) + ".." +
                std::to_string(BigFloat::kMaxBits) + ")");
        }
    }
}

std::string SummationMode::describe() const {
    switch (kind) {
        case SummationKind::naive: return "naive";
        case SummationKind::compensated: return "compensated";
        case SummationKind::extended: return "extended(" + std::to_string(precision_bits) + ")";
    }
    return "unknown";
}

Accumulator::Accumulator(const SummationMode& mode)
    : mode_(mode), big_(mode.is_extended() ? mode.precision_bits : BigFloat::kMinBits) {
    mode_.validate();
}

void Accumulator::add(double term) {
    if (!std::isfinite(term)) {
        throw ValidationError("non-finite term fed to accumulator");
    }
    switch (mode_.kind) {
        case SummationKind::naive:
            sum_ += term;
            break;
        case SummationKind::compensated: {
            // Neumaier update: the carry absorbs the rounding error of
            // whichever operand was smaller in magnitude.
            const double t = sum_ + term;
            if (std::abs(sum_) >= std::abs(term)) {
                carry_ += (sum_ - t) + term;
            } else {
                carry_ += (term - t) + sum_;
            }
            sum_ = t;
            break;
        }
        case SummationKind::extended:
            big_ += term;
            break;
    }
}

double Accumulator::value() const {
    switch (mode_.kind) {
        case SummationKind::naive: return sum_;
        case SummationKind::compensated: return sum_ + carry_;
        case SummationKind::extended: return big_.to_double();
    }
    return 0.0;
}

double sum(std::span<const double> terms, const SummationMode& mode) {
    Accumulator acc(mode);
    for (double t : terms) acc.add(t);
    return acc.value();
}

double identity_tolerance(const SummationMode& mode, std::size_t support_size) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    switch (mode.kind) {
        case SummationKind::naive:
            return std::max(1e-12, 8.0 * eps * static_cast<double>(support_size));
        case SummationKind::compensated:
            return 1e-12;
        case SummationKind::extended:
            return std::max(std::ldexp(1.0, 34 - static_cast<int>(mode.precision_bits)), 1e-60);
    }
    return 1e-12;
}

} // namespace hardylab
