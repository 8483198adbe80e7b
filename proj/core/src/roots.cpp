#include "hardylab/roots.hpp"

#include <cmath>

#include "hardylab/errors.hpp"

namespace hardylab {

double sqrt_ratio(std::uint64_t p, std::uint64_t q) {
    if (q == 0) throw ValidationError("sqrt_ratio: q must be >= 1");
    return std::sqrt(static_cast<double>(p)) / std::sqrt(static_cast<double>(q));
}

double fourth_root_ratio(std::uint64_t p, std::uint64_t q) {
    if (p == 0 || q == 0) throw ValidationError("fourth_root_ratio: p and q must be >= 1");
    return std::sqrt(sqrt_ratio(p, q));
}

} // namespace hardylab
