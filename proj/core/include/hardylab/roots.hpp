#pragma once

#include <cstdint>

namespace hardylab {

/// sqrt(p/q) evaluated as sqrt(p)/sqrt(q). Requires q >= 1.
double sqrt_ratio(std::uint64_t p, std::uint64_t q);

/// (p/q)^(1/4) via two square roots. Requires p >= 1, q >= 1.
double fourth_root_ratio(std::uint64_t p, std::uint64_t q);

} // namespace hardylab
