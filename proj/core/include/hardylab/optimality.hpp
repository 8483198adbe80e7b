#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/sequence.hpp"
#include "hardylab/summation.hpp"

namespace hardylab {

struct ChainStage {
    std::string label;
    double value = 0.0;
};

/// Remainder of the regularized ground state u^N and the bound chain
/// that caps it by 4/log N. `remainder` is the closed-form route
/// (1/log^2 N) sum_{n=N+1..N^2} sqrt(n(n-1)) log^2(n/(n-1));
/// `remainder_sequence` is the same quantity evaluated through the
/// remainder form on the materialized sequence. The five chain values
/// are non-decreasing.
struct ProbeResult {
    std::uint64_t level = 0;
    double remainder = 0.0;
    double remainder_sequence = 0.0;
    double bound = 0.0; // 4/log N
    double margin = 0.0; // bound - remainder
    std::uint64_t term_count = 0; // N^2 - N
    std::vector<ChainStage> chain;
};

/// Single-site violation certificate for the weight w + epsilon*delta_k:
/// at the chosen cutoff level, sum of the perturbed weighted form minus
/// the Dirichlet energy. A positive margin certifies that the perturbed
/// weight does not satisfy the inequality. `margin_identity` is the
/// same margin through the identity route, epsilon*k*xi^2 - R(u^N).
struct WitnessResult {
    std::uint64_t site = 0;
    double epsilon = 0.0;
    std::uint64_t level = 0;
    double perturbed_form = 0.0;
    double dirichlet = 0.0;
    double margin = 0.0;
    double margin_identity = 0.0;
    double remainder = 0.0;
};

/// Smallest product epsilon*site accepted without an explicit level.
inline constexpr double kWitnessFeasibilityThreshold = 0.5;

/// Evaluates the probe remainder both ways, checks the two routes agree
/// (relative 1e-12 in compensated or extended mode), fills the bound
/// chain, and verifies the chain is non-decreasing. Requires N >= 2 and
/// N^2 - 1 within the support cap.
ProbeResult probe_remainder(std::uint64_t level,
                            const SummationMode& mode = SummationMode::compensated(),
                            std::uint64_t support_cap = kDefaultSupportCap);

/// The five-stage bound chain only (no sequence materialization):
/// exact remainder, the 1/(n-1)^2 bound, the harmonic bound, the
/// integral estimate 2 log(N+1)/log^2 N, and 4/log N. The termwise
/// bounds behind the stages (log(1+x) <= x, sqrt(n(n-1)) <= sqrt(2)(n-1))
/// are asserted while summing.
std::vector<ChainStage> verify_bound_chain(std::uint64_t level,
                                           const SummationMode& mode = SummationMode::compensated());

/// Builds a violation witness for w + epsilon*delta_site. Picks
/// N = max(site+1, smallest N with 4/log N < epsilon*site) unless an
/// explicit level is supplied (which must still exceed the site).
/// Throws FeasibilityError when epsilon*site is below the threshold or
/// the required support exceeds the cap; the error carries the
/// closed-form minimum level ceil(exp(4/(epsilon*site))).
WitnessResult find_witness(std::uint64_t site, double epsilon,
                           const SummationMode& mode = SummationMode::compensated(),
                           std::optional<std::uint64_t> level = std::nullopt,
                           std::uint64_t support_cap = kDefaultSupportCap,
                           double feasibility_threshold = kWitnessFeasibilityThreshold);

} // namespace hardylab
