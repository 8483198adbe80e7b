#include "hardylab/optimality.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "hardylab/errors.hpp"
#include "hardylab/forms.hpp"

namespace hardylab {

namespace {

constexpr const char* kChainLabels[5] = {
    "remainder",        // (1/log^2 N) sum sqrt(n(n-1)) log^2(n/(n-1))
    "log_square_bound", // log^2(n/(n-1)) replaced by 1/(n-1)^2
    "harmonic_bound",   // sqrt(n(n-1)) replaced by 2(n-1)
    "integral_bound",   // 2 log(N+1) / log^2 N
    "final_bound",      // 4 / log N
};

struct ChainValues {
    double stage[5];
};

ChainValues chain_values_double(std::uint64_t level, const SummationMode& mode) {
    const double sqrt2 = std::sqrt(2.0);
    Accumulator remainder_sum(mode), log_square_sum(mode), harmonic_sum(mode);
    const std::uint64_t top = level * level;
    for (std::uint64_t n = level + 1; n <= top; ++n) {
        const double back = static_cast<double>(n - 1);
        const double root = std::sqrt(static_cast<double>(n)) * std::sqrt(back);
        const double step = std::log1p(1.0 / back); // log(n/(n-1))
        const double inv = 1.0 / back;
        if (step > inv) {
            throw InternalError("termwise bound log(1+x) <= x failed at n = " +
                                std::to_string(n));
        }
        if (root > sqrt2 * back) {
            throw InternalError("termwise bound sqrt(n(n-1)) <= sqrt(2)(n-1) failed at n = " +
                                std::to_string(n));
        }
        remainder_sum.add(root * step * step);
        log_square_sum.add(root * inv * inv);
        harmonic_sum.add(2.0 * inv);
    }
    const double log_level = std::log(static_cast<double>(level));
    const double scale = log_level * log_level;
    ChainValues values{};
    values.stage[0] = remainder_sum.value() / scale;
    values.stage[1] = log_square_sum.value() / scale;
    values.stage[2] = harmonic_sum.value() / scale;
    values.stage[3] = 2.0 * std::log(static_cast<double>(level + 1)) / scale;
    values.stage[4] = 4.0 / log_level;
    return values;
}

ChainValues chain_values_big(std::uint64_t level, unsigned bits) {
    BigFloat remainder_sum(bits), log_square_sum(bits), harmonic_sum(bits);
    BigFloat root(bits), step(bits), inv(bits), back(bits), term(bits), rhs(bits);
    BigFloat sqrt2(bits);
    sqrt2.sqrt_of_integer(2);
    const std::uint64_t top = level * level;
    for (std::uint64_t n = level + 1; n <= top; ++n) {
        back.set_integer(n - 1);
        root.sqrt_of_integer(n);
        term.sqrt_of_integer(n - 1);
        root.mul(root, term);
        inv.div(1.0, back);
        step.log1p_of(inv);
        if (step.compare(inv) > 0) {
            throw InternalError("termwise bound log(1+x) <= x failed at n = " +
                                std::to_string(n));
        }
        rhs.mul(sqrt2, back);
        if (root.compare(rhs) > 0) {
            throw InternalError("termwise bound sqrt(n(n-1)) <= sqrt(2)(n-1) failed at n = " +
                                std::to_string(n));
        }
        term.mul(step, step);
        term.mul(term, root);
        remainder_sum.add(remainder_sum, term);
        term.mul(inv, inv);
        term.mul(term, root);
        log_square_sum.add(log_square_sum, term);
        term.mul(inv, 2.0);
        harmonic_sum.add(harmonic_sum, term);
    }
    BigFloat log_level(bits), scale(bits), t(bits);
    log_level.set_integer(level);
    log_level.log_of(log_level);
    scale.mul(log_level, log_level);
    ChainValues values{};
    t.div(remainder_sum, scale);
    values.stage[0] = t.to_double();
    t.div(log_square_sum, scale);
    values.stage[1] = t.to_double();
    t.div(harmonic_sum, scale);
    values.stage[2] = t.to_double();
    t.set_integer(level + 1);
    t.log_of(t);
    t.mul(t, 2.0);
    t.div(t, scale);
    values.stage[3] = t.to_double();
    t.div(4.0, log_level);
    values.stage[4] = t.to_double();
    return values;
}

ChainValues compute_chain(std::uint64_t level, const SummationMode& mode) {
    if (level < 2) throw ValidationError("N must be >= 2");
    if (level > 0xFFFFFFFFULL) throw ValidationError("N too large");
    mode.validate();
    const ChainValues values = mode.is_extended()
                                   ? chain_values_big(level, mode.precision_bits)
                                   : chain_values_double(level, mode);
    for (int i = 0; i + 1 < 5; ++i) {
        if (values.stage[i] > values.stage[i + 1]) {
            throw InternalError("bound chain decreases between stage " + std::to_string(i) +
                                " and " + std::to_string(i + 1) + " at N = " +
                                std::to_string(level));
        }
    }
    return values;
}

double route_consistency_tolerance(const SummationMode& mode, std::uint64_t term_count) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (mode.kind == SummationKind::naive) {
        return std::max(1e-12, 4.0 * eps * static_cast<double>(term_count));
    }
    return 1e-12;
}

} // namespace

std::vector<ChainStage> verify_bound_chain(std::uint64_t level, const SummationMode& mode) {
    const ChainValues values = compute_chain(level, mode);
    std::vector<ChainStage> stages;
    stages.reserve(5);
    for (int i = 0; i < 5; ++i) stages.push_back({kChainLabels[i], values.stage[i]});
    return stages;
}

ProbeResult probe_remainder(std::uint64_t level, const SummationMode& mode,
                            std::uint64_t support_cap) {
    if (level < 2) throw ValidationError("N must be >= 2");
    mode.validate();
    if (level > 0xFFFFFFFFULL) {
        throw FeasibilityError("probe level " + std::to_string(level) +
                               " is beyond any materializable support");
    }
    if (level * level - 1 > support_cap) {
        throw FeasibilityError(
            "probe at level " + std::to_string(level) + " needs " +
                std::to_string(level * level - 1) + " entries, above the support cap of " +
                std::to_string(support_cap),
            std::to_string(level * level - 1));
    }

    ProbeResult result;
    result.level = level;
    result.term_count = level * level - level;

    const ChainValues values = compute_chain(level, mode);
    result.remainder = values.stage[0];
    result.chain.reserve(5);
    for (int i = 0; i < 5; ++i) result.chain.push_back({kChainLabels[i], values.stage[i]});

    const Sequence probe = regularized_ground_state(level, support_cap);
    result.remainder_sequence = remainder_form(probe, mode);

    const double tol = route_consistency_tolerance(mode, result.term_count);
    const double scale = std::max(std::abs(result.remainder), 1e-300);
    if (std::abs(result.remainder_sequence - result.remainder) > tol * scale) {
        throw InternalError(
            "probe remainder routes disagree at N = " + std::to_string(level) +
            ": sequence route " + std::to_string(result.remainder_sequence) +
            " vs closed form " + std::to_string(result.remainder));
    }

    result.bound = values.stage[4];
    result.margin = result.bound - result.remainder;
    return result;
}

WitnessResult find_witness(std::uint64_t site, double epsilon, const SummationMode& mode,
                           std::optional<std::uint64_t> level, std::uint64_t support_cap,
                           double feasibility_threshold) {
    if (site == 0) throw ValidationError("witness site must be >= 1");
    if (site >= 0xFFFFFFFFULL) {
        // any usable level exceeds the site, and its square must fit
        throw FeasibilityError("witness site " + std::to_string(site) +
                               " needs a level beyond any materializable support");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ValidationError("witness epsilon must be a positive finite real");
    }
    mode.validate();

    const double product = epsilon * static_cast<double>(site);
    const double exponent = 4.0 / product;
    // exp(40) ~ 2.4e17 is the last level whose value (let alone square)
    // still fits integer arithmetic; report larger minima symbolically.
    constexpr double kNumericExponentLimit = 40.0;
    const auto minimum_level_text = [&]() -> std::string {
        if (exponent <= kNumericExponentLimit) {
            return std::to_string(static_cast<std::uint64_t>(std::floor(std::exp(exponent))) + 1);
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "exp(%.6g)", exponent);
        return buf;
    };

    std::uint64_t chosen;
    if (level) {
        chosen = *level;
        if (chosen < 2) throw ValidationError("witness level must be >= 2");
        if (chosen <= site) {
            throw ValidationError("witness level must exceed the site so the cutoff is 1 there");
        }
    } else {
        if (product < feasibility_threshold) {
            throw FeasibilityError(
                "epsilon*site = " + std::to_string(product) + " is below the feasibility "
                "threshold " + std::to_string(feasibility_threshold) +
                "; the bound 4/log N < epsilon*site needs N >= " + minimum_level_text(),
                minimum_level_text());
        }
        if (exponent > kNumericExponentLimit) {
            throw FeasibilityError("the bound 4/log N < epsilon*site needs N >= " +
                                       minimum_level_text() +
                                       ", beyond any materializable support",
                                   minimum_level_text());
        }
        // smallest N with 4/log N < epsilon*site, i.e. N > exp(4/(epsilon*site))
        const std::uint64_t from_bound =
            static_cast<std::uint64_t>(std::floor(std::exp(exponent))) + 1;
        chosen = std::max(site + 1, std::max<std::uint64_t>(from_bound, 2));
    }

    if (chosen > 0xFFFFFFFFULL) {
        throw FeasibilityError("witness level " + std::to_string(chosen) +
                                   " is beyond any materializable support",
                               minimum_level_text());
    }
    if (chosen * chosen - 1 > support_cap) {
        throw FeasibilityError(
            "witness level " + std::to_string(chosen) + " needs " +
                std::to_string(chosen * chosen - 1) + " entries, above the support cap of " +
                std::to_string(support_cap) + " (minimum level from the bound: " +
                minimum_level_text() + ")",
            minimum_level_text());
    }

    const Sequence probe = regularized_ground_state(chosen, support_cap);
    const WeightTable perturbed{WeightKind::perturbed(WeightVariant::kpp, site, epsilon)};

    WitnessResult result;
    result.site = site;
    result.epsilon = epsilon;
    result.level = chosen;
    result.perturbed_form = weighted_form(probe, perturbed, mode);
    result.dirichlet = dirichlet_energy(probe, mode);
    result.margin = result.perturbed_form - result.dirichlet;
    result.remainder = remainder_form(probe, mode);
    const double xi = cutoff(chosen, site);
    result.margin_identity =
        epsilon * static_cast<double>(site) * xi * xi - result.remainder;
    return result;
}

} // namespace hardylab
