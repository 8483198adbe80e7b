#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "hardylab/errors.hpp"
#include "hardylab/forms.hpp"
#include "hardylab/optimality.hpp"

using namespace hardylab;

namespace {
// Frozen from 60-digit evaluations (mpmath / gmpy2).
constexpr double kRemainder2 = 1.4348818850003398;
constexpr double kChain2[5] = {1.4348818850003398, 2.0756922867910945, 3.468948301676013,
                               4.573235079570765, 5.7707801635558535};
constexpr double kRemainder8 = 0.4808244051231847;
constexpr double kRemainder101 = 0.21667896946140888;
constexpr double kRemainder1024 = 0.14426950367536592;
} // namespace

TEST_CASE("probe at level 2 against frozen references") {
    const ProbeResult probe = probe_remainder(2);
    CHECK(probe.remainder == doctest::Approx(kRemainder2).epsilon(1e-13));
    CHECK(probe.remainder_sequence == doctest::Approx(kRemainder2).epsilon(1e-12));
    CHECK(probe.term_count == 2);
    CHECK(probe.bound == doctest::Approx(4.0 / std::log(2.0)).epsilon(1e-15));
    CHECK(probe.margin == doctest::Approx(probe.bound - probe.remainder).epsilon(1e-15));
    REQUIRE(probe.chain.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(probe.chain[i].value == doctest::Approx(kChain2[i]).epsilon(1e-13));
    }
    CHECK(probe.chain[0].label == "remainder");
    CHECK(probe.chain[4].label == "final_bound");
}

TEST_CASE("probe validation and cap") {
    CHECK_THROWS_AS(probe_remainder(1), ValidationError);
    CHECK_THROWS_AS(probe_remainder(0), ValidationError);
    CHECK_THROWS_AS(probe_remainder(1000, SummationMode::compensated(), 10'000),
                    FeasibilityError);
    // levels whose square cannot be represented are rejected up front
    CHECK_THROWS_AS(probe_remainder(5'000'000'000ULL), FeasibilityError);
    CHECK_THROWS_AS(find_witness(1, 1.0, SummationMode::compensated(), 5'000'000'000ULL),
                    FeasibilityError);
}

TEST_CASE("bound chain is non-decreasing and ends at 4/log N") {
    for (const std::uint64_t level : {2ULL, 3ULL, 17ULL, 100ULL, 512ULL}) {
        const auto chain = verify_bound_chain(level);
        REQUIRE(chain.size() == 5);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            CHECK(chain[i].value <= chain[i + 1].value);
        }
        CHECK(chain[4].value == 4.0 / std::log(static_cast<double>(level)));
    }
}

TEST_CASE("extended-mode chain matches the compensated chain") {
    const auto compensated = verify_bound_chain(64, SummationMode::compensated());
    const auto extended = verify_bound_chain(64, SummationMode::extended(256));
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(compensated[i].value == doctest::Approx(extended[i].value).epsilon(1e-13));
    }
}

TEST_CASE("probe levels: bound, decay, rate, and route agreement") {
    double previous = 0.0;
    for (const std::uint64_t level :
         {2ULL, 3ULL, 4ULL, 8ULL, 16ULL, 32ULL, 64ULL, 128ULL, 256ULL}) {
        const ProbeResult probe = probe_remainder(level);
        CHECK(probe.remainder <= probe.bound);
        CHECK(probe.term_count == level * level - level);
        const double rel =
            std::abs(probe.remainder_sequence - probe.remainder) / probe.remainder;
        CHECK(rel <= 1e-12);
        if (level >= 8) CHECK(probe.remainder < previous); // remainder(2N) < remainder(N)
        if (level >= 16) {
            const double rate = probe.remainder * std::log(static_cast<double>(level));
            CHECK(rate >= 0.5);
            CHECK(rate <= 2.0);
        }
        previous = probe.remainder;
    }
}

TEST_CASE("probe at level 1024 sums a million terms") {
    const ProbeResult probe = probe_remainder(1024);
    CHECK(probe.remainder == doctest::Approx(kRemainder1024).epsilon(1e-12));
    CHECK(probe.remainder <= 4.0 / std::log(1024.0));
    CHECK(std::abs(probe.remainder_sequence - probe.remainder) <= 1e-12 * probe.remainder);
    CHECK(probe.remainder < probe_remainder(512).remainder);
    const double rate = probe.remainder * std::log(1024.0);
    CHECK(rate >= 0.5);
    CHECK(rate <= 2.0);
}

TEST_CASE("probe in naive and extended modes stays consistent") {
    const ProbeResult naive = probe_remainder(64, SummationMode::naive());
    const ProbeResult extended = probe_remainder(64, SummationMode::extended(256));
    CHECK(naive.remainder == doctest::Approx(extended.remainder).epsilon(1e-10));
}

TEST_CASE("witness at (100, 0.02)") {
    const WitnessResult witness = find_witness(100, 0.02);
    CHECK(witness.level == 101);
    CHECK(witness.margin > 0.0);
    CHECK(witness.margin == doctest::Approx(2.0 - kRemainder101).epsilon(1e-10));
    CHECK(witness.remainder == doctest::Approx(kRemainder101).epsilon(1e-12));
    CHECK(std::abs(witness.margin - witness.margin_identity) <= 1e-10);
    CHECK(witness.perturbed_form - witness.dirichlet ==
          doctest::Approx(witness.margin).epsilon(1e-15));
}

TEST_CASE("witness at (1, 2) picks the bound level 8") {
    const WitnessResult witness = find_witness(1, 2.0);
    CHECK(witness.level == 8);
    CHECK(witness.margin == doctest::Approx(2.0 - kRemainder8).epsilon(1e-12));
    CHECK(witness.margin > 0.0);
    CHECK(std::abs(witness.margin - witness.margin_identity) <= 1e-12);
}

TEST_CASE("witness feasibility gate reports the closed-form minimum level") {
    try {
        find_witness(1, 0.001);
        FAIL("expected FeasibilityError");
    } catch (const FeasibilityError& e) {
        CHECK(e.detail == "exp(4000)");
        CHECK(std::string(e.what()).find("exp(4000)") != std::string::npos);
    }
    // a lowered threshold may admit products whose minimum level is
    // still astronomically large; that must stay a feasibility error
    CHECK_THROWS_AS(find_witness(1, 0.05, SummationMode::compensated(), std::nullopt,
                                 kDefaultSupportCap, 0.01),
                    FeasibilityError);
}

TEST_CASE("witness validation") {
    CHECK_THROWS_AS(find_witness(0, 1.0), ValidationError);
    CHECK_THROWS_AS(find_witness(1, 0.0), ValidationError);
    CHECK_THROWS_AS(find_witness(1, -0.5), ValidationError);
    // explicit level must exceed the site
    CHECK_THROWS_AS(find_witness(10, 2.0, SummationMode::compensated(), 5), ValidationError);
    // explicit level bypasses the threshold gate
    const WitnessResult witness = find_witness(2, 0.1, SummationMode::compensated(), 50);
    CHECK(witness.level == 50);
    CHECK(std::abs(witness.margin - witness.margin_identity) <= 1e-10);
}

TEST_CASE("witness margin identity holds across sites and levels") {
    for (const auto& [site, epsilon] : {std::pair<std::uint64_t, double>{3, 0.3},
                                        {10, 0.06}, {1, 0.7}, {25, 0.04}}) {
        const WitnessResult witness = find_witness(site, epsilon);
        const double xi = cutoff(witness.level, site);
        const double expected =
            epsilon * static_cast<double>(site) * xi * xi - witness.remainder;
        CHECK(witness.margin_identity == doctest::Approx(expected).epsilon(1e-13));
        CHECK(std::abs(witness.margin - witness.margin_identity) <=
              1e-10 * std::max(witness.dirichlet, 1.0));
    }
}
