#include "bds/verifysuite.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace bds;
using bdstest::unit_chain;

namespace {

SuiteResult find_suite(const std::vector<SuiteResult>& results, const std::string& name) {
    for (const SuiteResult& result : results) {
        if (result.name == name) {
            return result;
        }
    }
    FAIL("suite not found: " << name);
    return {};
}

} // namespace

TEST_CASE("all suites pass on the unit chain") {
    VerifyOptions options;
    options.kmax = 8;
    options.order = 12;
    const auto results = run_verify_suites(unit_chain(), Scalar(-1), Scalar(0), options);
    REQUIRE(results.size() == 5);
    for (const SuiteResult& result : results) {
        INFO(result.name << ": " << result.detail);
        CHECK(result.status == SuiteResult::Status::Pass);
    }
}

TEST_CASE("suite order is fixed") {
    VerifyOptions options;
    options.kmax = 4;
    options.order = 8;
    const auto results = run_verify_suites(unit_chain(), Scalar(-1), Scalar(0), options);
    REQUIRE(results.size() == 5);
    CHECK(results[0].name == "closed-form-coefficients-vs-recurrence");
    CHECK(results[1].name == "full-history-vs-recurrence");
    CHECK(results[2].name == "generating-function-identity");
    CHECK(results[3].name == "transfer-matrix-fidelity");
    CHECK(results[4].name == "criterion-consistency");
}

TEST_CASE("a corrupted composition factor fails the closed-form suite at its k") {
    VerifyOptions options;
    options.kmax = 10;
    options.order = 10;
    options.alphaBeta = [](const BirthDeathChain& chain, const Scalar& lambda, std::size_t k) {
        AlphaBetaOptions inner;
        if (k == 7) {
            // Flip the sign of the part-2 factor at offset 0 for this k only.
            inner.hook = [](const Scalar& factor, long offset, int kind) {
                return (kind == 2 && offset == 0) ? Scalar(-factor) : factor;
            };
        }
        return alpha_beta(chain, lambda, k, inner);
    };
    const auto results = run_verify_suites(unit_chain(), Scalar(-1), Scalar(0), options);
    const SuiteResult closedForm = find_suite(results, "closed-form-coefficients-vs-recurrence");
    CHECK(closedForm.status == SuiteResult::Status::Fail);
    CHECK(closedForm.detail.find("k = 7") != std::string::npos);
}

TEST_CASE("vanishing v(1) skips the generating-function suite with a reason") {
    // theta = 1 + (W(0) - lambda) m(0) / b(0,1) = 0 at lambda = 1, W = 0.
    const auto results = run_verify_suites(unit_chain(), Scalar(1), std::nullopt, {});
    const SuiteResult genfun = find_suite(results, "generating-function-identity");
    CHECK(genfun.status == SuiteResult::Status::Skipped);
    CHECK(genfun.detail.find("v(1)") != std::string::npos);
}

TEST_CASE("suites pass on random chains") {
    bdstest::Rng rng(246810);
    VerifyOptions options;
    options.kmax = 6;
    options.order = 10;
    for (int trial = 0; trial < 5; ++trial) {
        const BirthDeathChain chain = bdstest::random_chain(rng);
        const Scalar lambda = bdstest::lambda_below_bound(chain);
        const auto results = run_verify_suites(chain, lambda, std::nullopt, options);
        for (const SuiteResult& result : results) {
            INFO(result.name << ": " << result.detail);
            CHECK(result.status != SuiteResult::Status::Fail);
        }
    }
}
