#pragma once

#include "bds/chain.hpp"
#include "bds/closedform.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bds {

struct SuiteResult {
    enum class Status { Pass, Fail, Skipped };

    std::string name;
    Status status = Status::Pass;
    std::string detail; // mismatch location on failure, reason on skip
};

const char* to_cstring(SuiteResult::Status status);

using AlphaBetaFn =
    std::function<CoefficientPair(const BirthDeathChain&, const Scalar&, std::size_t)>;

struct VerifyOptions {
    std::size_t kmax = 12;
    std::size_t order = 32;
    AlphaBetaFn alphaBeta; // defaults to alpha_beta; injectable for negative controls
};

/// Cross-oracle suite behind the verify command, in fixed order:
///   closed-form-coefficients-vs-recurrence
///   full-history-vs-recurrence
///   generating-function-identity     (skipped when v(1) = 0)
///   transfer-matrix-fidelity
///   criterion-consistency
std::vector<SuiteResult> run_verify_suites(const BirthDeathChain& chain, const Scalar& lambda,
                                           const std::optional<Scalar>& K,
                                           const VerifyOptions& options = {});

} // namespace bds
