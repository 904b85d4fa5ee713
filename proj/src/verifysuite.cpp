#include "bds/verifysuite.hpp"

#include "bds/criteria.hpp"
#include "bds/errors.hpp"
#include "bds/series.hpp"
#include "bds/tail.hpp"

#include <algorithm>
#include <cmath>

namespace bds {

const char* to_cstring(SuiteResult::Status status) {
    switch (status) {
    case SuiteResult::Status::Pass: return "PASS";
    case SuiteResult::Status::Fail: return "FAIL";
    case SuiteResult::Status::Skipped: return "SKIP";
    }
    return "?";
}

namespace {

SuiteResult closed_form_suite(const BirthDeathChain& chain, const Scalar& lambda,
                              const VerifyOptions& options) {
    SuiteResult result{"closed-form-coefficients-vs-recurrence", SuiteResult::Status::Pass, ""};
    const AlphaBetaFn compute =
        options.alphaBeta ? options.alphaBeta
                          : [](const BirthDeathChain& c, const Scalar& l, std::size_t k) {
                                return alpha_beta(c, l, k);
                            };
    const SpectralParams params(lambda);
    const Solution sol = solve_forward(chain, params, Scalar(1), std::nullopt, options.kmax + 1);
    for (std::size_t k = 0; k <= options.kmax; ++k) {
        const CoefficientPair pair = compute(chain, lambda, k);
        const Scalar sum = pair.alpha + pair.beta;
        if (sum != sol.values[k + 1]) {
            result.status = SuiteResult::Status::Fail;
            result.detail = "first mismatch at k = " + std::to_string(k) + ": alpha+beta = " +
                            to_string(sum) + ", recurrence v(" + std::to_string(k + 1) +
                            ") = " + to_string(sol.values[k + 1]);
            return result;
        }
    }
    result.detail = "k = 0.." + std::to_string(options.kmax) + " exact";
    return result;
}

SuiteResult full_history_suite(const BirthDeathChain& chain, const Scalar& lambda,
                               const VerifyOptions& options) {
    SuiteResult result{"full-history-vs-recurrence", SuiteResult::Status::Pass, ""};
    const std::size_t N = std::max<std::size_t>(options.order, 2);
    const SpectralParams params(lambda);
    // Normalized boundary data plus one freely chosen pair.
    const std::vector<std::pair<Scalar, std::optional<Scalar>>> starts = {
        {Scalar(1), std::nullopt}, {Scalar(1), Scalar(7) / 3}};
    for (const auto& [v0, v1] : starts) {
        const Solution forward = solve_forward(chain, params, v0, v1, N);
        const Solution history =
            full_history_solve_folded(chain, lambda, v0, forward.values[1], N);
        for (std::size_t k = 0; k <= N; ++k) {
            if (forward.values[k] != history.values[k]) {
                result.status = SuiteResult::Status::Fail;
                result.detail = "first mismatch at k = " + std::to_string(k) + " (v0 = " +
                                to_string(v0) + "): forward " + to_string(forward.values[k]) +
                                ", full-history " + to_string(history.values[k]);
                return result;
            }
        }
    }
    result.detail = "two boundary pairs, N = " + std::to_string(N) + " exact";
    return result;
}

SuiteResult genfun_suite(const BirthDeathChain& chain, const Scalar& lambda,
                         const VerifyOptions& options) {
    SuiteResult result{"generating-function-identity", SuiteResult::Status::Pass, ""};
    const Scalar th = theta(chain, lambda);
    if (th == 0) {
        result.status = SuiteResult::Status::Skipped;
        result.detail = "v(1) = theta * v(0) = 0: deconvolution undefined";
        return result;
    }
    const std::size_t order = std::clamp<std::size_t>(options.order, 4, 16);
    const Scalar residual = genfun_identity_check(chain, Scalar(1), th, order, lambda);
    if (residual != 0) {
        result.status = SuiteResult::Status::Fail;
        result.detail = "residual " + to_string(residual) + " through order " + std::to_string(order);
        return result;
    }
    result.detail = "residual 0 through order " + std::to_string(order);
    return result;
}

SuiteResult transfer_suite(const BirthDeathChain& chain, const Scalar& lambda,
                           const VerifyOptions& options) {
    SuiteResult result{"transfer-matrix-fidelity", SuiteResult::Status::Pass, ""};
    const std::size_t N = std::max<std::size_t>(std::min<std::size_t>(options.order, 30), 3);
    const SpectralParams params(lambda);
    const Scalar v0 = 1;
    const Scalar v1 = Scalar(5) / 2;
    const Solution sol = solve_forward(chain, params, v0, v1, N);

    Mat2 product{Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
    for (std::size_t k = 2; k <= N; ++k) {
        const TransferStep step = transfer_step(chain, lambda, k - 2);
        product = step.A * product;
        const auto [top, bottom] = product.apply(sol.values[1], sol.values[0]);
        if (top != sol.values[k] || bottom != sol.values[k - 1]) {
            result.status = SuiteResult::Status::Fail;
            result.detail = "matrix product disagrees with the recurrence at k = " + std::to_string(k);
            return result;
        }
        const double trace = to_double(step.A.gram_trace());
        const double norm = operator_norm_2x2(step.A);
        if (trace < norm * norm * (1.0 - 1e-12)) {
            result.status = SuiteResult::Status::Fail;
            result.detail = "trace bound fell below the squared operator norm at step " +
                            std::to_string(k - 2);
            return result;
        }
    }
    result.detail = "products exact through k = " + std::to_string(N);
    return result;
}

SuiteResult consistency_suite(const BirthDeathChain& chain, const Scalar& lambda,
                              const std::optional<Scalar>& K) {
    SuiteResult result{"criterion-consistency", SuiteResult::Status::Pass, ""};
    const std::size_t terms = 64;
    const DivergencePolicy policy;
    const SpectralParams params(lambda, K);

    const Verdict ham = hamburger(chain, terms, policy);
    const Verdict character = esa_characterize(chain, params, terms, policy);
    const Verdict failure = failure_criterion(chain, params, terms, policy);
    std::optional<Verdict> positive;
    std::string positiveNote;
    try {
        positive = positive_solution_criterion(chain, params, terms, policy);
    } catch (const PositivityError& e) {
        positiveNote = std::string("; positive-solution criterion not applicable (") + e.what() + ")";
    }

    auto conflict = [&result](const std::string& what) {
        result.status = SuiteResult::Status::Fail;
        result.detail = what;
    };

    // The two solution-based criteria decide the same operator.
    if (positive && is_proved(character.kind) && is_proved(positive->kind) &&
        is_diverges(character.kind) != is_diverges(positive->kind)) {
        conflict("characterization and positive-solution proved opposite verdicts");
        return result;
    }
    // A proved convergent trace bound certifies failure; the solution-based
    // criteria must not prove the opposite.
    if (failure.kind == VerdictKind::ProvedConverges) {
        if (character.kind == VerdictKind::ProvedDiverges ||
            (positive && positive->kind == VerdictKind::ProvedDiverges)) {
            conflict("trace bound proved failure while a solution criterion proved self-adjointness");
            return result;
        }
    }
    // Lower-bounded potential: the Laplacian verdict transfers upward.
    if (certified_tail_inf(chain.W, 0) && ham.kind == VerdictKind::ProvedDiverges) {
        if (character.kind == VerdictKind::ProvedConverges ||
            (positive && positive->kind == VerdictKind::ProvedConverges)) {
            conflict("bounded-below potential: Laplacian proved self-adjoint but the operator "
                     "criteria proved the opposite");
            return result;
        }
    }
    result.detail = std::string("hamburger ") + to_cstring(ham.kind) + ", characterization " +
                    to_cstring(character.kind) + ", failure " + to_cstring(failure.kind) +
                    (positive ? std::string(", positive ") + to_cstring(positive->kind) : "") +
                    positiveNote;
    return result;
}

} // namespace

std::vector<SuiteResult> run_verify_suites(const BirthDeathChain& chain, const Scalar& lambda,
                                           const std::optional<Scalar>& K,
                                           const VerifyOptions& options) {
    std::vector<SuiteResult> results;
    results.push_back(closed_form_suite(chain, lambda, options));
    results.push_back(full_history_suite(chain, lambda, options));
    results.push_back(genfun_suite(chain, lambda, options));
    results.push_back(transfer_suite(chain, lambda, options));
    results.push_back(consistency_suite(chain, lambda, K));
    return results;
}

} // namespace bds
