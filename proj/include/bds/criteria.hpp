#pragma once

#include "bds/chain.hpp"
#include "bds/scalar.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bds {

enum class VerdictKind {
    ProvedDiverges,
    ProvedConverges,
    HeuristicDiverges,
    HeuristicConverges,
};

const char* to_cstring(VerdictKind kind);
bool is_proved(VerdictKind kind);
bool is_diverges(VerdictKind kind);

enum class Caveat {
    UnverifiedSemiBoundedness, // no K supplied; semi-boundedness not certified
    SufficientConditionOnly,   // one-directional criterion returned its silent side
    DivergenceHookContradicted,
    ConvergenceHookContradicted,
};

const char* to_cstring(Caveat caveat);

/// Family-level proof hook: term_k >= eps for every k >= k0 (not just the
/// inspected window). The classifier re-verifies the claim on the window.
struct DivergenceCert {
    Scalar eps;
    std::size_t k0 = 0;
    std::string reason;
};

/// Family-level proof hook: term_{k+1} <= q * term_k for every k >= k0 with q < 1.
struct ConvergenceCert {
    Scalar q;
    std::size_t k0 = 0;
    std::string reason;
};

struct DivergencePolicy {
    Scalar delta = Scalar(1) / 100; // heuristic partial-sum threshold
    std::optional<DivergenceCert> divergenceHook;
    std::optional<ConvergenceCert> convergenceHook;
};

struct Evidence {
    Scalar sumN;        // partial sum of the first N terms
    Scalar sum2N;       // partial sum of all inspected terms
    std::size_t termsInspected = 0;
    std::string tailBound; // description of the bound that carried a proved verdict
    std::vector<std::pair<std::size_t, Scalar>> sampleTerms; // first 10 + last 2 inspected
};

struct Verdict {
    VerdictKind kind;
    Evidence evidence;
    std::vector<Caveat> caveats;
};

using TermFn = std::function<Scalar(std::size_t)>;

/// Classifies a nonnegative series from its first 2N terms. Rules apply in
/// order: (a) proved divergence when a termwise lower bound hook is present
/// and holds on the window; (b) proved convergence when a geometric-tail hook
/// is present and the ratio bound holds on the window; (c) otherwise the
/// heuristic S_2N > (1 + delta) S_N decides the heuristic kind. A hook
/// contradicted by the window is dropped (with a caveat), never trusted.
Verdict classify_series(const TermFn& term, std::size_t N, const DivergencePolicy& policy);

/// One step of the transfer-matrix form of the eigen-recurrence:
///   a_i = (W(i+1) - lambda) m(i+1) / b(i+1,i+2),  c_i = b(i,i+1) / b(i+1,i+2),
///   A_i = [[1 + a_i + c_i, -c_i], [1, 0]]  advancing (v(i+1), v(i)) to (v(i+2), v(i+1)).
struct Mat2 {
    Scalar a11, a12, a21, a22;

    Mat2 operator*(const Mat2& rhs) const;
    std::pair<Scalar, Scalar> apply(const Scalar& x1, const Scalar& x2) const;
    Scalar det() const;
    /// trace(M^T M) = sum of squared entries.
    Scalar gram_trace() const;
};

struct TransferStep {
    std::size_t i;
    Scalar a; // potential part
    Scalar c; // edge ratio part
    Mat2 A;
};

TransferStep transfer_step(const BirthDeathChain& chain, const Scalar& lambda, std::size_t i);

/// Largest singular value via the closed-form 2x2 symmetric eigenvalue
/// formula; float view, relative tolerance 1e-12.
double operator_norm_2x2(const Mat2& M);

/// k-th term of the trace-bound series:
///   prod_{i=0}^{k} [ (1 + a_i + c_i)^2 + c_i^2 + 1 ] * m(k+2), exact.
Scalar trace_bound_term(const BirthDeathChain& chain, const Scalar& lambda, std::size_t k);

/// Hamburger's criterion for the bare Laplacian: classifies
///   sum_k ( sum_{r<=k} 1/b_r )^2 m(k+1); divergence means essential self-adjointness.
Verdict hamburger(const BirthDeathChain& chain, std::size_t N, const DivergencePolicy& policy);

/// Positive-solution criterion: builds the normalized solution, requires it
/// positive, classifies sum_r ( sum_{k<=r} 1/(b_k v_k v_{k+1}) )^2 v(r+1)^2 m(r+1).
/// Divergence means essential self-adjointness.
Verdict positive_solution_criterion(const BirthDeathChain& chain, const SpectralParams& params,
                                    std::size_t N, const DivergencePolicy& policy);

/// Trace-bound failure criterion: classifies the trace_bound_term series.
/// Convergence implies the operator is NOT essentially self-adjoint; a
/// divergent verdict is inconclusive and carries a sufficient-condition caveat.
Verdict failure_criterion(const BirthDeathChain& chain, const SpectralParams& params,
                          std::size_t N, const DivergencePolicy& policy);

// --- certificate machinery shared by the solution-based criteria ---------

/// Whole-line check W(k) >= lambda (all k >= 0). This makes the normalized
/// solution positive and nondecreasing, the backbone of the proved tiers.
std::optional<std::size_t> potential_dominates_lambda(const BirthDeathChain& chain,
                                                      const Scalar& lambda);

/// Invariant growth envelope for the normalized solution at a given window
/// start: v(k+2)/v(k+1) <= R for every k >= k0. Requires W >= lambda.
struct GrowthCert {
    std::size_t k0;
    Scalar R;
};

std::optional<GrowthCert> solution_growth_cert(const BirthDeathChain& chain, const Scalar& lambda,
                                               const std::vector<Scalar>& values, std::size_t k0);

} // namespace bds
