#pragma once

#include "bds/scalar.hpp"
#include "bds/sequence.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace bds {

/// A birth-death chain on the nonnegative integers: edge weights b(k,k+1) > 0,
/// vertex measure m(k) > 0 and a potential W(k) of arbitrary sign.
/// b(k+1,k) = b(k,k+1) is implicit in the single-sequence representation.
struct BirthDeathChain {
    SequenceSpec b;
    SequenceSpec m;
    SequenceSpec W;

    /// b(k,k+1), validated positive at every evaluated index.
    Scalar edge(std::size_t k) const;
    /// m(k), validated positive at every evaluated index.
    Scalar measure(std::size_t k) const;
    /// W(k).
    Scalar potential(std::size_t k) const;
};

/// Spectral shift and optional user-asserted lower bound of the energy form.
/// When K is present the shift must satisfy lambda < K.
struct SpectralParams {
    Scalar lambda;
    std::optional<Scalar> K;

    explicit SpectralParams(Scalar lambda_, std::optional<Scalar> K_ = std::nullopt);
};

/// Boundary constant of the normalized solution: 1 + (W(0) - lambda) m(0) / b(0,1).
Scalar theta(const BirthDeathChain& chain, const Scalar& lambda);

/// Truncated solution v(0..N) of the eigen-recurrence together with its
/// boundary data. C = b(1,0) (v(1) - v(0)). When imposedAtZero is set, the
/// equation also holds at r = 0, which forces v(1) = theta * v(0).
struct Solution {
    std::vector<Scalar> values;
    Scalar lambda;
    Scalar v0;
    Scalar v1;
    Scalar C;
    bool imposedAtZero = false;
};

/// Pointwise operator application:
///   (1/m_r)[ b_r (v_r - v_{r+1}) + (r >= 1 ? b_{r-1} (v_r - v_{r-1}) : 0) ] + (W_r - lambda) v_r
Scalar apply_schrodinger(const BirthDeathChain& chain, const std::vector<Scalar>& v,
                         std::size_t r, const Scalar& lambda);

/// Marches the second-order recurrence forward: solves the pointwise equation
/// for v_{r+1} at r = 1..N-1. If v1 is absent it is derived from the r = 0
/// equation as theta * v0 (imposedAtZero = true).
Solution solve_forward(const BirthDeathChain& chain, const SpectralParams& params,
                       const Scalar& v0, const std::optional<Scalar>& v1, std::size_t N);

/// Independent oracle for solve_forward: evaluates the full-history form
///   v(r+1) = v(1) + C sum_{k=1}^{r} 1/b_k + sum_{k=1}^{r} (1/b_k) sum_{n=1}^{k} v(n) weff(n) m(n)
/// literally (double sum, no algebraic simplification). The potential here is
/// the effective one: callers fold the spectral shift in beforehand.
Solution full_history_solve(const BirthDeathChain& chain, const SequenceSpec& weff,
                            const Scalar& v0, const Scalar& v1, std::size_t N);
Solution full_history_solve(const BirthDeathChain& chain,
                            const std::function<Scalar(std::size_t)>& weff,
                            const Scalar& v0, const Scalar& v1, std::size_t N);

/// full_history_solve with weff(k) = W(k) - lambda folded from the chain's own
/// potential (convenience for callers holding a plain chain plus a shift).
Solution full_history_solve_folded(const BirthDeathChain& chain, const Scalar& lambda,
                                   const Scalar& v0, const Scalar& v1, std::size_t N);

/// sum_{k=0}^{N} v_k^2 m_k, exact.
Scalar l2_norm_partial(const Solution& sol, const BirthDeathChain& chain, std::size_t N);

/// Energy form Q(phi, psi) = sum_{r>=0} b_r (phi_r - phi_{r+1})(psi_r - psi_{r+1})
/// for finitely supported sequences (entries beyond the vectors are zero).
Scalar energy_form(const BirthDeathChain& chain, const std::vector<Scalar>& phi,
                   const std::vector<Scalar>& psi);

/// Advisory finite-section estimate of the form's lower bound: the smallest
/// eigenvalue of the quadratic form Q(phi,phi) + sum W_k phi_k^2 m_k on
/// sequences supported in {0..N} (boundary term b_N phi_N^2 included), taken
/// in the m-weighted inner product. Sturm-sequence bisection on the symmetric
/// tridiagonal pencil, float view, relative tolerance 1e-12. Finite sections
/// converge to the optimal bound from above, so this cannot certify lambda < K.
double estimate_lower_bound(const BirthDeathChain& chain, std::size_t N);

} // namespace bds
