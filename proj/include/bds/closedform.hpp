#pragma once

#include "bds/chain.hpp"
#include "bds/criteria.hpp"
#include "bds/scalar.hpp"

#include <functional>
#include <vector>

namespace bds {

/// An ordered tuple of parts in {1, 2} summing to targetSum. The derived
/// offsets c_i = targetSum' - (partial sum of parts) index the chain data
/// inside the closed-form products.
struct Composition {
    std::vector<int> parts;
    std::size_t targetSum = 0;
};

/// All compositions of k into parts 1 and 2 in lexicographic order of parts;
/// with requireLastTwo only those whose final part is 2. k = 0 yields the
/// empty list (the k = 0 coefficients are handled by convention).
std::vector<Composition> enumerate_compositions(std::size_t k, bool requireLastTwo);

/// Closed-form coefficients of the normalized solution: v(k+1) = (alpha_k + beta_k) v(0).
struct CoefficientPair {
    std::size_t k = 0;
    Scalar alpha;
    Scalar beta;
    Scalar theta;
};

/// Test hook: maps a composition-product factor to a (possibly corrupted)
/// replacement. kind is the part size (1 or 2), offset the c index the factor
/// is evaluated at (offset -1 occurs only as the forced final part of the
/// beta sums).
using FactorHook = std::function<Scalar(const Scalar& factor, long offset, int kind)>;

struct AlphaBetaOptions {
    std::size_t cap = 30; // enumeration is Fibonacci-sized; fail loudly beyond this
    FactorHook hook;      // identity when empty
};

/// alpha_k carries the prefactor theta and sums products over compositions of
/// k; beta_k sums products over compositions of k+1 whose last part is 2.
/// A part 1 at offset c contributes 1 + (b_c + (W_{c+1} - lambda) m_{c+1}) / b_{c+1},
/// a part 2 contributes -b_{c+1} / b_{c+2}; empty products are 1. Exact.
CoefficientPair alpha_beta(const BirthDeathChain& chain, const Scalar& lambda, std::size_t k,
                           const AlphaBetaOptions& options = {});

/// (alpha_k + beta_k)^2 m(k+1), the k-th term of the characterization series.
Scalar characterization_term(const BirthDeathChain& chain, const Scalar& lambda, std::size_t k,
                             const AlphaBetaOptions& options = {});

/// Characterization of essential self-adjointness for the semi-bounded
/// operator: classifies the series sum_k (alpha_k + beta_k)^2 m(k+1).
/// Divergence means essentially self-adjoint, convergence means not. The term
/// stream is produced through the recurrence solution (exactly equal to the
/// closed form, which enumeration cannot reach at window scale); a missing K
/// adds an unverified-semi-boundedness caveat.
Verdict esa_characterize(const BirthDeathChain& chain, const SpectralParams& params, std::size_t N,
                         const DivergencePolicy& policy);

} // namespace bds
