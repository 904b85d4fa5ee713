#include "bds/chain.hpp"

#include "bds/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bds {

Scalar BirthDeathChain::edge(std::size_t k) const {
    Scalar v = b.eval(static_cast<std::int64_t>(k));
    if (v <= 0) {
        throw InvalidChainError("edge weight b(" + std::to_string(k) + "," + std::to_string(k + 1) +
                                ") = " + to_string(v) + " is not positive");
    }
    return v;
}

Scalar BirthDeathChain::measure(std::size_t k) const {
    Scalar v = m.eval(static_cast<std::int64_t>(k));
    if (v <= 0) {
        throw InvalidChainError("measure m(" + std::to_string(k) + ") = " + to_string(v) +
                                " is not positive");
    }
    return v;
}

Scalar BirthDeathChain::potential(std::size_t k) const {
    return W.eval(static_cast<std::int64_t>(k));
}

SpectralParams::SpectralParams(Scalar lambda_, std::optional<Scalar> K_)
    : lambda(std::move(lambda_)), K(std::move(K_)) {
    if (K && !(lambda < *K)) {
        throw DomainError("spectral shift lambda = " + to_string(lambda) +
                          " must lie strictly below the asserted lower bound K = " + to_string(*K));
    }
}

Scalar theta(const BirthDeathChain& chain, const Scalar& lambda) {
    return 1 + (chain.potential(0) - lambda) * chain.measure(0) / chain.edge(0);
}

Scalar apply_schrodinger(const BirthDeathChain& chain, const std::vector<Scalar>& v,
                         std::size_t r, const Scalar& lambda) {
    if (r + 1 >= v.size()) {
        throw DomainError("solution values too short: need index " + std::to_string(r + 1) +
                          ", have " + std::to_string(v.size()) + " entries");
    }
    Scalar acc = chain.edge(r) * (v[r] - v[r + 1]);
    if (r >= 1) {
        acc += chain.edge(r - 1) * (v[r] - v[r - 1]);
    }
    return acc / chain.measure(r) + (chain.potential(r) - lambda) * v[r];
}

Solution solve_forward(const BirthDeathChain& chain, const SpectralParams& params,
                       const Scalar& v0, const std::optional<Scalar>& v1, std::size_t N) {
    if (N < 1) {
        throw DomainError("solve_forward needs N >= 1");
    }
    chain.b.require_positive(N, "edge weight b");
    chain.m.require_positive(N, "measure m");

    Solution sol;
    sol.lambda = params.lambda;
    sol.v0 = v0;
    sol.imposedAtZero = !v1.has_value();
    sol.v1 = v1 ? *v1 : Scalar(theta(chain, params.lambda) * v0);

    sol.values.resize(N + 1);
    sol.values[0] = v0;
    sol.values[1] = sol.v1;
    for (std::size_t r = 1; r + 1 <= N; ++r) {
        const Scalar br = chain.edge(r);
        const Scalar bprev = chain.edge(r - 1);
        const Scalar& vr = sol.values[r];
        sol.values[r + 1] = vr + (bprev / br) * (vr - sol.values[r - 1]) +
                            (chain.potential(r) - params.lambda) * chain.measure(r) * vr / br;
    }
    sol.C = chain.edge(0) * (sol.v1 - sol.v0);
    return sol;
}

Solution full_history_solve(const BirthDeathChain& chain,
                            const std::function<Scalar(std::size_t)>& weff,
                            const Scalar& v0, const Scalar& v1, std::size_t N) {
    if (N < 1) {
        throw DomainError("full_history_solve needs N >= 1");
    }
    chain.b.require_positive(N, "edge weight b");
    chain.m.require_positive(N, "measure m");

    Solution sol;
    sol.lambda = 0; // shift already folded into weff
    sol.v0 = v0;
    sol.v1 = v1;
    sol.imposedAtZero = false;
    sol.C = chain.edge(0) * (v1 - v0);

    sol.values.resize(N + 1);
    sol.values[0] = v0;
    sol.values[1] = v1;
    // Running partial sums of the double-sum formula, extended one index at a
    // time: reciprocals = sum_{k<=r} 1/b_k, inner = sum_{n<=r} v_n weff_n m_n,
    // history = sum_{k<=r} inner_k / b_k.
    Scalar reciprocals = 0;
    Scalar history = 0;
    Scalar inner = 0;
    for (std::size_t r = 1; r + 1 <= N; ++r) {
        const Scalar br = chain.edge(r);
        reciprocals += 1 / br;
        inner += sol.values[r] * weff(r) * chain.measure(r);
        history += inner / br;
        sol.values[r + 1] = v1 + sol.C * reciprocals + history;
    }
    return sol;
}

Solution full_history_solve(const BirthDeathChain& chain, const SequenceSpec& weff,
                            const Scalar& v0, const Scalar& v1, std::size_t N) {
    return full_history_solve(
        chain, [&weff](std::size_t k) { return weff.eval(static_cast<std::int64_t>(k)); }, v0, v1,
        N);
}

Solution full_history_solve_folded(const BirthDeathChain& chain, const Scalar& lambda,
                                   const Scalar& v0, const Scalar& v1, std::size_t N) {
    return full_history_solve(
        chain, [&chain, &lambda](std::size_t k) { return chain.potential(k) - lambda; }, v0, v1, N);
}

Scalar l2_norm_partial(const Solution& sol, const BirthDeathChain& chain, std::size_t N) {
    if (N >= sol.values.size()) {
        throw DomainError("solution defined through index " + std::to_string(sol.values.size() - 1) +
                          ", norm requested through " + std::to_string(N));
    }
    Scalar acc = 0;
    for (std::size_t k = 0; k <= N; ++k) {
        acc += sol.values[k] * sol.values[k] * chain.measure(k);
    }
    return acc;
}

Scalar energy_form(const BirthDeathChain& chain, const std::vector<Scalar>& phi,
                   const std::vector<Scalar>& psi) {
    const std::size_t support = std::max(phi.size(), psi.size());
    auto at = [](const std::vector<Scalar>& f, std::size_t idx) -> Scalar {
        return idx < f.size() ? f[idx] : Scalar(0);
    };
    Scalar acc = 0;
    for (std::size_t r = 0; r < support; ++r) {
        acc += chain.edge(r) * (at(phi, r) - at(phi, r + 1)) * (at(psi, r) - at(psi, r + 1));
    }
    return acc;
}

namespace {

/// Eigenvalues of (T - x M) counted below x via the Sturm sequence of the
/// LDL^T pivots of the shifted tridiagonal matrix.
int count_below(const std::vector<double>& diag, const std::vector<double>& off,
                const std::vector<double>& mass, double x) {
    int count = 0;
    double d = diag[0] - x * mass[0];
    if (d == 0.0) {
        d = -1e-300;
    }
    if (d < 0) {
        ++count;
    }
    for (std::size_t r = 1; r < diag.size(); ++r) {
        d = (diag[r] - x * mass[r]) - off[r - 1] * off[r - 1] / d;
        if (d == 0.0) {
            d = -1e-300;
        }
        if (d < 0) {
            ++count;
        }
    }
    return count;
}

} // namespace

double estimate_lower_bound(const BirthDeathChain& chain, std::size_t N) {
    if (N < 1) {
        throw DomainError("estimate_lower_bound needs N >= 1");
    }
    chain.b.require_positive(N, "edge weight b");
    chain.m.require_positive(N, "measure m");

    // Quadratic form matrix on {0..N} with the Dirichlet boundary term b_N phi_N^2:
    //   diag_r = b_{r-1} + b_r + W_r m_r   (b_{-1} = 0), off-diagonal -b_r.
    const std::size_t n = N + 1;
    std::vector<double> diag(n), off(N), mass(n);
    double prev_b = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double br = to_double(chain.edge(r));
        const double mr = to_double(chain.measure(r));
        diag[r] = prev_b + br + to_double(chain.potential(r)) * mr;
        mass[r] = mr;
        if (r < N) {
            off[r] = -br;
        }
        prev_b = br;
    }

    // Gershgorin bracket for the pencil (rows of M^{-1} T).
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n; ++r) {
        double radius = 0.0;
        if (r > 0) {
            radius += std::abs(off[r - 1]);
        }
        if (r < N) {
            radius += std::abs(off[r]);
        }
        lo = std::min(lo, (diag[r] - radius) / mass[r]);
        hi = std::max(hi, (diag[r] + radius) / mass[r]);
    }
    if (lo == hi) {
        return lo;
    }

    const double tol = 1e-12;
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(diag, off, mass, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo <= tol * std::max(1.0, std::abs(lo) + std::abs(hi))) {
            break;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace bds
