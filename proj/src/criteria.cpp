#include "bds/criteria.hpp"

#include "bds/errors.hpp"
#include "bds/tail.hpp"

#include <algorithm>
#include <cmath>

namespace bds {

const char* to_cstring(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::ProvedDiverges: return "PROVED_DIVERGES";
    case VerdictKind::ProvedConverges: return "PROVED_CONVERGES";
    case VerdictKind::HeuristicDiverges: return "HEURISTIC_DIVERGES";
    case VerdictKind::HeuristicConverges: return "HEURISTIC_CONVERGES";
    }
    return "?";
}

bool is_proved(VerdictKind kind) {
    return kind == VerdictKind::ProvedDiverges || kind == VerdictKind::ProvedConverges;
}

bool is_diverges(VerdictKind kind) {
    return kind == VerdictKind::ProvedDiverges || kind == VerdictKind::HeuristicDiverges;
}

const char* to_cstring(Caveat caveat) {
    switch (caveat) {
    case Caveat::UnverifiedSemiBoundedness:
        return "unverified semi-boundedness: no lower bound K supplied";
    case Caveat::SufficientConditionOnly:
        return "sufficient condition only: no conclusion about essential self-adjointness";
    case Caveat::DivergenceHookContradicted:
        return "divergence hook contradicted by inspected window; demoted to heuristic";
    case Caveat::ConvergenceHookContradicted:
        return "convergence hook contradicted by inspected window; demoted to heuristic";
    }
    return "?";
}

Verdict classify_series(const TermFn& term, std::size_t N, const DivergencePolicy& policy) {
    if (N == 0) {
        throw DomainError("series classification needs at least one term");
    }
    const std::size_t total = 2 * N;
    std::vector<Scalar> t(total);
    Evidence ev;
    ev.termsInspected = total;
    ev.sumN = 0;
    ev.sum2N = 0;
    for (std::size_t k = 0; k < total; ++k) {
        t[k] = term(k);
        if (t[k] < 0) {
            throw InternalError("negative series term at k = " + std::to_string(k) +
                                "; classifier precondition violated upstream");
        }
        if (k < N) {
            ev.sumN += t[k];
        }
        ev.sum2N += t[k];
    }
    for (std::size_t k = 0; k < std::min<std::size_t>(10, total); ++k) {
        ev.sampleTerms.emplace_back(k, t[k]);
    }
    for (std::size_t k = total >= 2 ? total - 2 : 0; k < total; ++k) {
        if (k >= 10) {
            ev.sampleTerms.emplace_back(k, t[k]);
        }
    }

    std::vector<Caveat> caveats;

    if (policy.divergenceHook) {
        const auto& cert = *policy.divergenceHook;
        if (cert.eps > 0 && cert.k0 < total) {
            bool holds = true;
            for (std::size_t k = cert.k0; k < total; ++k) {
                if (t[k] < cert.eps) {
                    holds = false;
                    break;
                }
            }
            if (holds) {
                ev.tailBound = "termwise lower bound " + to_string(cert.eps) + " from k = " +
                               std::to_string(cert.k0) + " (" + cert.reason + ")";
                return Verdict{VerdictKind::ProvedDiverges, std::move(ev), std::move(caveats)};
            }
            caveats.push_back(Caveat::DivergenceHookContradicted);
        }
    }

    if (policy.convergenceHook) {
        const auto& cert = *policy.convergenceHook;
        if (cert.q < 1 && cert.q > 0 && cert.k0 + 1 < total) {
            bool holds = true;
            for (std::size_t k = cert.k0; k + 1 < total; ++k) {
                if (t[k + 1] > cert.q * t[k]) {
                    holds = false;
                    break;
                }
            }
            if (holds) {
                ev.tailBound = "eventual ratio bound " + to_string(cert.q) + " from k = " +
                               std::to_string(cert.k0) + " (" + cert.reason + ")";
                return Verdict{VerdictKind::ProvedConverges, std::move(ev), std::move(caveats)};
            }
            caveats.push_back(Caveat::ConvergenceHookContradicted);
        }
    }

    const bool grows = ev.sum2N > (1 + policy.delta) * ev.sumN;
    ev.tailBound = "heuristic partial-sum comparison only";
    return Verdict{grows ? VerdictKind::HeuristicDiverges : VerdictKind::HeuristicConverges,
                   std::move(ev), std::move(caveats)};
}

Mat2 Mat2::operator*(const Mat2& r) const {
    return Mat2{a11 * r.a11 + a12 * r.a21, a11 * r.a12 + a12 * r.a22,
                a21 * r.a11 + a22 * r.a21, a21 * r.a12 + a22 * r.a22};
}

std::pair<Scalar, Scalar> Mat2::apply(const Scalar& x1, const Scalar& x2) const {
    return {a11 * x1 + a12 * x2, a21 * x1 + a22 * x2};
}

Scalar Mat2::det() const {
    return a11 * a22 - a12 * a21;
}

Scalar Mat2::gram_trace() const {
    return a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
}

TransferStep transfer_step(const BirthDeathChain& chain, const Scalar& lambda, std::size_t i) {
    TransferStep step;
    step.i = i;
    step.a = (chain.potential(i + 1) - lambda) * chain.measure(i + 1) / chain.edge(i + 1);
    step.c = chain.edge(i) / chain.edge(i + 1);
    step.A = Mat2{1 + step.a + step.c, -step.c, Scalar(1), Scalar(0)};
    return step;
}

double operator_norm_2x2(const Mat2& M) {
    // M^T M = [[p, q], [q, s]]; largest eigenvalue by the quadratic formula.
    const Scalar p = M.a11 * M.a11 + M.a21 * M.a21;
    const Scalar s = M.a12 * M.a12 + M.a22 * M.a22;
    const Scalar q = M.a11 * M.a12 + M.a21 * M.a22;
    const double pd = to_double(p);
    const double sd = to_double(s);
    const double qd = to_double(q);
    const double disc = std::sqrt((pd - sd) * (pd - sd) + 4.0 * qd * qd);
    return std::sqrt(0.5 * ((pd + sd) + disc));
}

Scalar trace_bound_term(const BirthDeathChain& chain, const Scalar& lambda, std::size_t k) {
    Scalar product = 1;
    for (std::size_t i = 0; i <= k; ++i) {
        const TransferStep step = transfer_step(chain, lambda, i);
        const Scalar head = 1 + step.a + step.c;
        product *= head * head + step.c * step.c + 1;
    }
    return product * chain.measure(k + 2);
}

// --------------------------------------------------------------------------
// Certificate derivations. Each one is a small theorem about the chain's
// tail families; the classifier re-verifies every claim on the inspected
// window before a proved verdict is emitted.

std::optional<std::size_t> potential_dominates_lambda(const BirthDeathChain& chain,
                                                      const Scalar& lambda) {
    return verified_all_at_least(chain.W, lambda);
}

std::optional<GrowthCert> solution_growth_cert(const BirthDeathChain& chain, const Scalar& lambda,
                                               const std::vector<Scalar>& values, std::size_t k0) {
    if (values.size() < k0 + 3) {
        return std::nullopt;
    }
    if (!potential_dominates_lambda(chain, lambda)) {
        return std::nullopt;
    }
    // With W >= lambda the normalized solution is positive and nondecreasing,
    // so the growth ratio rho_k = v(k+2)/v(k+1) obeys
    //   rho_k = (1 + a_k + c_k) - c_k / rho_{k-1},  rho >= 1.
    // If rho_{k0} <= R and R^2 - (1 + aBar + cBar) R + cLo >= 0 for bounds
    // valid over j >= k0 + 1, then rho_k <= R for every k >= k0.
    Scalar cLo, cBar;
    if (auto ratio = exact_tail_ratio(chain.b); ratio && ratio->first > 0 &&
                                                k0 + 1 >= (ratio->second > 0 ? ratio->second : 0) &&
                                                k0 + 1 >= ratio->second) {
        cLo = cBar = 1 / ratio->first;
    } else if (auto nd = nondecreasing_from(chain.b); nd && k0 + 2 >= *nd + 1) {
        cLo = 0;
        cBar = 1;
    } else {
        return std::nullopt;
    }
    auto wSup = certified_tail_sup(chain.W, k0 + 2);
    auto mSup = certified_tail_sup(chain.m, k0 + 2);
    auto bInf = certified_tail_inf(chain.b, k0 + 3);
    if (!wSup || !mSup || !bInf || *bInf <= 0) {
        return std::nullopt;
    }
    Scalar aBar = (*wSup - lambda) * *mSup / *bInf;
    if (aBar < 0) {
        aBar = 0;
    }
    const Scalar rho = values[k0 + 2] / values[k0 + 1];
    Scalar R = std::max(rho, Scalar(1));
    for (int step = 0; step < 48; ++step) {
        if (R * R - (1 + aBar + cBar) * R + cLo >= 0) {
            return GrowthCert{k0, R};
        }
        R *= Scalar(17) / 16;
    }
    return std::nullopt;
}

namespace {

/// Largest window-start index tried while searching for a geometric-tail
/// certificate. Beyond this the verdict falls back to heuristic.
constexpr std::size_t kCertSearchLimit = 48;

std::optional<DivergenceCert> hamburger_divergence_cert(const BirthDeathChain& chain) {
    auto mInf = certified_tail_inf(chain.m, 1);
    if (!mInf || *mInf <= 0) {
        return std::nullopt;
    }
    const Scalar sigma0 = 1 / chain.edge(0);
    return DivergenceCert{sigma0 * sigma0 * *mInf, 0,
                          "reciprocal sums are nondecreasing and the measure has positive tail infimum " +
                              to_string(*mInf)};
}

std::optional<ConvergenceCert> hamburger_convergence_cert(const BirthDeathChain& chain,
                                                          const std::vector<Scalar>& sigma) {
    auto mRatio = exact_tail_ratio(chain.m);
    if (!mRatio || mRatio->first <= 0 || mRatio->first >= 1) {
        return std::nullopt;
    }
    auto bFrom = nondecreasing_from(chain.b);
    if (!bFrom) {
        return std::nullopt;
    }
    const Scalar qm = mRatio->first;
    std::size_t start = mRatio->second > 0 ? mRatio->second - 1 : 0;
    start = std::max(start, *bFrom > 0 ? *bFrom - 1 : 0);
    for (std::size_t k0 = start; k0 < start + kCertSearchLimit && k0 + 1 < sigma.size(); ++k0) {
        const Scalar g = 1 + 1 / (chain.edge(k0 + 1) * sigma[k0]);
        const Scalar q = g * g * qm;
        if (q < 1) {
            return ConvergenceCert{q, k0,
                                   "measure tail ratio " + to_string(qm) +
                                       " with nonincreasing reciprocal increments beyond k = " +
                                       std::to_string(k0)};
        }
    }
    return std::nullopt;
}

} // namespace

Verdict hamburger(const BirthDeathChain& chain, std::size_t N, const DivergencePolicy& policy) {
    if (N == 0) {
        throw DomainError("hamburger criterion needs at least one term");
    }
    const std::size_t total = 2 * N;
    // sigma_k = sum_{r<=k} 1/b_r
    std::vector<Scalar> sigma(total + 1);
    Scalar acc = 0;
    for (std::size_t k = 0; k <= total; ++k) {
        acc += 1 / chain.edge(k);
        sigma[k] = acc;
    }

    DivergencePolicy p = policy;
    p.divergenceHook = hamburger_divergence_cert(chain);
    p.convergenceHook = hamburger_convergence_cert(chain, sigma);

    auto term = [&chain, &sigma](std::size_t k) {
        return sigma[k] * sigma[k] * chain.measure(k + 1);
    };
    return classify_series(term, N, p);
}

Verdict positive_solution_criterion(const BirthDeathChain& chain, const SpectralParams& params,
                                    std::size_t N, const DivergencePolicy& policy) {
    if (N == 0) {
        throw DomainError("positive-solution criterion needs at least one term");
    }
    const std::size_t total = 2 * N;
    const Solution sol = solve_forward(chain, params, Scalar(1), std::nullopt, total + 1);
    for (std::size_t k = 0; k <= total + 1; ++k) {
        if (sol.values[k] <= 0) {
            throw PositivityError("no positive solution witnessed at lambda = " +
                                  to_string(params.lambda) + ": v(" + std::to_string(k) +
                                  ") = " + to_string(sol.values[k]));
        }
    }

    // inner_r = sum_{k<=r} 1/(b_k v_k v_{k+1})
    std::vector<Scalar> inner(total + 1);
    Scalar acc = 0;
    for (std::size_t k = 0; k <= total; ++k) {
        acc += 1 / (chain.edge(k) * sol.values[k] * sol.values[k + 1]);
        inner[k] = acc;
    }

    DivergencePolicy p = policy;
    const bool dominated = potential_dominates_lambda(chain, params.lambda).has_value();
    if (dominated) {
        if (auto mInf = certified_tail_inf(chain.m, 1); mInf && *mInf > 0) {
            p.divergenceHook = DivergenceCert{
                inner[0] * inner[0] * sol.values[1] * sol.values[1] * *mInf, 0,
                "solution nondecreasing (potential dominates the shift) and measure tail infimum " +
                    to_string(*mInf)};
        }
        if (auto mRatio = exact_tail_ratio(chain.m);
            mRatio && mRatio->first > 0 && mRatio->first < 1) {
            const Scalar qm = mRatio->first;
            const std::size_t start = mRatio->second > 0 ? mRatio->second - 1 : 0;
            for (std::size_t k0 = start; k0 < start + kCertSearchLimit && k0 + 2 < sol.values.size();
                 ++k0) {
                auto growth = solution_growth_cert(chain, params.lambda, sol.values, k0);
                if (!growth) {
                    continue;
                }
                auto bInf = certified_tail_inf(chain.b, k0 + 1);
                if (!bInf || *bInf <= 0) {
                    break;
                }
                const Scalar g =
                    1 + 1 / (*bInf * sol.values[k0 + 1] * sol.values[k0 + 2] * inner[k0]);
                const Scalar q = g * g * growth->R * growth->R * qm;
                if (q < 1) {
                    p.convergenceHook = ConvergenceCert{
                        q, k0,
                        "geometric measure tail " + to_string(qm) + " against growth envelope " +
                            to_string(growth->R)};
                    break;
                }
            }
        }
    }

    auto term = [&chain, &sol, &inner](std::size_t r) {
        const Scalar& v = sol.values[r + 1];
        return inner[r] * inner[r] * v * v * chain.measure(r + 1);
    };
    Verdict verdict = classify_series(term, N, p);
    if (!params.K) {
        verdict.caveats.push_back(Caveat::UnverifiedSemiBoundedness);
    }
    return verdict;
}

Verdict failure_criterion(const BirthDeathChain& chain, const SpectralParams& params,
                          std::size_t N, const DivergencePolicy& policy) {
    if (N == 0) {
        throw DomainError("failure criterion needs at least one term");
    }
    const std::size_t total = 2 * N;
    // Running products of the per-step trace factors (each factor exceeds 1).
    std::vector<Scalar> product(total);
    std::vector<Scalar> factor(total + 1);
    Scalar acc = 1;
    for (std::size_t k = 0; k < total; ++k) {
        const TransferStep step = transfer_step(chain, params.lambda, k);
        const Scalar head = 1 + step.a + step.c;
        factor[k] = head * head + step.c * step.c + 1;
        acc *= factor[k];
        product[k] = acc;
    }

    DivergencePolicy p = policy;
    if (auto mInf = certified_tail_inf(chain.m, 2); mInf && *mInf > 0) {
        p.divergenceHook =
            DivergenceCert{factor[0] * *mInf, 0,
                           "every trace factor exceeds 1 and the measure has positive tail infimum " +
                               to_string(*mInf)};
    }
    if (auto mRatio = exact_tail_ratio(chain.m); mRatio && mRatio->first > 0 && mRatio->first < 1) {
        const Scalar qm = mRatio->first;
        const std::size_t start = mRatio->second >= 2 ? mRatio->second - 2 : 0;
        for (std::size_t k0 = start; k0 < start + kCertSearchLimit; ++k0) {
            // Interval bounds for a_i, c_i over i >= k0 + 1.
            auto wLo = certified_tail_inf(chain.W, k0 + 2);
            auto wHi = certified_tail_sup(chain.W, k0 + 2);
            auto mLo = certified_tail_inf(chain.m, k0 + 2);
            auto mHi = certified_tail_sup(chain.m, k0 + 2);
            auto bLo = certified_tail_inf(chain.b, k0 + 3);
            auto bHi = certified_tail_sup(chain.b, k0 + 3);
            if (!wLo || !wHi || !mLo || !mHi || !bLo || *bLo <= 0) {
                break;
            }
            Scalar cLo, cHi;
            if (auto bRatio = exact_tail_ratio(chain.b);
                bRatio && bRatio->first > 0 && k0 + 1 >= bRatio->second) {
                cLo = cHi = 1 / bRatio->first;
            } else if (auto nd = nondecreasing_from(chain.b); nd && k0 + 2 >= *nd + 1) {
                cLo = 0;
                cHi = 1;
            } else {
                break;
            }
            // a = (W - lambda) m / b with m > 0, b > 0.
            const Scalar n1 = *wLo - params.lambda;
            const Scalar n2 = *wHi - params.lambda;
            const Scalar prodLo =
                std::min(std::min(Scalar(n1 * *mLo), Scalar(n1 * *mHi)),
                         std::min(Scalar(n2 * *mLo), Scalar(n2 * *mHi)));
            const Scalar prodHi =
                std::max(std::max(Scalar(n1 * *mLo), Scalar(n1 * *mHi)),
                         std::max(Scalar(n2 * *mLo), Scalar(n2 * *mHi)));
            Scalar aLo, aHi;
            if (bHi) {
                aLo = std::min(Scalar(prodLo / *bLo), Scalar(prodLo / *bHi));
                aHi = std::max(Scalar(prodHi / *bLo), Scalar(prodHi / *bHi));
            } else {
                // b unbounded above: quotients shrink toward 0 in magnitude.
                aLo = std::min(Scalar(prodLo / *bLo), Scalar(0));
                aHi = std::max(Scalar(prodHi / *bLo), Scalar(0));
            }
            const Scalar sLo = 1 + aLo + cLo;
            const Scalar sHi = 1 + aHi + cHi;
            const Scalar headSq = std::max(sLo * sLo, sHi * sHi);
            const Scalar fBar = headSq + cHi * cHi + 1;
            const Scalar q = fBar * qm;
            if (q < 1) {
                p.convergenceHook = ConvergenceCert{
                    q, k0,
                    "trace factors bounded by " + to_string(fBar) + " against measure tail ratio " +
                        to_string(qm)};
                break;
            }
        }
    }

    auto term = [&chain, &product](std::size_t k) { return product[k] * chain.measure(k + 2); };
    Verdict verdict = classify_series(term, N, p);
    if (!params.K) {
        verdict.caveats.push_back(Caveat::UnverifiedSemiBoundedness);
    }
    if (is_diverges(verdict.kind)) {
        verdict.caveats.push_back(Caveat::SufficientConditionOnly);
    }
    return verdict;
}

} // namespace bds
