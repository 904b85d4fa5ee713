#include "bds/closedform.hpp"

#include "bds/errors.hpp"
#include "bds/tail.hpp"

#include <utility>

namespace bds {

namespace {

void build_compositions(std::size_t remaining, std::vector<int>& current,
                        std::vector<Composition>& out, std::size_t targetSum,
                        bool requireLastTwo) {
    if (remaining == 0) {
        if (!requireLastTwo || (!current.empty() && current.back() == 2)) {
            out.push_back(Composition{current, targetSum});
        }
        return;
    }
    for (int part = 1; part <= 2; ++part) {
        if (static_cast<std::size_t>(part) <= remaining) {
            current.push_back(part);
            build_compositions(remaining - static_cast<std::size_t>(part), current, out, targetSum,
                               requireLastTwo);
            current.pop_back();
        }
    }
}

/// Per-offset factors of the composition products, scaled to integers over a
/// common denominator. A part-1 factor at offset c consumes the scale S(c); a
/// part-2 factor at offset c also absorbs S(c+1) for the offset it jumps
/// over, so every path from k down to the target consumes every offset scale
/// in between exactly once and the walk runs in plain integers.
struct FactorTable {
    Scalar partTwoAtMinusOne;        // the forced final factor of the beta sums
    std::vector<Integer> one;        // f1(c) * S(c), c = 0..k-1
    std::vector<Integer> two;        // f2(c) * S(c) * S(c+1), c = 0..k-2
    std::vector<Integer> scale;      // S(c), c = 0..k-1

    const Integer& part_one(std::size_t c) const { return one[c]; }
    const Integer& part_two(std::size_t c) const { return two[c]; }

    /// prod_{c=from}^{k-1} S(c).
    Integer scale_product(std::size_t from) const {
        Integer acc = 1;
        for (std::size_t c = from; c < scale.size(); ++c) {
            acc *= scale[c];
        }
        return acc;
    }
};

FactorTable build_factors(const BirthDeathChain& chain, const Scalar& lambda, std::size_t k,
                          const FactorHook& hook) {
    FactorTable table;
    {
        Scalar f = -chain.edge(0) / chain.edge(1);
        table.partTwoAtMinusOne = hook ? hook(f, -1, 2) : f;
    }
    if (k == 0) {
        return table;
    }
    std::vector<Scalar> one(k), two(k >= 1 ? k - 1 : 0);
    for (std::size_t c = 0; c < k; ++c) {
        Scalar f = 1 + (chain.edge(c) + (chain.potential(c + 1) - lambda) * chain.measure(c + 1)) /
                           chain.edge(c + 1);
        one[c] = hook ? hook(f, static_cast<long>(c), 1) : f;
    }
    for (std::size_t c = 0; c + 1 < k; ++c) {
        Scalar f = -chain.edge(c + 1) / chain.edge(c + 2);
        two[c] = hook ? hook(f, static_cast<long>(c), 2) : f;
    }
    table.scale.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        table.scale[c] = denominator(one[c]);
        if (c + 1 < k) {
            table.scale[c] = lcm(table.scale[c], denominator(two[c]));
        }
    }
    table.one.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        table.one[c] = numerator(one[c]) * (table.scale[c] / denominator(one[c]));
    }
    table.two.resize(two.size());
    for (std::size_t c = 0; c + 1 < k; ++c) {
        table.two[c] =
            numerator(two[c]) * (table.scale[c] * table.scale[c + 1] / denominator(two[c]));
    }
    return table;
}

/// Sum of scaled composition products along every path from offset `from`
/// down to offset `to` (part 1 steps the offset by one, part 2 by two; the
/// factor is taken at the offset reached). Depth-first walk visiting each
/// composition exactly once; per-depth buffers keep the hot loop lean.
struct CompositionWalk {
    const FactorTable& table;
    std::size_t target;
    std::vector<Integer> products; // running scaled product by depth
    Integer total = 0;

    CompositionWalk(const FactorTable& table_, std::size_t from, std::size_t to)
        : table(table_), target(to), products(from - to + 1) {
        products[0] = 1;
        descend(from, 0);
    }

    void descend(std::size_t c, std::size_t depth) {
        if (c == target) {
            total += products[depth];
            return;
        }
        products[depth + 1] = products[depth] * table.part_one(c - 1);
        descend(c - 1, depth + 1);
        if (c >= target + 2) {
            products[depth + 1] = products[depth] * table.part_two(c - 2);
            descend(c - 2, depth + 1);
        }
    }
};

/// Exact rational value of the composition sum: the integer walk divided by
/// the scales every path from `from` to `to` consumes.
Scalar composition_sum(const FactorTable& table, std::size_t from, std::size_t to) {
    if (from < to) {
        return 0;
    }
    if (from == to) {
        return 1; // single empty composition
    }
    return Scalar(CompositionWalk(table, from, to).total, table.scale_product(to));
}

} // namespace

std::vector<Composition> enumerate_compositions(std::size_t k, bool requireLastTwo) {
    std::vector<Composition> out;
    if (k == 0) {
        return out;
    }
    std::vector<int> current;
    build_compositions(k, current, out, k, requireLastTwo);
    return out;
}

CoefficientPair alpha_beta(const BirthDeathChain& chain, const Scalar& lambda, std::size_t k,
                           const AlphaBetaOptions& options) {
    if (k > options.cap) {
        throw CapExceededError("composition enumeration cap " + std::to_string(options.cap) +
                               " exceeded at k = " + std::to_string(k) +
                               "; raise it via --cap or BDS_COMPOSITION_CAP");
    }
    CoefficientPair pair;
    pair.k = k;
    pair.theta = theta(chain, lambda);
    if (k == 0) {
        pair.alpha = pair.theta;
        pair.beta = 0;
        return pair;
    }
    const FactorTable table = build_factors(chain, lambda, k, options.hook);
    pair.alpha = pair.theta * composition_sum(table, k, 0);
    // Compositions of k+1 with final part 2: a composition of k-1 followed by
    // the forced part at offset -1.
    pair.beta = table.partTwoAtMinusOne * composition_sum(table, k, 1);
    return pair;
}

Scalar characterization_term(const BirthDeathChain& chain, const Scalar& lambda, std::size_t k,
                             const AlphaBetaOptions& options) {
    const CoefficientPair pair = alpha_beta(chain, lambda, k, options);
    const Scalar sum = pair.alpha + pair.beta;
    return sum * sum * chain.measure(k + 1);
}

Verdict esa_characterize(const BirthDeathChain& chain, const SpectralParams& params, std::size_t N,
                         const DivergencePolicy& policy) {
    if (N == 0) {
        throw DomainError("characterization needs at least one term");
    }
    const std::size_t total = 2 * N;
    // (alpha_k + beta_k) equals v(k+1) for the solution normalized to
    // v(0) = 1, v(1) = theta; the recurrence reaches window scale where the
    // Fibonacci-sized enumeration cannot.
    const Solution sol = solve_forward(chain, params, Scalar(1), std::nullopt, total + 1);

    DivergencePolicy p = policy;
    const bool dominated = potential_dominates_lambda(chain, params.lambda).has_value();
    if (dominated) {
        if (auto mInf = certified_tail_inf(chain.m, 1); mInf && *mInf > 0) {
            p.divergenceHook = DivergenceCert{
                sol.values[1] * sol.values[1] * *mInf, 0,
                "solution nondecreasing (potential dominates the shift) and measure tail infimum " +
                    to_string(*mInf)};
        }
        if (auto mRatio = exact_tail_ratio(chain.m);
            mRatio && mRatio->first > 0 && mRatio->first < 1) {
            const Scalar qm = mRatio->first;
            const std::size_t start = mRatio->second > 0 ? mRatio->second - 1 : 0;
            for (std::size_t k0 = start; k0 < start + 48 && k0 + 2 < sol.values.size(); ++k0) {
                auto growth = solution_growth_cert(chain, params.lambda, sol.values, k0);
                if (!growth) {
                    continue;
                }
                const Scalar q = growth->R * growth->R * qm;
                if (q < 1) {
                    p.convergenceHook =
                        ConvergenceCert{q, k0,
                                        "geometric measure tail " + to_string(qm) +
                                            " against growth envelope " + to_string(growth->R)};
                    break;
                }
            }
        }
    }

    auto term = [&chain, &sol](std::size_t k) {
        const Scalar& v = sol.values[k + 1];
        return v * v * chain.measure(k + 1);
    };
    Verdict verdict = classify_series(term, N, p);
    if (!params.K) {
        verdict.caveats.push_back(Caveat::UnverifiedSemiBoundedness);
    }
    return verdict;
}

} // namespace bds
