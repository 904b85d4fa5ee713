#include "bds/tail.hpp"

#include "bds/errors.hpp"

#include <algorithm>
#include <cstdint>

namespace bds {

namespace {

constexpr std::size_t kThresholdCap = 4096;

/// Coefficients of p(k+1) - p(k); degree drops by one.
std::vector<Scalar> difference_poly(const std::vector<Scalar>& p) {
    const std::size_t d = p.size() - 1;
    // p(k+1) via binomial expansion, then subtract p(k).
    std::vector<Scalar> shifted(p.size(), Scalar(0));
    for (std::size_t i = 0; i <= d; ++i) {
        // c_i (k+1)^i contributes c_i * C(i,j) to the k^j coefficient.
        Scalar binom = 1;
        for (std::size_t j = 0; j <= i; ++j) {
            if (j > 0) {
                binom = binom * Scalar(static_cast<std::int64_t>(i - j + 1)) /
                        Scalar(static_cast<std::int64_t>(j));
            }
            shifted[j] += p[i] * binom;
        }
    }
    std::vector<Scalar> diff(d, Scalar(0));
    for (std::size_t j = 0; j < d; ++j) {
        diff[j] = shifted[j] - p[j];
    }
    return diff;
}

std::size_t effective_degree(const std::vector<Scalar>& coeffs) {
    std::size_t d = coeffs.size() - 1;
    while (d > 0 && coeffs[d] == 0) {
        --d;
    }
    return d;
}

/// Cauchy bound: real roots of the polynomial lie in |x| <= 1 + max |c_i| / |c_d|.
/// Beyond it the sign is the leading coefficient's sign.
std::optional<std::size_t> sign_stable_threshold(const std::vector<Scalar>& coeffs) {
    const std::size_t d = effective_degree(coeffs);
    if (d == 0) {
        return 0;
    }
    Scalar maxRatio = 0;
    for (std::size_t i = 0; i < d; ++i) {
        maxRatio = std::max(maxRatio, Scalar(abs(coeffs[i]) / abs(coeffs[d])));
    }
    const Scalar bound = 1 + maxRatio;
    if (bound > Scalar(static_cast<std::int64_t>(kThresholdCap))) {
        return std::nullopt;
    }
    const Integer floor = numerator(bound) / denominator(bound);
    return static_cast<std::size_t>(floor.convert_to<std::int64_t>()) + 1;
}

/// Index from which a polynomial is strictly monotone; direction is the sign
/// of the leading coefficient (degree >= 1 assumed).
std::optional<std::size_t> poly_monotone_threshold(const std::vector<Scalar>& coeffs) {
    return sign_stable_threshold(difference_poly(coeffs));
}

} // namespace

std::optional<std::pair<Scalar, std::size_t>> exact_tail_ratio(const SequenceSpec& spec) {
    switch (spec.family()) {
    case SequenceSpec::Family::Const:
        if (spec.const_value() == 0) {
            return std::nullopt;
        }
        return std::make_pair(Scalar(1), std::size_t{0});
    case SequenceSpec::Family::Geom:
        if (spec.geom_base() == 0 || spec.geom_ratio() == 0) {
            return std::nullopt;
        }
        return std::make_pair(spec.geom_ratio(), std::size_t{0});
    case SequenceSpec::Family::Poly: {
        const auto& c = spec.poly_coeffs();
        if (effective_degree(c) == 0) {
            if (c[0] == 0) {
                return std::nullopt;
            }
            return std::make_pair(Scalar(1), std::size_t{0});
        }
        return std::nullopt;
    }
    case SequenceSpec::Family::Table: {
        auto inner = exact_tail_ratio(spec.table_tail());
        if (!inner) {
            return std::nullopt;
        }
        return std::make_pair(inner->first, spec.table_prefix().size() + inner->second);
    }
    }
    throw InternalError("unreachable sequence family");
}

std::optional<Scalar> certified_tail_inf(const SequenceSpec& spec, std::size_t from) {
    switch (spec.family()) {
    case SequenceSpec::Family::Const:
        return spec.const_value();
    case SequenceSpec::Family::Geom: {
        const Scalar& a = spec.geom_base();
        const Scalar& q = spec.geom_ratio();
        if (a == 0) {
            return Scalar(0);
        }
        if (q <= 0) {
            return std::nullopt; // oscillating or degenerate
        }
        if (a > 0) {
            // q >= 1: nondecreasing, minimum at the window start; q < 1: decays to 0.
            return q >= 1 ? spec.eval(static_cast<std::int64_t>(from)) : Scalar(0);
        }
        // a < 0: increasing toward 0 when q <= 1, unbounded below when q > 1.
        return q <= 1 ? std::optional<Scalar>(spec.eval(static_cast<std::int64_t>(from)))
                      : std::nullopt;
    }
    case SequenceSpec::Family::Poly: {
        const auto& c = spec.poly_coeffs();
        const std::size_t d = effective_degree(c);
        if (d == 0) {
            return c[0];
        }
        if (c[d] < 0) {
            return std::nullopt; // eventually decreasing without bound
        }
        auto threshold = poly_monotone_threshold(c);
        if (!threshold) {
            return std::nullopt;
        }
        Scalar best = spec.eval(static_cast<std::int64_t>(std::max(from, *threshold)));
        for (std::size_t k = from; k < std::max(from, *threshold); ++k) {
            best = std::min(best, spec.eval(static_cast<std::int64_t>(k)));
        }
        return best;
    }
    case SequenceSpec::Family::Table: {
        const auto& prefix = spec.table_prefix();
        const std::size_t p = prefix.size();
        std::optional<Scalar> best;
        for (std::size_t k = from; k < p; ++k) {
            if (!best || prefix[k] < *best) {
                best = prefix[k];
            }
        }
        auto tail = certified_tail_inf(spec.table_tail(), from >= p ? from - p : 0);
        if (!tail) {
            return std::nullopt;
        }
        if (!best || *tail < *best) {
            best = *tail;
        }
        return best;
    }
    }
    throw InternalError("unreachable sequence family");
}

std::optional<Scalar> certified_tail_sup(const SequenceSpec& spec, std::size_t from) {
    switch (spec.family()) {
    case SequenceSpec::Family::Const:
        return spec.const_value();
    case SequenceSpec::Family::Geom: {
        const Scalar& a = spec.geom_base();
        const Scalar& q = spec.geom_ratio();
        if (a == 0) {
            return Scalar(0);
        }
        if (q <= 0) {
            return std::nullopt;
        }
        if (a > 0) {
            return q <= 1 ? std::optional<Scalar>(spec.eval(static_cast<std::int64_t>(from)))
                          : std::nullopt;
        }
        return q >= 1 ? std::optional<Scalar>(spec.eval(static_cast<std::int64_t>(from))) : Scalar(0);
    }
    case SequenceSpec::Family::Poly: {
        const auto& c = spec.poly_coeffs();
        const std::size_t d = effective_degree(c);
        if (d == 0) {
            return c[0];
        }
        if (c[d] > 0) {
            return std::nullopt; // eventually increasing without bound
        }
        auto threshold = poly_monotone_threshold(c);
        if (!threshold) {
            return std::nullopt;
        }
        Scalar best = spec.eval(static_cast<std::int64_t>(std::max(from, *threshold)));
        for (std::size_t k = from; k < std::max(from, *threshold); ++k) {
            best = std::max(best, spec.eval(static_cast<std::int64_t>(k)));
        }
        return best;
    }
    case SequenceSpec::Family::Table: {
        const auto& prefix = spec.table_prefix();
        const std::size_t p = prefix.size();
        std::optional<Scalar> best;
        for (std::size_t k = from; k < p; ++k) {
            if (!best || prefix[k] > *best) {
                best = prefix[k];
            }
        }
        auto tail = certified_tail_sup(spec.table_tail(), from >= p ? from - p : 0);
        if (!tail) {
            return std::nullopt;
        }
        if (!best || *tail > *best) {
            best = *tail;
        }
        return best;
    }
    }
    throw InternalError("unreachable sequence family");
}

std::optional<std::size_t> nondecreasing_from(const SequenceSpec& spec) {
    switch (spec.family()) {
    case SequenceSpec::Family::Const:
        return 0;
    case SequenceSpec::Family::Geom: {
        const Scalar& a = spec.geom_base();
        const Scalar& q = spec.geom_ratio();
        if (a == 0) {
            return 0;
        }
        if (q <= 0) {
            return std::nullopt;
        }
        if ((a > 0 && q >= 1) || (a < 0 && q <= 1)) {
            return 0;
        }
        return std::nullopt;
    }
    case SequenceSpec::Family::Poly: {
        const auto& c = spec.poly_coeffs();
        if (effective_degree(c) == 0) {
            return 0;
        }
        if (c[effective_degree(c)] < 0) {
            return std::nullopt;
        }
        return poly_monotone_threshold(c);
    }
    case SequenceSpec::Family::Table: {
        auto inner = nondecreasing_from(spec.table_tail());
        if (!inner) {
            return std::nullopt;
        }
        // Junction behavior is unknown, so start past the prefix.
        return spec.table_prefix().size() + *inner;
    }
    }
    throw InternalError("unreachable sequence family");
}

std::optional<std::size_t> verified_all_at_least(const SequenceSpec& spec, const Scalar& bound) {
    // Split point: beyond it the tail analysis certifies the bound, before it
    // we evaluate directly.
    std::size_t split = 0;
    switch (spec.family()) {
    case SequenceSpec::Family::Const:
    case SequenceSpec::Family::Geom:
        split = 0;
        break;
    case SequenceSpec::Family::Poly: {
        auto t = poly_monotone_threshold(spec.poly_coeffs());
        if (!t) {
            return std::nullopt;
        }
        split = *t;
        break;
    }
    case SequenceSpec::Family::Table: {
        auto innerSplit = verified_all_at_least(spec.table_tail(), bound);
        if (!innerSplit) {
            return std::nullopt;
        }
        const auto& prefix = spec.table_prefix();
        for (const Scalar& x : prefix) {
            if (x < bound) {
                return std::nullopt;
            }
        }
        return prefix.size() + *innerSplit;
    }
    }
    if (split > kThresholdCap) {
        return std::nullopt;
    }
    auto inf = certified_tail_inf(spec, split);
    if (!inf || *inf < bound) {
        return std::nullopt;
    }
    for (std::size_t k = 0; k < split; ++k) {
        if (spec.eval(static_cast<std::int64_t>(k)) < bound) {
            return std::nullopt;
        }
    }
    return split;
}

} // namespace bds
