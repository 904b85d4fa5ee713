#pragma once

#include "bds/scalar.hpp"
#include "bds/sequence.hpp"

#include <optional>
#include <utility>

namespace bds {

/// Symbolic tail facts about a sequence specification. Everything returned
/// here is a certified statement about ALL indices beyond the stated
/// threshold, derived from the family structure (constant/geometric ratios
/// are exact; polynomial monotonicity thresholds come from Cauchy root
/// bounds on the difference polynomial). Anything the analysis cannot
/// certify is reported as absent, never guessed.

/// Exact consecutive ratio: s(k+1) = q * s(k) for every k >= from (constant
/// and geometric tails only; requires nonzero values).
std::optional<std::pair<Scalar, std::size_t>> exact_tail_ratio(const SequenceSpec& spec);

/// A rational L with s(k) >= L for every k >= from, or absent when the
/// sequence is unbounded below on that range.
std::optional<Scalar> certified_tail_inf(const SequenceSpec& spec, std::size_t from);

/// A rational U with s(k) <= U for every k >= from.
std::optional<Scalar> certified_tail_sup(const SequenceSpec& spec, std::size_t from);

/// Threshold T with s(k+1) >= s(k) for every k >= T.
std::optional<std::size_t> nondecreasing_from(const SequenceSpec& spec);

/// Whole-line lower bound: s(k) >= bound for EVERY k >= 0, established by a
/// certified tail bound plus direct evaluation of the finite head. Returns
/// the head/tail split index when it holds.
std::optional<std::size_t> verified_all_at_least(const SequenceSpec& spec, const Scalar& bound);

} // namespace bds
