#pragma once

#include "bds/chain.hpp"
#include "bds/scalar.hpp"
#include "bds/sequence.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace bds {

/// Parsed chain specification file. Line-oriented grammar:
///   lambda = <rational>        (optional)
///   K = <rational>             (optional)
///   b: <family>                (required)
///   m: <family>                (required)
///   W: <family>                (required)
/// where <family> is `const c`, `geom a q`, `poly c0 ... cd` or
/// `table x0 ... xn tail <family>`; rationals are `p/q`, integers or decimals
/// (read exactly as p/10^d); `#` starts a comment. Duplicate or unknown keys
/// are rejected.
struct ChainSpecFile {
    BirthDeathChain chain;
    std::optional<Scalar> lambda;
    std::optional<Scalar> K;
};

ChainSpecFile parse_chain_spec(std::string_view text);
ChainSpecFile load_chain_spec(const std::string& path);

/// Spec-file text for a family; parse(print(spec)) is structurally equal.
std::string format_family(const SequenceSpec& spec);

/// Chain summary block in spec-file syntax (reparses to an equivalent file).
std::string format_chain_summary(const BirthDeathChain& chain, const std::optional<Scalar>& lambda,
                                 const std::optional<Scalar>& K);

} // namespace bds
