#pragma once

#include "bds/chain.hpp"
#include "bds/criteria.hpp"

#include <optional>
#include <string>

namespace bds {

/// Deterministic criterion report: command echo, chain summary, term table
/// (first 10 and last 2 inspected terms as 12-digit floats), partial sums,
/// verdict, interpretation line and caveats. Byte-identical for identical
/// inputs.
std::string render_criterion_report(const std::string& commandEcho, const BirthDeathChain& chain,
                                    const std::optional<Scalar>& lambda,
                                    const std::optional<Scalar>& K, const Verdict& verdict,
                                    const std::string& interpretation);

/// Interpretation line for each criterion's verdict.
std::string interpret_hamburger(const Verdict& verdict);
std::string interpret_characterization(const Verdict& verdict);
std::string interpret_positive_solution(const Verdict& verdict);
std::string interpret_failure(const Verdict& verdict);

} // namespace bds
