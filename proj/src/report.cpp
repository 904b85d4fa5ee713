#include "bds/report.hpp"

#include "bds/specfile.hpp"

namespace bds {

std::string render_criterion_report(const std::string& commandEcho, const BirthDeathChain& chain,
                                    const std::optional<Scalar>& lambda,
                                    const std::optional<Scalar>& K, const Verdict& verdict,
                                    const std::string& interpretation) {
    std::string out;
    out += "command: " + commandEcho + "\n";
    out += "chain:\n";
    {
        const std::string summary = format_chain_summary(chain, lambda, K);
        std::size_t start = 0;
        while (start < summary.size()) {
            const std::size_t end = summary.find('\n', start);
            out += "  " + summary.substr(start, end - start) + "\n";
            start = end + 1;
        }
    }
    out += "terms inspected: " + std::to_string(verdict.evidence.termsInspected) + "\n";
    out += "term table (k, term):\n";
    for (const auto& [k, value] : verdict.evidence.sampleTerms) {
        out += "  " + std::to_string(k) + " " + format_double12(to_double(value)) + "\n";
    }
    out += "partial sums: S_N = " + format_double12(to_double(verdict.evidence.sumN)) +
           ", S_2N = " + format_double12(to_double(verdict.evidence.sum2N)) + "\n";
    out += "verdict: " + std::string(to_cstring(verdict.kind)) + "\n";
    out += "tail bound: " + verdict.evidence.tailBound + "\n";
    out += "interpretation: " + interpretation + "\n";
    if (verdict.caveats.empty()) {
        out += "caveats: none\n";
    } else {
        out += "caveats:\n";
        for (Caveat caveat : verdict.caveats) {
            out += "  - " + std::string(to_cstring(caveat)) + "\n";
        }
    }
    return out;
}

namespace {

std::string esa_line(const Verdict& verdict, const char* subject) {
    const bool proved = is_proved(verdict.kind);
    if (is_diverges(verdict.kind)) {
        return std::string(subject) + " is " + (proved ? "" : "likely (heuristic) ") +
               "essentially self-adjoint";
    }
    return std::string(subject) + " is " + (proved ? "" : "likely (heuristic) ") +
           "not essentially self-adjoint";
}

} // namespace

std::string interpret_hamburger(const Verdict& verdict) {
    return esa_line(verdict, "the Laplacian");
}

std::string interpret_characterization(const Verdict& verdict) {
    return esa_line(verdict, "the operator");
}

std::string interpret_positive_solution(const Verdict& verdict) {
    return esa_line(verdict, "the operator");
}

std::string interpret_failure(const Verdict& verdict) {
    if (is_diverges(verdict.kind)) {
        return "no conclusion (the trace bound decides only the convergent side)";
    }
    const bool proved = is_proved(verdict.kind);
    return std::string("the operator is ") + (proved ? "" : "likely (heuristic) ") +
           "not essentially self-adjoint";
}

} // namespace bds
