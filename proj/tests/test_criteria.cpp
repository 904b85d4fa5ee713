#include "bds/closedform.hpp"
#include "bds/criteria.hpp"
#include "bds/errors.hpp"

#include "testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace bds;
using bdstest::unit_chain;

TEST_CASE("series classifier applies divergence, convergence, heuristic in order") {
    // Quadratic terms with a by-construction lower bound.
    DivergencePolicy divergent;
    divergent.divergenceHook = DivergenceCert{Scalar(1), 0, "terms are at least 1 by construction"};
    const Verdict quadratic = classify_series(
        [](std::size_t k) {
            const Scalar v(static_cast<std::int64_t>(k + 1));
            return v * v;
        },
        64, divergent);
    CHECK(quadratic.kind == VerdictKind::ProvedDiverges);
    CHECK(quadratic.evidence.termsInspected == 128);

    // Geometric tail: (2 - 2^-k)^2 2^-(k+1); ratio falls toward 1/2.
    DivergencePolicy geometric;
    geometric.convergenceHook =
        ConvergenceCert{Scalar(3, 4), 1, "ratio decreases toward 1/2 beyond k = 1"};
    const Verdict geo = classify_series(
        [](std::size_t k) {
            const Scalar inner = 2 - rational_pow(Scalar(1, 2), k);
            return inner * inner * rational_pow(Scalar(1, 2), k + 1);
        },
        64, geometric);
    CHECK(geo.kind == VerdictKind::ProvedConverges);

    // The harmonic series defeats both proof rules at any finite window but
    // still looks divergent to the partial-sum heuristic.
    const Verdict harmonic = classify_series(
        [](std::size_t k) { return Scalar(1, static_cast<std::int64_t>(k + 1)); }, 64,
        DivergencePolicy{});
    CHECK(harmonic.kind == VerdictKind::HeuristicDiverges);

    // A wrong hook is demoted, not trusted.
    DivergencePolicy lying;
    lying.convergenceHook = ConvergenceCert{Scalar(1, 2), 0, "not actually true"};
    const Verdict demoted = classify_series(
        [](std::size_t k) { return Scalar(1, static_cast<std::int64_t>(k + 1)); }, 64, lying);
    CHECK(demoted.kind == VerdictKind::HeuristicDiverges);
    REQUIRE(demoted.caveats.size() == 1);
    CHECK(demoted.caveats[0] == Caveat::ConvergenceHookContradicted);

    // Negative terms violate the precondition and signal an upstream bug.
    CHECK_THROWS_AS(
        classify_series([](std::size_t) { return Scalar(-1); }, 8, DivergencePolicy{}),
        InternalError);
}

TEST_CASE("hamburger criterion on the worked chains") {
    const DivergencePolicy policy;

    CHECK(hamburger(unit_chain(), 64, policy).kind == VerdictKind::ProvedDiverges);

    const BirthDeathChain balanced{SequenceSpec::geometric(1, 2),
                                   SequenceSpec::geometric(1, Scalar(1, 2)),
                                   SequenceSpec::constant(0)};
    CHECK(hamburger(balanced, 64, policy).kind == VerdictKind::ProvedConverges);

    const BirthDeathChain slowEdges{SequenceSpec::geometric(1, Scalar(1, 2)),
                                    SequenceSpec::constant(1), SequenceSpec::constant(0)};
    CHECK(hamburger(slowEdges, 64, policy).kind == VerdictKind::ProvedDiverges);
}

TEST_CASE("positive-solution criterion") {
    const DivergencePolicy policy;

    const Verdict diverges = positive_solution_criterion(
        unit_chain(), SpectralParams(Scalar(-1), Scalar(0)), 48, policy);
    CHECK(diverges.kind == VerdictKind::ProvedDiverges);
    CHECK(diverges.caveats.empty());

    // lambda = 0 with K = 0 violates the lambda < K hypothesis outright.
    CHECK_THROWS_AS(SpectralParams(Scalar(0), Scalar(0)), DomainError);

    const BirthDeathChain shrinking{SequenceSpec::constant(1),
                                    SequenceSpec::geometric(1, Scalar(1, 11)),
                                    SequenceSpec::constant(0)};
    const Verdict converges = positive_solution_criterion(
        shrinking, SpectralParams(Scalar(-1), Scalar(0)), 48, policy);
    CHECK(converges.kind == VerdictKind::ProvedConverges);

    // A potential deep below the shift breaks positivity quickly.
    const BirthDeathChain sinking{SequenceSpec::constant(1), SequenceSpec::constant(1),
                                  SequenceSpec::constant(-10)};
    CHECK_THROWS_AS(
        positive_solution_criterion(sinking, SpectralParams(Scalar(-1), Scalar(0)), 16, policy),
        PositivityError);
}

TEST_CASE("transfer steps") {
    const TransferStep step = transfer_step(unit_chain(), Scalar(-1), 0);
    CHECK(step.a == 1);
    CHECK(step.c == 1);
    CHECK(step.A.a11 == 3);
    CHECK(step.A.a12 == -1);
    CHECK(step.A.a21 == 1);
    CHECK(step.A.a22 == 0);

    // W == lambda and constant edges give the free Laplacian step.
    const BirthDeathChain flat{SequenceSpec::constant(3), SequenceSpec::constant(2),
                               SequenceSpec::constant(5)};
    const TransferStep free = transfer_step(flat, Scalar(5), 4);
    CHECK(free.a == 0);
    CHECK(free.c == 1);
    CHECK(free.A.a11 == 2);

    bdstest::Rng rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const BirthDeathChain chain = bdstest::random_chain(rng);
        const TransferStep any = transfer_step(chain, Scalar(-2), static_cast<std::size_t>(trial));
        CHECK(any.A.det() == any.c);
        CHECK(any.c > 0);
        const Scalar head = 1 + any.a + any.c;
        CHECK(any.A.gram_trace() == head * head + any.c * any.c + 1);
    }
}

TEST_CASE("2x2 operator norm") {
    CHECK(operator_norm_2x2(Mat2{Scalar(1), Scalar(0), Scalar(0), Scalar(1)}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm_2x2(Mat2{Scalar(2), Scalar(0), Scalar(0), Scalar(1)}) ==
          doctest::Approx(2.0).epsilon(1e-12));
    const double expected = std::sqrt((11.0 + std::sqrt(117.0)) / 2.0);
    CHECK(operator_norm_2x2(Mat2{Scalar(3), Scalar(-1), Scalar(1), Scalar(0)}) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("trace bound terms") {
    // Unit chain at lambda = -1: every factor is 11.
    for (std::size_t k = 0; k <= 6; ++k) {
        CHECK(trace_bound_term(unit_chain(), Scalar(-1), k) ==
              rational_pow(Scalar(11), k + 1));
    }

    // Generic k = 0 term is the single factor against m(2).
    bdstest::Rng rng(555);
    const BirthDeathChain chain = bdstest::random_chain(rng);
    const Scalar lambda(-2);
    const TransferStep step = transfer_step(chain, lambda, 0);
    const Scalar head = 1 + step.a + step.c;
    CHECK(trace_bound_term(chain, lambda, 0) ==
          (head * head + step.c * step.c + 1) * chain.measure(2));
}

TEST_CASE("failure criterion worked verdicts") {
    const DivergencePolicy policy;

    const BirthDeathChain shrinking{SequenceSpec::constant(1),
                                    SequenceSpec::geometric(1, Scalar(1, 11)),
                                    SequenceSpec::constant(0)};
    const Verdict converges =
        failure_criterion(shrinking, SpectralParams(Scalar(-1), Scalar(0)), 48, policy);
    CHECK(converges.kind == VerdictKind::ProvedConverges);
    CHECK(converges.caveats.empty());

    // The unit chain diverges here, which decides nothing: caveat attached.
    const Verdict inconclusive =
        failure_criterion(unit_chain(), SpectralParams(Scalar(-1), Scalar(0)), 48, policy);
    CHECK(inconclusive.kind == VerdictKind::ProvedDiverges);
    REQUIRE(inconclusive.caveats.size() == 1);
    CHECK(inconclusive.caveats[0] == Caveat::SufficientConditionOnly);

    // Missing K adds the semi-boundedness caveat on top.
    const Verdict noK = failure_criterion(unit_chain(), SpectralParams(Scalar(-1)), 32, policy);
    REQUIRE(noK.caveats.size() == 2);
    CHECK(noK.caveats[0] == Caveat::UnverifiedSemiBoundedness);
    CHECK(noK.caveats[1] == Caveat::SufficientConditionOnly);
}

TEST_CASE("matrix recurrence fidelity and norm chain") {
    bdstest::Rng rng(616);
    for (int trial = 0; trial < 10; ++trial) {
        const BirthDeathChain chain = bdstest::random_chain(rng);
        const Scalar lambda = bdstest::lambda_below_bound(chain);
        const Scalar v0 = bdstest::random_signed(rng);
        const Scalar v1 = bdstest::random_signed(rng);
        const Solution sol = solve_forward(chain, SpectralParams(lambda), v0, v1, 24);

        Mat2 product{Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
        double normChain = 1.0;
        for (std::size_t k = 2; k <= 24; ++k) {
            const TransferStep step = transfer_step(chain, lambda, k - 2);
            product = step.A * product;
            const auto [top, bottom] = product.apply(sol.values[1], sol.values[0]);
            REQUIRE(top == sol.values[k]);
            REQUIRE(bottom == sol.values[k - 1]);

            // Trace of the Gram matrix dominates the squared operator norm.
            const double trace = to_double(step.A.gram_trace());
            const double norm = operator_norm_2x2(step.A);
            CHECK(trace >= norm * norm * (1.0 - 1e-12));

            normChain *= std::sqrt(to_double(step.A.gram_trace()));
            const double anchor = std::sqrt(to_double(sol.values[1] * sol.values[1] +
                                                      sol.values[0] * sol.values[0]));
            CHECK(std::abs(to_double(sol.values[k])) <= normChain * anchor * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("proved verdicts never contradict across criteria") {
    bdstest::Rng rng(717);
    const DivergencePolicy policy;
    for (int trial = 0; trial < 12; ++trial) {
        BirthDeathChain chain = bdstest::random_chain(rng);
        const Scalar lambda = bdstest::lambda_below_bound(chain);
        const SpectralParams params(lambda);

        const Verdict character = esa_characterize(chain, params, 24, policy);
        const Verdict failure = failure_criterion(chain, params, 24, policy);
        std::optional<Verdict> positive;
        try {
            positive = positive_solution_criterion(chain, params, 24, policy);
        } catch (const PositivityError&) {
        }

        if (positive && is_proved(character.kind) && is_proved(positive->kind)) {
            CHECK(is_diverges(character.kind) == is_diverges(positive->kind));
        }
        if (failure.kind == VerdictKind::ProvedConverges) {
            CHECK(character.kind != VerdictKind::ProvedDiverges);
            if (positive) {
                CHECK(positive->kind != VerdictKind::ProvedDiverges);
            }
        }
    }

    // Bounded-below potential transfers a proved Laplacian verdict upward.
    bdstest::Rng rng2(818);
    for (int trial = 0; trial < 12; ++trial) {
        BirthDeathChain chain = bdstest::random_chain(rng2);
        chain.W = SequenceSpec::constant(bdstest::random_signed(rng2));
        const Scalar lambda = bdstest::lambda_below_bound(chain);
        const Verdict ham = hamburger(chain, 24, policy);
        const Verdict character = esa_characterize(chain, SpectralParams(lambda), 24, policy);
        if (ham.kind == VerdictKind::ProvedDiverges && is_proved(character.kind)) {
            CHECK(character.kind == VerdictKind::ProvedDiverges);
        }
    }
}

TEST_CASE("characterization agrees with hamburger for vanishing potential") {
    bdstest::Rng rng(929);
    const DivergencePolicy policy;
    for (int trial = 0; trial < 15; ++trial) {
        BirthDeathChain chain = bdstest::random_chain(rng);
        chain.W = SequenceSpec::constant(0);
        const Verdict ham = hamburger(chain, 24, policy);
        const Verdict character =
            esa_characterize(chain, SpectralParams(Scalar(-1), Scalar(0)), 24, policy);
        if (is_proved(ham.kind) && is_proved(character.kind)) {
            CHECK(is_diverges(ham.kind) == is_diverges(character.kind));
        }
    }
}
