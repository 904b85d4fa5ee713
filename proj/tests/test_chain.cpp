#include "bds/chain.hpp"
#include "bds/errors.hpp"

#include "testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace bds;
using bdstest::unit_chain;

namespace {

BirthDeathChain chain_with_W(SequenceSpec W) {
    return BirthDeathChain{SequenceSpec::constant(1), SequenceSpec::constant(1), std::move(W)};
}

} // namespace

TEST_CASE("pointwise operator application") {
    const auto chain = unit_chain();
    CHECK(apply_schrodinger(chain, {Scalar(1), Scalar(1), Scalar(1)}, 1, Scalar(0)) == 0);
    CHECK(apply_schrodinger(chain, {Scalar(1), Scalar(2), Scalar(5)}, 1, Scalar(-1)) == 0);
    CHECK(apply_schrodinger(chain, {Scalar(1), Scalar(0), Scalar(0)}, 1, Scalar(0)) == -1);
    CHECK_THROWS_AS(apply_schrodinger(chain, {Scalar(1), Scalar(2)}, 1, Scalar(0)), DomainError);
}

TEST_CASE("forward solve reproduces the hand recurrence") {
    const auto chain = unit_chain();
    const SpectralParams params(Scalar(-1), Scalar(0));

    const Solution sol = solve_forward(chain, params, 1, std::nullopt, 5);
    CHECK(sol.imposedAtZero);
    CHECK(sol.v1 == 2); // theta = 2
    const std::vector<Scalar> expected{1, 2, 5, 13, 34, 89};
    CHECK(sol.values == expected);
    CHECK(sol.C == 1);

    // Zero initial data stays zero; lambda = 0 keeps constants harmonic.
    CHECK(solve_forward(chain, params, 0, std::nullopt, 6).values ==
          std::vector<Scalar>(7, Scalar(0)));
    const SpectralParams flat(Scalar(0));
    CHECK(solve_forward(chain, flat, 1, std::nullopt, 5).values ==
          std::vector<Scalar>(6, Scalar(1)));
}

TEST_CASE("theta formula") {
    CHECK(theta(unit_chain(), Scalar(-1)) == 2);
    CHECK(theta(chain_with_W(SequenceSpec::constant(3)), Scalar(3)) == 1);
    const BirthDeathChain chain{SequenceSpec::constant(4), SequenceSpec::constant(2),
                                SequenceSpec::constant(3)};
    CHECK(theta(chain, Scalar(1)) == 2);
}

TEST_CASE("full-history solver matches the literal double sum") {
    // b = 1, weff * m = 1, v0 = 1, v1 = 2 gives v2 = 2 + 1 + 2 = 5.
    const auto chain = unit_chain();
    const Solution sol = full_history_solve(chain, SequenceSpec::constant(1), 1, 2, 2);
    CHECK(sol.values == std::vector<Scalar>{1, 2, 5});

    // Vanishing effective potential leaves affine growth.
    const Solution affine = full_history_solve(chain, SequenceSpec::constant(0), 1, 2, 6);
    for (std::size_t r = 0; r + 1 <= 6; ++r) {
        CHECK(affine.values[r + 1] == Scalar(2) + Scalar(static_cast<std::int64_t>(r)));
    }

    // v0 = v1 = 0 forces the zero solution.
    const Solution zero = full_history_solve(chain, SequenceSpec::constant(1), 0, 0, 6);
    CHECK(zero.values == std::vector<Scalar>(7, Scalar(0)));
}

TEST_CASE("full-history solve equals forward solve on random chains") {
    bdstest::Rng rng(20260810);
    for (int trial = 0; trial < 25; ++trial) {
        const BirthDeathChain chain = bdstest::random_chain(rng);
        const Scalar lambda = bdstest::lambda_below_bound(chain);
        const Scalar v1(7, 5);
        const Solution forward = solve_forward(chain, SpectralParams(lambda), 1, v1, 64);
        const Solution history = full_history_solve_folded(chain, lambda, 1, v1, 64);
        REQUIRE(forward.values == history.values);
        // Interior residuals vanish exactly for both solvers.
        for (std::size_t r = 1; r + 1 < forward.values.size(); r += 13) {
            CHECK(apply_schrodinger(chain, forward.values, r, lambda) == 0);
        }
    }
}

TEST_CASE("forward solve is linear in v0") {
    bdstest::Rng rng(77);
    const BirthDeathChain chain = bdstest::random_chain(rng);
    const Scalar lambda = bdstest::lambda_below_bound(chain);
    const SpectralParams params(lambda);
    const Solution base = solve_forward(chain, params, 1, std::nullopt, 32);
    const Scalar c(-3, 7);
    const Solution scaled = solve_forward(chain, params, c, std::nullopt, 32);
    for (std::size_t k = 0; k < base.values.size(); ++k) {
        CHECK(scaled.values[k] == c * base.values[k]);
    }
}

TEST_CASE("nonpositive chain data is rejected") {
    BirthDeathChain bad{SequenceSpec::table({Scalar(1), Scalar(-1)}, SequenceSpec::constant(1)),
                        SequenceSpec::constant(1), SequenceSpec::constant(0)};
    CHECK_THROWS_AS(solve_forward(bad, SpectralParams(Scalar(-1)), 1, std::nullopt, 4),
                    InvalidChainError);
}

TEST_CASE("partial l2 norms") {
    const auto chain = unit_chain();
    Solution sol;
    sol.values = {1, 2};
    CHECK(l2_norm_partial(sol, chain, 1) == 5);

    sol.values = {0, 0, 0};
    CHECK(l2_norm_partial(sol, chain, 2) == 0);

    BirthDeathChain weighted{SequenceSpec::constant(1), SequenceSpec::geometric(1, Scalar(1, 4)),
                             SequenceSpec::constant(0)};
    sol.values = {1, 2, 5};
    CHECK(l2_norm_partial(sol, weighted, 2) == Scalar(57, 16));
    CHECK_THROWS_AS(l2_norm_partial(sol, weighted, 3), DomainError);
}

TEST_CASE("energy form values and symmetry") {
    const auto chain = unit_chain();
    CHECK(energy_form(chain, {Scalar(1)}, {Scalar(1)}) == 1);
    CHECK(energy_form(chain, {Scalar(1)}, {Scalar(0), Scalar(1)}) == -1);
    CHECK(energy_form(chain, {}, {}) == 0);

    bdstest::Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const BirthDeathChain random = bdstest::random_chain(rng);
        std::vector<Scalar> phi, psi;
        std::uniform_int_distribution<int> len(1, 6);
        for (int i = 0, top = len(rng); i < top; ++i) {
            phi.push_back(bdstest::random_signed(rng));
        }
        for (int i = 0, top = len(rng); i < top; ++i) {
            psi.push_back(bdstest::random_signed(rng));
        }
        CHECK(energy_form(random, phi, psi) == energy_form(random, psi, phi));

        // Green's formula: Q(phi, psi) = sum_r (Laplacian phi)(r) psi(r) m(r).
        BirthDeathChain laplace{random.b, random.m, SequenceSpec::constant(0)};
        std::vector<Scalar> padded = phi;
        padded.resize(phi.size() + psi.size() + 2, Scalar(0));
        Scalar pairing = 0;
        for (std::size_t r = 0; r < psi.size(); ++r) {
            pairing += apply_schrodinger(laplace, padded, r, Scalar(0)) * psi[r] *
                       random.measure(r);
        }
        CHECK(energy_form(random, phi, psi) == pairing);
    }
}

TEST_CASE("finite-section lower-bound estimate") {
    const auto chain = unit_chain();
    // Quadratic form matrix for N = 1 is [[1, -1], [-1, 2]]; smallest eigenvalue (3 - sqrt 5)/2.
    const double est = estimate_lower_bound(chain, 1);
    CHECK(est == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-10));

    // Nonnegative for vanishing potential, any chain.
    bdstest::Rng rng(123);
    for (int trial = 0; trial < 8; ++trial) {
        BirthDeathChain random = bdstest::random_chain(rng);
        random.W = SequenceSpec::constant(0);
        CHECK(estimate_lower_bound(random, 12) >= -1e-10);
    }

    // Pointwise potential shift moves the estimate by exactly the shift.
    BirthDeathChain shifted = chain;
    shifted.W = SequenceSpec::constant(5);
    CHECK(estimate_lower_bound(shifted, 9) ==
          doctest::Approx(estimate_lower_bound(chain, 9) + 5.0).epsilon(1e-9));

    // Finite sections nest, so the estimate is nonincreasing in N.
    for (int trial = 0; trial < 6; ++trial) {
        const BirthDeathChain random = bdstest::random_chain(rng);
        double previous = estimate_lower_bound(random, 2);
        for (std::size_t n = 3; n <= 14; ++n) {
            const double next = estimate_lower_bound(random, n);
            CHECK(next <= previous + 1e-8 * std::max(1.0, std::abs(previous)));
            previous = next;
        }
    }
}
