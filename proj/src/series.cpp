#include "bds/series.hpp"

#include "bds/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace bds {

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1, Scalar(0)) {}

TruncatedSeries TruncatedSeries::from_coeffs(std::vector<Scalar> coeffs) {
    if (coeffs.empty()) {
        throw DomainError("truncated series needs at least the constant coefficient");
    }
    TruncatedSeries s(coeffs.size() - 1);
    s.coeffs_ = std::move(coeffs);
    return s;
}

const Scalar& TruncatedSeries::coeff(std::size_t r) const {
    if (r >= coeffs_.size()) {
        throw DomainError("coefficient " + std::to_string(r) + " beyond truncation order " +
                          std::to_string(order()));
    }
    return coeffs_[r];
}

void TruncatedSeries::set_coeff(std::size_t r, Scalar value) {
    if (r >= coeffs_.size()) {
        throw DomainError("coefficient " + std::to_string(r) + " beyond truncation order " +
                          std::to_string(order()));
    }
    coeffs_[r] = std::move(value);
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& rhs) const {
    TruncatedSeries out(std::min(order(), rhs.order()));
    for (std::size_t r = 0; r <= out.order(); ++r) {
        out.coeffs_[r] = coeffs_[r] + rhs.coeffs_[r];
    }
    return out;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& rhs) const {
    TruncatedSeries out(std::min(order(), rhs.order()));
    for (std::size_t r = 0; r <= out.order(); ++r) {
        out.coeffs_[r] = coeffs_[r] - rhs.coeffs_[r];
    }
    return out;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& rhs) const {
    TruncatedSeries out(std::min(order(), rhs.order()));
    for (std::size_t r = 0; r <= out.order(); ++r) {
        Scalar acc = 0;
        for (std::size_t j = 0; j <= r; ++j) {
            acc += coeffs_[j] * rhs.coeffs_[r - j];
        }
        out.coeffs_[r] = std::move(acc);
    }
    return out;
}

TruncatedSeries TruncatedSeries::scaled(const Scalar& factor) const {
    TruncatedSeries out(order());
    for (std::size_t r = 0; r <= order(); ++r) {
        out.coeffs_[r] = coeffs_[r] * factor;
    }
    return out;
}

TruncatedSeries TruncatedSeries::derivative() const {
    if (order() == 0) {
        throw DomainError("derivative would drop the truncation order below zero");
    }
    TruncatedSeries out(order() - 1);
    for (std::size_t r = 0; r + 1 <= order(); ++r) {
        out.coeffs_[r] = coeffs_[r + 1] * Scalar(static_cast<std::int64_t>(r + 1));
    }
    return out;
}

TruncatedSeries TruncatedSeries::shift_up(std::size_t k) const {
    TruncatedSeries out(order() + k);
    for (std::size_t r = 0; r <= order(); ++r) {
        out.coeffs_[r + k] = coeffs_[r];
    }
    return out;
}

Scalar max_abs_coeff_diff(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t through) {
    Scalar worst = 0;
    for (std::size_t r = 0; r <= through; ++r) {
        worst = std::max(worst, Scalar(abs(a.coeff(r) - b.coeff(r))));
    }
    return worst;
}

TruncatedSeries expand_rational(const std::vector<Scalar>& numer, const std::vector<Scalar>& denom,
                                std::size_t order) {
    if (denom.empty() || denom[0] == 0) {
        throw DomainError("rational expansion needs a nonzero denominator constant term");
    }
    TruncatedSeries out(order);
    for (std::size_t r = 0; r <= order; ++r) {
        Scalar acc = r < numer.size() ? numer[r] : Scalar(0);
        for (std::size_t j = 1; j < denom.size() && j <= r; ++j) {
            acc -= denom[j] * out.coeff(r - j);
        }
        out.set_coeff(r, acc / denom[0]);
    }
    return out;
}

TruncatedSeries genfun_constant_case(const Scalar& alpha, const Scalar& v0, const Scalar& v1,
                                     std::size_t order) {
    if (order < 1) {
        throw DomainError("constant-case generating function needs order >= 1");
    }
    // Over the common denominator: A(z) = z (v1 - v0 z) / (1 - (2+alpha) z + z^2).
    return expand_rational({Scalar(0), v1, -v0}, {Scalar(1), -(2 + alpha), Scalar(1)}, order);
}

double power_formula(double alpha, double v0, double v1, std::size_t r) {
    if (alpha <= 0) {
        throw DomainError("power formula needs alpha > 0 (real square root)");
    }
    if (r < 3) {
        throw DomainError("power formula is asserted for r >= 3");
    }
    const double beta = std::sqrt(4.0 * alpha + alpha * alpha);
    const double xi = 2.0 + alpha;
    const double lo = xi - beta;
    const double hi = xi + beta;
    const double bracket = 2.0 * (std::pow(lo, static_cast<double>(r - 1)) -
                                  std::pow(hi, static_cast<double>(r - 1))) *
                               v0 +
                           (std::pow(hi, static_cast<double>(r)) -
                            std::pow(lo, static_cast<double>(r))) *
                               v1;
    return std::pow(2.0, -static_cast<double>(r)) / beta * bracket;
}

Scalar stirling2(std::size_t gamma, std::size_t k) {
    // sum_{i=0}^{k} (-1)^{k-i} i^gamma / ((k-i)! i!), with 0^0 = 1.
    Scalar acc = 0;
    Scalar factorial_i = 1;       // i!
    for (std::size_t i = 0; i <= k; ++i) {
        if (i > 0) {
            factorial_i *= Scalar(static_cast<std::int64_t>(i));
        }
        Scalar factorial_ki = 1; // (k-i)!
        for (std::size_t j = 2; j <= k - i; ++j) {
            factorial_ki *= Scalar(static_cast<std::int64_t>(j));
        }
        const Scalar powTerm =
            (i == 0 && gamma == 0) ? Scalar(1) : rational_pow(Scalar(static_cast<std::int64_t>(i)), gamma);
        const Scalar term = powTerm / (factorial_ki * factorial_i);
        acc += ((k - i) % 2 == 0) ? term : Scalar(-term);
    }
    return acc;
}

Scalar falling_factorial(std::size_t r, std::size_t k) {
    Scalar acc = 1;
    for (std::size_t j = 0; j < k; ++j) {
        acc *= Scalar(static_cast<std::int64_t>(r)) - Scalar(static_cast<std::int64_t>(j));
    }
    return acc;
}

StirlingTable StirlingTable::build(std::size_t limit) {
    StirlingTable table;
    table.rows.resize(limit + 1);
    for (std::size_t gamma = 0; gamma <= limit; ++gamma) {
        table.rows[gamma].reserve(gamma + 1);
        for (std::size_t k = 0; k <= gamma; ++k) {
            table.rows[gamma].push_back(stirling2(gamma, k));
        }
    }
    return table;
}

const Scalar& StirlingTable::at(std::size_t gamma, std::size_t k) const {
    if (gamma >= rows.size() || k >= rows[gamma].size()) {
        throw DomainError("stirling table access out of range");
    }
    return rows[gamma][k];
}

Scalar ode_identity_residual(const Scalar& b, std::size_t gamma, const Scalar& v0, const Scalar& v1,
                             std::size_t N) {
    if (b <= 0) {
        throw DomainError("ode identity needs a positive constant edge weight");
    }
    if (N < gamma + 2) {
        throw DomainError("ode identity needs order N >= gamma + 2");
    }
    // Direct recurrence v_{r+1} = v_r (2 + r^gamma / b) - v_{r-1}.
    std::vector<Scalar> v(N + 1);
    v[0] = v0;
    v[1] = v1;
    for (std::size_t r = 1; r + 1 <= N; ++r) {
        const Scalar power = (r == 0 && gamma == 0)
                                 ? Scalar(1)
                                 : rational_pow(Scalar(static_cast<std::int64_t>(r)), gamma);
        v[r + 1] = v[r] * (2 + power / b) - v[r - 1];
    }
    TruncatedSeries A(N);
    for (std::size_t r = 1; r <= N; ++r) {
        A.set_coeff(r, v[r]);
    }

    const TruncatedSeries zOver1z = expand_rational({Scalar(0), Scalar(1)}, {Scalar(1), Scalar(-1)}, N);
    const TruncatedSeries zOver1zSq =
        expand_rational({Scalar(0), Scalar(1)}, {Scalar(1), Scalar(-2), Scalar(1)}, N);

    // sum_k {gamma brace k} z^k A^{(k)}(z); each summand regains order N after the shift.
    TruncatedSeries sum(N);
    TruncatedSeries diff = A;
    for (std::size_t k = 0; k <= gamma; ++k) {
        if (k > 0) {
            diff = diff.derivative();
        }
        sum = sum + diff.shift_up(k).scaled(stirling2(gamma, k));
    }

    const TruncatedSeries rhs =
        zOver1z.scaled(v0) + zOver1zSq.scaled(v1 - v0) + (zOver1zSq * sum).scaled(1 / b);
    return max_abs_coeff_diff(A, rhs, N - gamma);
}

std::vector<Scalar> beta_deconvolve(const BirthDeathChain& chain, const Solution& v, std::size_t n,
                                    std::size_t N, const Scalar& lambdaFold) {
    if (n < 1) {
        throw DomainError("deconvolution needs n >= 1");
    }
    if (v.values.size() < N + 2) {
        throw DomainError("deconvolution through beta_" + std::to_string(N) +
                          " needs solution values through index " + std::to_string(N + 1));
    }
    if (v.values[1] == 0) {
        throw DomainError("deconvolution undefined: v(1) = 0");
    }
    std::vector<Scalar> beta(N + 1);
    for (std::size_t r = 1; r <= N + 1; ++r) {
        Scalar recip = 0;
        for (std::size_t l = r; l < r + n; ++l) {
            recip += 1 / chain.edge(l);
        }
        Scalar lhs =
            (chain.potential(r) - lambdaFold) * chain.measure(r) * v.values[r] * recip;
        for (std::size_t g = 2; g <= r; ++g) {
            lhs -= beta[r - g] * v.values[g];
        }
        beta[r - 1] = lhs / v.values[1];
    }
    return beta;
}

Scalar genfun_identity_check(const BirthDeathChain& chain, const Scalar& v0, const Scalar& v1,
                             std::size_t order, const Scalar& lambdaFold) {
    if (order < 2) {
        throw DomainError("generating-function identity needs order >= 2");
    }
    const Solution sol = full_history_solve_folded(chain, lambdaFold, v0, v1, order + 1);
    if (sol.values[1] == 0) {
        throw DomainError("deconvolution undefined: v(1) = 0");
    }

    TruncatedSeries A(order);
    for (std::size_t r = 1; r <= order; ++r) {
        A.set_coeff(r, sol.values[r]);
    }

    // 1 - sum_{n=1}^{order} z^n B_n(z), with B_n from the deconvolution.
    TruncatedSeries bracket(order);
    bracket.set_coeff(0, Scalar(1));
    for (std::size_t n = 1; n <= order; ++n) {
        const std::vector<Scalar> beta = beta_deconvolve(chain, sol, n, order - n, lambdaFold);
        for (std::size_t r = 0; r + n <= order; ++r) {
            bracket.set_coeff(r + n, bracket.coeff(r + n) - beta[r]);
        }
    }
    const TruncatedSeries lhs = A * bracket;

    TruncatedSeries rhs(order);
    Scalar recip = 0; // sum_{k=1}^{r-1} 1/b_k
    for (std::size_t r = 1; r <= order; ++r) {
        if (r >= 2) {
            recip += 1 / chain.edge(r - 1);
        }
        rhs.set_coeff(r, sol.C * recip + v1);
    }
    return max_abs_coeff_diff(lhs, rhs, order);
}

} // namespace bds
