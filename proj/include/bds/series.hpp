#pragma once

#include "bds/chain.hpp"
#include "bds/scalar.hpp"

#include <vector>

namespace bds {

/// Exact formal power series truncated at a fixed order. Arithmetic tracks
/// the reliable order: products and sums take the minimum, a derivative drops
/// it by one, multiplying by z^k raises it by k. Asking for a coefficient
/// beyond the order is an error rather than a silent zero.
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order); // all coefficients zero
    static TruncatedSeries from_coeffs(std::vector<Scalar> coeffs); // order = size - 1

    std::size_t order() const { return coeffs_.size() - 1; }
    const Scalar& coeff(std::size_t r) const;
    void set_coeff(std::size_t r, Scalar value);

    TruncatedSeries operator+(const TruncatedSeries& rhs) const;
    TruncatedSeries operator-(const TruncatedSeries& rhs) const;
    TruncatedSeries operator*(const TruncatedSeries& rhs) const; // Cauchy product
    TruncatedSeries scaled(const Scalar& factor) const;
    TruncatedSeries derivative() const;
    TruncatedSeries shift_up(std::size_t k) const; // multiply by z^k

private:
    std::vector<Scalar> coeffs_; // c_0 .. c_order
};

/// Largest |a_r - b_r| over r = 0..through.
Scalar max_abs_coeff_diff(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t through);

/// Expansion of P(z)/Q(z) with Q(0) != 0 through the given order, via the
/// coefficient recurrence.
TruncatedSeries expand_rational(const std::vector<Scalar>& numer, const std::vector<Scalar>& denom,
                                std::size_t order);

/// Constant-case generating function
///   A(z) = (1-z)^2 / ((1-z)^2 - alpha z) * ( (v1-v0) z/(1-z)^2 + v0 z/(1-z) )
/// expanded exactly; coefficient r equals v_r of v_{r+1} = (2+alpha) v_r - v_{r-1}.
TruncatedSeries genfun_constant_case(const Scalar& alpha, const Scalar& v0, const Scalar& v1,
                                     std::size_t order);

/// Binet-style closed form for the constant case, float view. Valid for
/// r >= 3 and alpha > 0 (so the square root is real); the prefactor is
/// 2^{-r}/beta_alpha with beta_alpha = sqrt(4 alpha + alpha^2), the reading
/// that matches the exact coefficients.
double power_formula(double alpha, double v0, double v1, std::size_t r);

/// Stirling numbers of the second kind via the alternating-sum formula, exact.
Scalar stirling2(std::size_t gamma, std::size_t k);

/// Falling factorial r (r-1) ... (r-k+1); empty product is 1.
Scalar falling_factorial(std::size_t r, std::size_t k);

/// Precomputed {gamma brace k} for 0 <= k <= gamma <= limit.
struct StirlingTable {
    std::vector<std::vector<Scalar>> rows;

    static StirlingTable build(std::size_t limit);
    const Scalar& at(std::size_t gamma, std::size_t k) const;
};

/// Residual of the power-law ODE identity
///   A(z) = v0 z/(1-z) + (v1-v0) z/(1-z)^2 + (z/b)/(1-z)^2 * sum_k {gamma brace k} z^k A^{(k)}(z)
/// for the solution of v_{r+1} = v_r (2 + r^gamma / b) - v_{r-1}. The maximum
/// absolute coefficient mismatch through order N - gamma, expected exactly 0.
Scalar ode_identity_residual(const Scalar& b, std::size_t gamma, const Scalar& v0, const Scalar& v1,
                             std::size_t N);

/// Solves the lower-triangular deconvolution
///   W_r m_r v_r sum_{l=r}^{r+n-1} 1/b_l = sum_{g=1}^{r} beta_{r-g,n} v_g
/// for beta_{0,n} .. beta_{N,n}; pivots on v_1 (error if it vanishes). The
/// chain potential is treated as effective; a nonzero lambdaFold subtracts the
/// shift pointwise first.
std::vector<Scalar> beta_deconvolve(const BirthDeathChain& chain, const Solution& v, std::size_t n,
                                    std::size_t N, const Scalar& lambdaFold = Scalar(0));

/// Residual of the generating-function identity
///   A(z) (1 - sum_{n>=1} z^n B_n(z)) = C sum_r (sum_{k=1}^{r-1} 1/b_k) z^r + v1 z/(1-z),
/// with B_n built from beta_deconvolve (beta indexed from 0) and v from the
/// full-history solver. Maximum coefficient mismatch through the given order,
/// expected exactly 0.
Scalar genfun_identity_check(const BirthDeathChain& chain, const Scalar& v0, const Scalar& v1,
                             std::size_t order, const Scalar& lambdaFold = Scalar(0));

} // namespace bds
