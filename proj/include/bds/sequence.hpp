#pragma once

#include "bds/scalar.hpp"

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

namespace bds {

/// Finite description of an infinite rational sequence over k = 0, 1, 2, ...
///
/// Families:
///   constant(c)            -> c at every index
///   geometric(a, q)        -> a * q^k
///   polynomial(c0..cd)     -> sum c_i k^i
///   table(x0..xn, tail)    -> tabulated prefix, then the tail evaluated at
///                             the shifted index k - (n+1)
///
/// Values are immutable after construction; copies share tail nodes.
class SequenceSpec {
public:
    enum class Family { Const, Geom, Poly, Table };

    SequenceSpec() : data_{Scalar(0)} {} // constant zero

    static SequenceSpec constant(Scalar c);
    static SequenceSpec geometric(Scalar base, Scalar ratio);
    static SequenceSpec polynomial(std::vector<Scalar> coeffs); // nonempty, c0 first
    static SequenceSpec table(std::vector<Scalar> prefix, SequenceSpec tail); // nonempty prefix

    Family family() const { return family_; }

    /// Exact value at index k. Negative k is a domain error.
    Scalar eval(std::int64_t k) const;

    /// Eager positivity check over indices [0, upTo]; for constant/geometric
    /// families the check covers the whole line via sign analysis.
    void require_positive(std::size_t upTo, std::string_view role) const;

    bool operator==(const SequenceSpec& other) const;

    // Family accessors (misuse throws DomainError).
    const Scalar& const_value() const;
    const Scalar& geom_base() const;
    const Scalar& geom_ratio() const;
    const std::vector<Scalar>& poly_coeffs() const;
    const std::vector<Scalar>& table_prefix() const;
    const SequenceSpec& table_tail() const;

private:
    Family family_ = Family::Const;
    std::vector<Scalar> data_;                   // Const: {c}; Geom: {a, q}; Poly/Table: coefficients / prefix
    std::shared_ptr<const SequenceSpec> tail_;   // Table only
};

Scalar seq_eval(const SequenceSpec& spec, std::int64_t k);

} // namespace bds
