#include "bds/sequence.hpp"

#include "bds/errors.hpp"

#include <utility>

namespace bds {

SequenceSpec SequenceSpec::constant(Scalar c) {
    SequenceSpec s;
    s.family_ = Family::Const;
    s.data_ = {std::move(c)};
    return s;
}

SequenceSpec SequenceSpec::geometric(Scalar base, Scalar ratio) {
    SequenceSpec s;
    s.family_ = Family::Geom;
    s.data_ = {std::move(base), std::move(ratio)};
    return s;
}

SequenceSpec SequenceSpec::polynomial(std::vector<Scalar> coeffs) {
    if (coeffs.empty()) {
        throw DomainError("polynomial sequence needs at least one coefficient");
    }
    SequenceSpec s;
    s.family_ = Family::Poly;
    s.data_ = std::move(coeffs);
    return s;
}

SequenceSpec SequenceSpec::table(std::vector<Scalar> prefix, SequenceSpec tail) {
    if (prefix.empty()) {
        throw DomainError("table sequence needs at least one tabulated value");
    }
    SequenceSpec s;
    s.family_ = Family::Table;
    s.data_ = std::move(prefix);
    s.tail_ = std::make_shared<const SequenceSpec>(std::move(tail));
    return s;
}

Scalar SequenceSpec::eval(std::int64_t k) const {
    if (k < 0) {
        throw DomainError("sequence index must be nonnegative, got " + std::to_string(k));
    }
    switch (family_) {
    case Family::Const:
        return data_[0];
    case Family::Geom:
        return data_[0] * rational_pow(data_[1], static_cast<std::size_t>(k));
    case Family::Poly: {
        // Horner in the exact index value.
        const Scalar x{k};
        Scalar acc = 0;
        for (auto it = data_.rbegin(); it != data_.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }
    case Family::Table: {
        const auto idx = static_cast<std::size_t>(k);
        if (idx < data_.size()) {
            return data_[idx];
        }
        return tail_->eval(k - static_cast<std::int64_t>(data_.size()));
    }
    }
    throw InternalError("unreachable sequence family");
}

void SequenceSpec::require_positive(std::size_t upTo, std::string_view role) const {
    const std::string who(role);
    switch (family_) {
    case Family::Const:
        if (data_[0] <= 0) {
            throw InvalidChainError(who + " must be positive: constant " + to_string(data_[0]));
        }
        return;
    case Family::Geom:
        if (data_[0] <= 0 || data_[1] <= 0) {
            throw InvalidChainError(who + " must be positive: geometric base " + to_string(data_[0]) +
                                    ", ratio " + to_string(data_[1]));
        }
        return;
    case Family::Poly:
        for (std::size_t k = 0; k <= upTo; ++k) {
            if (eval(static_cast<std::int64_t>(k)) <= 0) {
                throw InvalidChainError(who + " must be positive, violated at index " + std::to_string(k));
            }
        }
        return;
    case Family::Table: {
        for (std::size_t k = 0; k < data_.size() && k <= upTo; ++k) {
            if (data_[k] <= 0) {
                throw InvalidChainError(who + " must be positive, violated at index " + std::to_string(k));
            }
        }
        if (upTo + 1 > data_.size()) {
            tail_->require_positive(upTo - data_.size(), who);
        } else {
            // Prefix covers the requested range; still reject constant/geometric
            // tails that can never be positive (cheap whole-line analysis).
            if (tail_->family_ == Family::Const || tail_->family_ == Family::Geom) {
                tail_->require_positive(0, who);
            }
        }
        return;
    }
    }
}

bool SequenceSpec::operator==(const SequenceSpec& other) const {
    if (family_ != other.family_ || data_ != other.data_) {
        return false;
    }
    if (family_ == Family::Table) {
        return *tail_ == *other.tail_;
    }
    return true;
}

namespace {

[[noreturn]] void wrong_family(const char* what) {
    throw DomainError(std::string("sequence accessor misuse: ") + what);
}

} // namespace

const Scalar& SequenceSpec::const_value() const {
    if (family_ != Family::Const) wrong_family("const_value");
    return data_[0];
}

const Scalar& SequenceSpec::geom_base() const {
    if (family_ != Family::Geom) wrong_family("geom_base");
    return data_[0];
}

const Scalar& SequenceSpec::geom_ratio() const {
    if (family_ != Family::Geom) wrong_family("geom_ratio");
    return data_[1];
}

const std::vector<Scalar>& SequenceSpec::poly_coeffs() const {
    if (family_ != Family::Poly) wrong_family("poly_coeffs");
    return data_;
}

const std::vector<Scalar>& SequenceSpec::table_prefix() const {
    if (family_ != Family::Table) wrong_family("table_prefix");
    return data_;
}

const SequenceSpec& SequenceSpec::table_tail() const {
    if (family_ != Family::Table) wrong_family("table_tail");
    return *tail_;
}

Scalar seq_eval(const SequenceSpec& spec, std::int64_t k) {
    return spec.eval(k);
}

} // namespace bds
