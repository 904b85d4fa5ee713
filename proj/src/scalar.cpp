#include "bds/scalar.hpp"

#include "bds/errors.hpp"

#include <cctype>
#include <cstdio>

namespace bds {

double to_double(const Scalar& x) {
    return x.convert_to<double>();
}

std::string to_string(const Scalar& x) {
    const Integer num = numerator(x);
    const Integer den = denominator(x);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

// Base-10 accumulation; the backend's string constructor would read a
// leading zero as an octal prefix.
Integer digits_to_integer(std::string_view s) {
    Integer value = 0;
    for (char c : s) {
        value *= 10;
        value += c - '0';
    }
    return value;
}

} // namespace

Scalar parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        throw SpecParseError("empty rational literal: '" + std::string(text) + "'");
    }

    Scalar value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw SpecParseError("malformed rational literal: '" + std::string(text) + "'");
        }
        Integer d = digits_to_integer(den);
        if (d == 0) {
            throw SpecParseError("zero denominator in rational literal: '" + std::string(text) + "'");
        }
        value = Scalar(digits_to_integer(num), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) {
            throw SpecParseError("malformed decimal literal: '" + std::string(text) + "'");
        }
        Integer scaled = digits_to_integer(whole);
        for (char c : frac) {
            scaled *= 10;
            scaled += c - '0';
        }
        Integer pow10 = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            pow10 *= 10;
        }
        value = Scalar(scaled, pow10);
    } else {
        if (!all_digits(s)) {
            throw SpecParseError("malformed integer literal: '" + std::string(text) + "'");
        }
        value = Scalar(digits_to_integer(s));
    }
    return negative ? Scalar(-value) : value;
}

Scalar rational_pow(const Scalar& base, std::size_t exp) {
    Scalar result = 1;
    Scalar acc = base;
    std::size_t e = exp;
    while (e > 0) {
        if (e & 1U) {
            result *= acc;
        }
        e >>= 1U;
        if (e > 0) {
            acc *= acc;
        }
    }
    return result;
}

std::string format_double12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

} // namespace bds
