#pragma once

#include <compare>
#include <string>

namespace fuzzchain {

/// A grade in [0,1]. Max and min only ever select among their inputs, so
/// values are compared exactly throughout.
class Membership {
public:
    constexpr Membership() = default;
    /// Throws DomainError unless 0 <= value <= 1.
    explicit Membership(double value);

    static constexpr Membership zero() { return Membership(Raw{0.0}); }
    static constexpr Membership one() { return Membership(Raw{1.0}); }

    constexpr double value() const { return value_; }

    friend constexpr bool operator==(Membership a, Membership b) { return a.value_ == b.value_; }
    friend constexpr auto operator<=>(Membership a, Membership b) { return a.value_ <=> b.value_; }

private:
    struct Raw {
        double v;
    };
    constexpr explicit Membership(Raw r) : value_(r.v) {}

    double value_ = 0.0;
};

/// Union (+): the larger grade.
constexpr Membership snorm_max(Membership a, Membership b) { return a < b ? b : a; }

/// Concatenation: the smaller grade.
constexpr Membership tnorm_min(Membership a, Membership b) { return b < a ? b : a; }

/// Shortest decimal text that round-trips to the same double ("0.6", "1", "0").
std::string format_membership(Membership m);

/// Parses a decimal in [0,1]; throws BindingError on anything else.
Membership parse_membership(const std::string& text);

}  // namespace fuzzchain
