#include "fuzzchain/membership.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "fuzzchain/error.hpp"

namespace fuzzchain {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Membership::Membership(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError("membership " + std::to_string(value) + " is outside [0,1]");
    }
}

std::string format_membership(Membership m) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), m.value());
    if (ec != std::errc()) return std::to_string(m.value());
    return std::string(buf, end);
}

Membership parse_membership(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw BindingError("'" + text + "' is not a decimal number");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
        throw BindingError("value " + text + " is outside [0,1]");
    }
    return Membership(v);
}

}  // namespace fuzzchain
