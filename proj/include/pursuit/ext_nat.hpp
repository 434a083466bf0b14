#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pursuit {

// A natural number or infinity. Used for state labels, relation ranks,
// matrix entries and game lengths. Infinity compares greater than every
// finite value.
class ExtNat {
public:
    constexpr ExtNat() = default;
    constexpr explicit ExtNat(std::uint32_t value) : _value{ value }
    {
        if (value == kInfinity)
            throw std::overflow_error("ExtNat: finite value out of range");
    }

    static constexpr ExtNat infinity()
    {
        ExtNat v;
        v._value = kInfinity;
        return v;
    }

    [[nodiscard]] constexpr bool is_finite() const { return _value != kInfinity; }
    [[nodiscard]] constexpr bool is_infinite() const { return _value == kInfinity; }

    [[nodiscard]] std::uint32_t value() const
    {
        if (!is_finite())
            throw std::logic_error("ExtNat: value() on infinity");
        return _value;
    }

    // 1 + x, with 1 + inf = inf.
    [[nodiscard]] constexpr ExtNat successor() const
    {
        if (!is_finite())
            return *this;
        return ExtNat{ _value + 1 };
    }

    // ceil(x / 2), with ceil(inf / 2) = inf.
    [[nodiscard]] constexpr ExtNat half_up() const
    {
        if (!is_finite())
            return *this;
        return ExtNat{ (_value + 1) / 2 };
    }

    constexpr auto operator<=>(const ExtNat&) const = default;

    [[nodiscard]] std::string to_string() const
    {
        return is_finite() ? std::to_string(_value) : std::string{ "inf" };
    }

private:
    static constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t _value = 0;
};

inline std::ostream& operator<<(std::ostream& os, const ExtNat& v)
{
    return os << v.to_string();
}

} // namespace pursuit
