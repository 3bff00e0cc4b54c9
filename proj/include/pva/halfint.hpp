#ifndef PVA_HALFINT_HPP
#define PVA_HALFINT_HPP

#include "pva/rational.hpp"

#include <compare>
#include <cstdlib>
#include <string>

namespace pva {

/// Element of (1/2)Z, stored as twice its value. Used for ad x eigenvalues,
/// conformal weights and index-table bounds.
struct HalfInt {
    int32_t twice = 0;

    HalfInt() = default;
    explicit constexpr HalfInt(int32_t twice_value) : twice(twice_value) {}
    static constexpr HalfInt whole(int32_t n) { return HalfInt(2 * n); }

    bool is_integer() const { return twice % 2 == 0; }
    int32_t floor() const { return twice >= 0 ? twice / 2 : (twice - 1) / 2; }
    Rat to_rat() const { return rat_of(twice, 2); }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice - b.twice); }
    friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.twice); }

    HalfInt abs() const { return HalfInt(std::abs(twice)); }

    std::string str() const {
        if (twice % 2 == 0) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }

    /// Parses "3", "-2" or "k/2" forms.
    static HalfInt parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            try {
                return whole(std::stoi(s));
            } catch (...) {
                throw ParseError("bad half-integer: '" + s + "'");
            }
        }
        if (s.substr(slash + 1) != "2") throw ParseError("bad half-integer denominator: '" + s + "'");
        try {
            return HalfInt(std::stoi(s.substr(0, slash)));
        } catch (...) {
            throw ParseError("bad half-integer: '" + s + "'");
        }
    }
};

constexpr HalfInt half_one{1};

} // namespace pva

#endif
