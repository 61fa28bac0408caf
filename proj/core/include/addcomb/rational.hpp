#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "addcomb/errors.hpp"

namespace addcomb {

/// Exact rational on 64-bit numerator/denominator. Comparisons are done by
/// cross-multiplication in 128-bit integers; arithmetic normalizes through
/// 128-bit intermediates and fails loudly if a result does not narrow back.
/// No floating point anywhere.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rat(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    bool is_zero() const { return num_ == 0; }

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        // denominators are positive, so the order of a/b and c/d is the
        // order of the cross products a*d and c*b
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "p/q", or just "p" when the value is an integer.
    std::string str() const;

private:
    static Rat from_wide(__int128 n, __int128 d);

    std::int64_t num_;
    std::int64_t den_;  // always > 0
};

} // namespace addcomb
