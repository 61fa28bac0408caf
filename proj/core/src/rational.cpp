#include "addcomb/rational.hpp"

namespace addcomb {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

} // namespace

Rat Rat::from_wide(i128 n, i128 d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) return Rat();
    u128 g = gcd128(abs128(n), abs128(d));
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
    Rat r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
}

Rat::Rat(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

Rat Rat::operator-() const {
    Rat r;
    r.num_ = narrow(-static_cast<i128>(num_));
    r.den_ = den_;
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    return *this = from_wide(n, d);
}

Rat& Rat::operator-=(const Rat& o) {
    i128 n = static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    return *this = from_wide(n, d);
}

Rat& Rat::operator*=(const Rat& o) {
    i128 n = static_cast<i128>(num_) * o.num_;
    i128 d = static_cast<i128>(den_) * o.den_;
    return *this = from_wide(n, d);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.num_ == 0) throw Error("rational division by zero");
    i128 n = static_cast<i128>(num_) * o.den_;
    i128 d = static_cast<i128>(den_) * o.num_;
    return *this = from_wide(n, d);
}

std::string Rat::str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
        s += '/';
        s += std::to_string(den_);
    }
    return s;
}

} // namespace addcomb
