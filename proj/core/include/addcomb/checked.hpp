#pragma once

#include <cstdint>

#include "addcomb/errors.hpp"

namespace addcomb {

/// Coordinate type. All arithmetic on coordinates is overflow-checked;
/// an overflow aborts the operation instead of wrapping.
using Coord = std::int64_t;

inline Coord checked_add(Coord a, Coord b) {
    Coord r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline Coord checked_sub(Coord a, Coord b) {
    Coord r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Coord checked_mul(Coord a, Coord b) {
    Coord r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

inline Coord checked_neg(Coord a) { return checked_sub(0, a); }

} // namespace addcomb
