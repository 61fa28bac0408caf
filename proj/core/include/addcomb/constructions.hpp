#pragma once

#include <cstdint>
#include <span>

#include "addcomb/point.hpp"

namespace addcomb {

/// The sharp-equality family {0, e_1, ..., e_{d-1}} + {n*e_d : 1 <= n <= N}:
/// dN points on d parallel lines.
PointSet simplex_line(int d, Coord n_height);

/// Variant with one run length per line: line i holds sizes[i] consecutive
/// points above its base, starting at height 1.
PointSet simplex_lines(int d, std::span<const Coord> sizes);

/// The box {0, ..., m}^d.
PointSet box(int d, Coord m);

/// Uniform n-subset of box(d, m), fully determined by the seed.
PointSet random_subset(int d, std::size_t n, Coord m, std::uint64_t seed);

/// Number of points of box(d, m); errors out instead of overflowing.
std::uint64_t box_size(int d, Coord m);

/// Point of box(d, m) at lexicographic position `index`.
Point box_point_at(int d, Coord m, std::uint64_t index);

} // namespace addcomb
