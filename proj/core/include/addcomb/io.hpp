#pragma once

#include <string>

#include "addcomb/point.hpp"

namespace addcomb {

/// Text format: '#' comment lines and blank lines are ignored; every data
/// line holds d whitespace-separated decimal integers, with d fixed by the
/// first data line. Duplicate points are rejected.
PointSet parse_pointset_text(const std::string& text);

/// JSON alternative: {"dim": d, "points": [[..], ..]}. Duplicates rejected.
PointSet parse_pointset_json(const std::string& text);

/// Reads a file, sniffing JSON by a leading '{'.
PointSet read_pointset_file(const std::string& path);

std::string format_pointset_text(const PointSet& a);
std::string format_pointset_json(const PointSet& a);
std::string format_pointset_csv(const PointSet& a);

} // namespace addcomb
