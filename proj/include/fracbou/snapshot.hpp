#pragma once
#include <string>

#include "fracbou/field.hpp"

// Field snapshots: a short self-describing text header followed by the
// physical samples, either as little-endian binary doubles or as decimal
// text, one row per line.

namespace fracbou {

void save_field(const SpectralField& f, const std::string& path, bool binary = true);

// the stored grid shape and length must match `grid`
SpectralField load_field(GridPtr grid, const std::string& path);

}  // namespace fracbou
