#pragma once

// Plain-text field files. A grid file starts with the header line `n period`
// followed by n lines of n samples (x index per line, y index along the
// line). Numbers use the shortest decimal form that round-trips.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hjlab/field.hpp"

namespace hjlab {

std::string format_double(double value);

void write_grid(std::ostream& out, const Field2D& field);
Field2D read_grid(std::istream& in);

void save_grid(const std::filesystem::path& path, const Field2D& field);
Field2D load_grid(const std::filesystem::path& path);

/// Columns x,y,value, one row per node.
void write_csv(std::ostream& out, const Field2D& field);
void save_csv(const std::filesystem::path& path, const Field2D& field);

}  // namespace hjlab
