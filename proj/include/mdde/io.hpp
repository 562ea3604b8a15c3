#pragma once

#include <string>
#include <vector>

#include "mdde/sweep.hpp"

namespace mdde {

/// Rectangular numeric table with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// 17 significant digits, '.' separator, negative zero written as 0.
std::string format_number(double value);

std::string encode_csv(const Table& table);
std::string encode_ppm(const Image& image);

void write_csv(const Table& table, const std::string& path);
void write_ppm(const Image& image, const std::string& path);

/// Writes raw bytes; throws Error(Io) on failure.
void write_file(const std::string& path, const std::string& bytes);

Table raster_table(const ClassRaster& raster, const GridSpec& grid);

}  // namespace mdde
