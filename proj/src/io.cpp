#include "mdde/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace mdde {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string encode_csv(const Table& table) {
  require(!table.header.empty(), "table needs a header");
  std::string out;
  for (std::size_t k = 0; k < table.header.size(); ++k) {
    if (k) out += ',';
    out += table.header[k];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    require(row.size() == table.header.size(), "table is not rectangular");
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_number(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string encode_ppm(const Image& image) {
  require(image.width >= 1 && image.height >= 1 &&
              image.rgb.size() == 3 * static_cast<std::size_t>(image.width) * image.height,
          "image is empty or malformed");
  std::string out = "P6\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.rgb.data()), image.rgb.size());
  return out;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  os.close();
  if (!os) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

void write_csv(const Table& table, const std::string& path) {
  write_file(path, encode_csv(table));
}

void write_ppm(const Image& image, const std::string& path) {
  write_file(path, encode_ppm(image));
}

Table raster_table(const ClassRaster& raster, const GridSpec& grid) {
  require(raster.width == grid.width && raster.height == grid.height,
          "raster does not match the grid");
  Table t;
  t.header = {"i", "j", "c_re", "c_im", "class", "scalar"};
  t.rows.reserve(raster.classes.size());
  for (int j = 0; j < raster.height; ++j) {
    for (int i = 0; i < raster.width; ++i) {
      const Complex c = grid.pixel_to_c(i, j);
      const std::size_t k = raster.index(i, j);
      t.rows.push_back({static_cast<double>(i), static_cast<double>(j), c.real(), c.imag(),
                        static_cast<double>(raster.classes[k]), raster.scalars[k]});
    }
  }
  return t;
}

}  // namespace mdde
