#include "hjlab/field_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace hjlab {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_grid(std::ostream& out, const Field2D& field) {
  out << field.n() << ' ' << format_double(field.period()) << '\n';
  for (int i = 0; i < field.n(); ++i) {
    for (int j = 0; j < field.n(); ++j) {
      if (j) out << ' ';
      out << format_double(field(i, j));
    }
    out << '\n';
  }
}

Field2D read_grid(std::istream& in) {
  int n = 0;
  double period = 0.0;
  if (!(in >> n >> period)) throw std::runtime_error("grid file: malformed header");
  require_valid_resolution(n);
  std::vector<double> values(static_cast<std::size_t>(n) * n);
  for (double& v : values)
    if (!(in >> v)) throw std::runtime_error("grid file: expected " + std::to_string(values.size()) + " samples");
  return Field2D(n, period, std::move(values));
}

void save_grid(const std::filesystem::path& path, const Field2D& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_grid(out, field);
}

Field2D load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_grid(in);
}

void write_csv(std::ostream& out, const Field2D& field) {
  out << "x,y,value\n";
  const double h = field.spacing();
  for (int i = 0; i < field.n(); ++i)
    for (int j = 0; j < field.n(); ++j)
      out << format_double(i * h) << ',' << format_double(j * h) << ',' << format_double(field(i, j)) << '\n';
}

void save_csv(const std::filesystem::path& path, const Field2D& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out, field);
}

}  // namespace hjlab
