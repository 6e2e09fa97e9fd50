#include "fracbou/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fracbou {

namespace {
constexpr const char* magic = "fracbou-field 1";

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw std::runtime_error("snapshot " + path + ": " + why);
}
}  // namespace

void save_field(const SpectralField& f, const std::string& path, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open for writing");
  const SpectralGrid& g = f.grid();
  char head[160];
  std::snprintf(head, sizeof(head), "%s\nn %d\nlength %.17g\nlayout row-major\nformat %s\nend\n",
                magic, g.n(), g.length(), binary ? "binary" : "text");
  out << head;
  const double* p = f.phys();
  if (binary) {
    out.write(reinterpret_cast<const char*>(p),
              std::streamsize(g.phys_size() * sizeof(double)));
  } else {
    char buf[40];
    for (int i1 = 0; i1 < g.n(); ++i1) {
      for (int i2 = 0; i2 < g.n(); ++i2) {
        std::snprintf(buf, sizeof(buf), "%.17g", p[std::size_t(i1) * g.n() + i2]);
        out << buf << (i2 + 1 == g.n() ? '\n' : ' ');
      }
    }
  }
  if (!out) fail(path, "write failed");
}

SpectralField load_field(GridPtr grid, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");
  std::string line;
  if (!std::getline(in, line) || line != magic) fail(path, "bad header");
  int n = 0;
  double length = 0;
  std::string format;
  while (std::getline(in, line) && line != "end") {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "n")
      ls >> n;
    else if (key == "length")
      ls >> length;
    else if (key == "format")
      ls >> format;
    else if (key == "layout") {
      std::string v;
      ls >> v;
      if (v != "row-major") fail(path, "unsupported layout " + v);
    } else
      fail(path, "unknown header key " + key);
  }
  if (line != "end") fail(path, "truncated header");
  if (n != grid->n() || std::fabs(length - grid->length()) > 1e-12 * grid->length())
    fail(path, "stored grid " + std::to_string(n) + " does not match the target grid " +
                   std::to_string(grid->n()));

  std::vector<double> v(grid->phys_size());
  if (format == "binary") {
    in.read(reinterpret_cast<char*>(v.data()), std::streamsize(v.size() * sizeof(double)));
    if (std::size_t(in.gcount()) != v.size() * sizeof(double)) fail(path, "short payload");
  } else if (format == "text") {
    for (auto& x : v)
      if (!(in >> x)) fail(path, "short payload");
  } else {
    fail(path, "unknown format " + format);
  }
  return SpectralField::from_physical(std::move(grid), v);
}

}  // namespace fracbou
