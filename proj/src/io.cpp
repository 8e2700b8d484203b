#include "wedgelab/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace wedgelab {

namespace {

bool skippable(const std::string& line) {
  const auto p = line.find_first_not_of(" \t\r");
  return p == std::string::npos || line[p] == '#';
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

[[noreturn]] void parse_error(int line_no, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

AntisymmetricTensor read_tensor(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::optional<int> modes;
  std::vector<UpperEntry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    if (!modes) {
      int d = 0;
      if (!(ls >> d) || d < 2) parse_error(line_no, "expected mode count d >= 2");
      modes = d;
      continue;
    }
    UpperEntry e{};
    double re = 0.0, im = 0.0;
    if (!(ls >> e.i >> e.j >> re >> im)) parse_error(line_no, "expected `i j re im`");
    if (e.i < 0 || e.j >= *modes || e.i >= e.j) parse_error(line_no, "entry must satisfy 0 <= i < j < d");
    e.value = {re, im};
    entries.push_back(e);
  }
  if (!modes) throw std::invalid_argument("tensor file has no header");
  return AntisymmetricTensor::from_upper(*modes, entries);
}

AntisymmetricTensor read_tensor(const std::filesystem::path& path) {
  auto in = open(path);
  return read_tensor(in);
}

void write_tensor(std::ostream& out, const AntisymmetricTensor& t) {
  out << t.modes() << '\n' << std::setprecision(17);
  const auto& a = t.matrix();
  for (int i = 0; i < t.modes(); ++i)
    for (int j = i + 1; j < t.modes(); ++j)
      if (a(i, j) != cplx(0)) out << i << ' ' << j << ' ' << a(i, j).real() << ' ' << a(i, j).imag() << '\n';
}

SectorVector read_sector_vector(std::istream& in, std::optional<int> modes) {
  std::string line;
  int line_no = 0;
  std::optional<int> particles;
  std::vector<std::pair<Mask, cplx>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("# modes", 0) == 0) {
      std::istringstream ls(line);
      std::string hash, kw1, kw2;
      int d = 0, n = 0;
      if (!(ls >> hash >> kw1 >> d >> kw2 >> n) || kw2 != "particles") parse_error(line_no, "malformed header");
      modes = d;
      particles = n;
      continue;
    }
    if (skippable(line)) continue;
    std::istringstream ls(line);
    Mask m = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> m >> re >> im)) parse_error(line_no, "expected `mask re im`");
    rows.emplace_back(m, cplx(re, im));
  }
  if (!modes) throw std::invalid_argument("sector vector needs a mode count (header or argument)");
  if (!particles) {
    if (rows.empty()) throw std::invalid_argument("empty sector vector without header");
    particles = std::popcount(rows.front().first);
  }
  SectorVector v(enumerate_sector(*modes, *particles));
  for (const auto& [m, a] : rows) {
    const auto i = v.basis().find(m);
    if (i < 0) throw std::invalid_argument("mask " + std::to_string(m) + " is outside the sector");
    v[i] = a;
  }
  return v;
}

SectorVector read_sector_vector(const std::filesystem::path& path, std::optional<int> modes) {
  auto in = open(path);
  return read_sector_vector(in, modes);
}

void write_sector_vector(std::ostream& out, const SectorVector& v, double skip_below) {
  out << "# modes " << v.modes() << " particles " << v.particles() << '\n' << std::setprecision(17);
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const cplx a = v[static_cast<Eigen::Index>(i)];
    if (std::abs(a) <= skip_below) continue;
    out << states[i] << ' ' << a.real() << ' ' << a.imag() << '\n';
  }
}

}  // namespace wedgelab
