#include "limitlbm/grid.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "limitlbm/equilibrium.hpp"
#include "limitlbm/errors.hpp"
#include "limitlbm/manufactured.hpp"
#include "limitlbm/parallel.hpp"

namespace limitlbm {

static_assert(std::endian::native == std::endian::little,
              "binary snapshots assume a little-endian host");

std::size_t Grid::node_count() const {
  std::size_t count = 1;
  for (int k = 0; k < d; ++k) count *= static_cast<std::size_t>(n);
  return count;
}

std::array<int, 3> Grid::coords(std::size_t node) const {
  std::array<int, 3> c{0, 0, 0};
  for (int k = d - 1; k >= 0; --k) {
    c[k] = static_cast<int>(node % n);
    node /= n;
  }
  return c;
}

std::size_t Grid::index(const std::array<int, 3> &c) const {
  std::size_t node = 0;
  for (int k = 0; k < d; ++k) {
    const int wrapped = ((c[k] % n) + n) % n;
    node = node * n + wrapped;
  }
  return node;
}

Vec Grid::position(std::size_t node) const {
  const auto c = coords(node);
  Vec x{};
  for (int k = 0; k < d; ++k) x[k] = c[k] * dx;
  return x;
}

Grid make_grid(int d, int n, double extent) {
  if (d != 2 && d != 3) throw DomainError("grid dimension must be 2 or 3");
  if (n < 4) {
    throw DomainError("grid needs at least 4 nodes per direction, got " +
                      std::to_string(n));
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw DomainError("grid extent must be positive");
  }
  Grid g;
  g.d = d;
  g.n = n;
  g.extent = extent;
  g.dx = extent / n;
  g.dt = g.dx * g.dx;
  return g;
}

PopulationField::PopulationField(const Grid &grid, int q)
    : grid_(grid), q_(q), nodes_(grid.node_count()),
      data_(static_cast<std::size_t>(q) * nodes_, 0.0) {}

void PopulationField::gather(std::size_t node, std::span<double> out) const {
  for (int i = 0; i < q_; ++i) out[i] = data_[i * nodes_ + node];
}

void PopulationField::scatter(std::size_t node,
                              std::span<const double> values) {
  for (int i = 0; i < q_; ++i) data_[i * nodes_ + node] = values[i];
}

bool PopulationField::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void stream_into(const PopulationField &f, const Stencil &s,
                 PopulationField &out, int workers) {
  const Grid &g = f.grid();
  if (g.d != s.d || f.q() != s.q) {
    throw DimensionMismatch("stream: stencil " + s.name +
                            " does not match the population field");
  }
  if (!(out.grid() == g) || out.q() != s.q) out = PopulationField(g, s.q);

  const int n = g.n;
  // Rows along the last axis are contiguous; the source row of a row is a
  // fixed permutation per velocity.
  const std::size_t row_count = g.node_count() / n;
  for (int i = 0; i < s.q; ++i) {
    const auto &e = s.e[i];
    const auto src = f.population(i);
    auto dst = out.population(i);
    const int shift_last = e[g.d - 1];
    parallel_for(row_count, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t row = begin; row < end; ++row) {
        std::array<int, 3> c = g.coords(row * n);
        for (int k = 0; k < g.d - 1; ++k) c[k] -= e[k];
        const std::size_t src_row = g.index(c);
        const std::size_t dst_row = row * n;
        for (int j = 0; j < n; ++j) {
          int from = j - shift_last;
          if (from < 0) from += n;
          if (from >= n) from -= n;
          dst[dst_row + j] = src[src_row + from];
        }
      }
    });
  }
}

PopulationField stream(const PopulationField &f, const Stencil &s,
                       int workers) {
  PopulationField out(f.grid(), f.q());
  stream_into(f, s, out, workers);
  return out;
}

Stencil negated(const Stencil &s) {
  Stencil r = s;
  r.name = s.name + "_negated";
  for (auto &e : r.e)
    for (int &c : e) c = -c;
  return r;
}

PopulationField init_from_macro(const Grid &grid, const Stencil &s,
                                const ScalingParams &sc,
                                const AnalyticFlow &flow, double t,
                                InitMode mode) {
  if (grid.d != s.d || flow.dim() != s.d) {
    throw DimensionMismatch("init_from_macro: flow, grid and stencil "
                            "dimensions differ");
  }
  if (mode == InitMode::kChapmanEnskog) {
    return ce_populations(flow, t, grid, s, sc);
  }
  PopulationField f(grid, s.q);
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    const MacroState state = lattice_state(flow, t, grid.position(node), sc);
    if (!(state.n > 0.0)) {
      throw DegenerateDensity("init_from_macro: non-positive density",
                              grid.coords(node));
    }
    f.scatter(node, lattice_equilibrium(state, s, sc));
  }
  return f;
}

namespace {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
void WritePod(std::ofstream &out, const T &v) {
  out.write(reinterpret_cast<const char *>(&v), sizeof v);
}

template <typename T>
T ReadPod(std::ifstream &in, const std::filesystem::path &path) {
  T v{};
  in.read(reinterpret_cast<char *>(&v), sizeof v);
  if (!in) throw IoError("truncated snapshot " + path.string());
  return v;
}

}  // namespace

void write_snapshot_csv(const PopulationField &f,
                        const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const Grid &g = f.grid();
  static constexpr const char *kAxes[] = {"ix", "iy", "iz"};
  for (int k = 0; k < g.d; ++k) out << (k ? "," : "") << kAxes[k];
  for (int i = 0; i < f.q(); ++i) out << ",f" << i;
  out << '\n';
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const auto c = g.coords(node);
    for (int k = 0; k < g.d; ++k) out << (k ? "," : "") << c[k];
    for (int i = 0; i < f.q(); ++i) out << ',' << FormatDouble(f.at(i, node));
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

PopulationField read_snapshot_csv(const std::filesystem::path &path,
                                  double extent) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  int d = 0, q = 0;
  {
    std::stringstream header(line);
    std::string col;
    while (std::getline(header, col, ',')) {
      if (!col.empty() && col[0] == 'i') ++d;
      if (!col.empty() && col[0] == 'f') ++q;
    }
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<int>(row.size()) != d + q) {
      throw IoError("malformed snapshot row in " + path.string());
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(std::lround(std::pow(rows.size(), 1.0 / d)));
  PopulationField f(make_grid(d, n, extent), q);
  if (f.node_count() != rows.size()) {
    throw IoError("snapshot " + path.string() + " is not a cubic grid");
  }
  for (const auto &row : rows) {
    std::array<int, 3> c{0, 0, 0};
    for (int k = 0; k < d; ++k) c[k] = static_cast<int>(row[k]);
    const std::size_t node = f.grid().index(c);
    for (int i = 0; i < q; ++i) f.at(i, node) = row[d + i];
  }
  return f;
}

void write_snapshot_binary(const PopulationField &f,
                           const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write("LLBM", 4);
  WritePod(out, static_cast<std::int32_t>(f.grid().d));
  WritePod(out, static_cast<std::int32_t>(f.grid().n));
  WritePod(out, static_cast<std::int32_t>(f.q()));
  WritePod(out, f.grid().extent);
  for (std::size_t node = 0; node < f.node_count(); ++node)
    for (int i = 0; i < f.q(); ++i) WritePod(out, f.at(i, node));
  if (!out) throw IoError("write failed for " + path.string());
}

PopulationField read_snapshot_binary(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "LLBM") {
    throw IoError(path.string() + " is not a population snapshot");
  }
  const auto d = ReadPod<std::int32_t>(in, path);
  const auto n = ReadPod<std::int32_t>(in, path);
  const auto q = ReadPod<std::int32_t>(in, path);
  const auto extent = ReadPod<double>(in, path);
  PopulationField f(make_grid(d, n, extent), q);
  for (std::size_t node = 0; node < f.node_count(); ++node)
    for (int i = 0; i < q; ++i) f.at(i, node) = ReadPod<double>(in, path);
  return f;
}

}  // namespace limitlbm
