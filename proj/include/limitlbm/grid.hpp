#ifndef LIMITLBM_GRID_HPP_
#define LIMITLBM_GRID_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "limitlbm/lattice.hpp"
#include "limitlbm/scaling.hpp"
#include "limitlbm/types.hpp"

namespace limitlbm {

class AnalyticFlow;

/// Periodic Cartesian grid with N nodes per direction under the diffusive
/// coupling dt = dx^2. Nodes sit at x = (ix, iy, iz) * dx and are numbered
/// row-major (last coordinate fastest).
struct Grid {
  int d = 0;
  int n = 0;  // nodes per direction
  double extent = 0.0;
  double dx = 0.0;
  double dt = 0.0;

  std::size_t node_count() const;
  std::array<int, 3> coords(std::size_t node) const;
  std::size_t index(const std::array<int, 3> &c) const;  // wraps periodically
  Vec position(std::size_t node) const;

  bool operator==(const Grid &) const = default;
};

// Throws DomainError for d not in {2, 3}, n < 4 or extent <= 0.
Grid make_grid(int d, int n, double extent);

/// q populations per node, stored structure-of-arrays: one contiguous block
/// of node_count() values per velocity index.
class PopulationField {
 public:
  PopulationField() = default;
  PopulationField(const Grid &grid, int q);

  const Grid &grid() const { return grid_; }
  int q() const { return q_; }
  std::size_t node_count() const { return nodes_; }

  double &at(int i, std::size_t node) { return data_[i * nodes_ + node]; }
  double at(int i, std::size_t node) const { return data_[i * nodes_ + node]; }

  std::span<double> population(int i) {
    return {data_.data() + i * nodes_, nodes_};
  }
  std::span<const double> population(int i) const {
    return {data_.data() + i * nodes_, nodes_};
  }

  void gather(std::size_t node, std::span<double> out) const;
  void scatter(std::size_t node, std::span<const double> values);

  const std::vector<double> &raw() const { return data_; }
  std::vector<double> &raw() { return data_; }

  bool all_finite() const;

  bool operator==(const PopulationField &) const = default;

 private:
  Grid grid_;
  int q_ = 0;
  std::size_t nodes_ = 0;
  std::vector<double> data_;
};

// Pull streaming f'_i(x) = f_i(x - e_i dx) with periodic wrap. A pure
// permutation of the values. Throws DimensionMismatch if the stencil does not
// match the field.
PopulationField stream(const PopulationField &f, const Stencil &s,
                       int workers = 1);
void stream_into(const PopulationField &f, const Stencil &s,
                 PopulationField &out, int workers = 1);

// Copy of s with every velocity negated (and opposite indices kept).
Stencil negated(const Stencil &s);

enum class InitMode { kEquilibrium, kChapmanEnskog };

// Node-wise populations for the flow at time t. Equilibrium mode uses the
// lattice Maxwellian; Chapman-Enskog mode adds the first-order correction
// -3 nu h^2 (D/Dt) M^eq.
PopulationField init_from_macro(const Grid &grid, const Stencil &s,
                                const ScalingParams &sc,
                                const AnalyticFlow &flow, double t,
                                InitMode mode);

// CSV snapshot: header ix,iy[,iz],f0,...,f{q-1}, one row per node in
// row-major node order, 17 significant digits.
void write_snapshot_csv(const PopulationField &f,
                        const std::filesystem::path &path);
PopulationField read_snapshot_csv(const std::filesystem::path &path,
                                  double extent);

// Flat little-endian binary: "LLBM", int32 d, n, q, float64 extent, then q
// doubles per node in node order.
void write_snapshot_binary(const PopulationField &f,
                           const std::filesystem::path &path);
PopulationField read_snapshot_binary(const std::filesystem::path &path);

}  // namespace limitlbm

#endif  // LIMITLBM_GRID_HPP_
