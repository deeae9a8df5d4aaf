#pragma once

// Free-space lattice shared by the world generator's reachability check and the
// shortest-path oracle. Internal to the library.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "nspmr/geometry.hpp"
#include "nspmr/world.hpp"

namespace nspmr::detail {

class FreeGrid {
 public:
  static constexpr std::array<std::array<int, 2>, 8> kNeighbours{
      {{0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}}};

  FreeGrid(const Scenario& s, double resolution);

  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx_ + ix; }
  int ix_of(std::size_t id) const { return static_cast<int>(id % nx_); }
  int iy_of(std::size_t id) const { return static_cast<int>(id / nx_); }
  Point2 point(int ix, int iy) const { return {x0_ + ix * res_, y0_ + iy * res_}; }
  bool in_range(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < nx_ && iy < ny_; }

  bool node_free(std::size_t id) const { return free_[id] != 0; }
  /// Both endpoints free and the connecting segment touches no obstacle.
  bool edge_free(int ix, int iy, int jx, int jy) const;

  std::optional<std::size_t> start_node() const { return start_; }
  std::optional<std::size_t> goal_node() const { return goal_; }
  /// Straight-line remainder from the goal node to the exact goal.
  double goal_tail() const { return goal_tail_; }
  double resolution() const { return res_; }

 private:
  bool segment_blocked(Point2 a, Point2 b) const;

  std::vector<Polygon> shapes_;
  std::vector<Box> boxes_;
  double res_;
  double x0_ = 0.0;
  double y0_ = 0.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::uint8_t> free_;
  std::optional<std::size_t> start_;
  std::optional<std::size_t> goal_;
  double goal_tail_ = 0.0;
};

}  // namespace nspmr::detail
