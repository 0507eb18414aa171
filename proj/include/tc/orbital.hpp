#pragma once

#include <cstdint>
#include <vector>

#include "tc/perm_group.hpp"

namespace tc {

// The partition of Omega x Omega into G-orbits. Colors are numbered in the
// order a row-major scan from (0,0) first meets them.
class OrbitalPartition {
 public:
  explicit OrbitalPartition(const PermGroup& G);

  std::size_t degree() const { return n_; }
  std::size_t rank() const { return sizes_.size(); }
  std::uint32_t color(Point a, Point b) const {
    std::size_t i = static_cast<std::size_t>(a) * n_ + b;
    switch (width_) {
      case 1: return cells_[i];
      case 2: return reinterpret_cast<const std::uint16_t*>(cells_.data())[i];
      default: return reinterpret_cast<const std::uint32_t*>(cells_.data())[i];
    }
  }
  std::size_t cell_width() const { return width_; }  // bytes per stored color
  std::vector<std::uint32_t> dense() const;

  std::size_t orbit_size(std::uint32_t c) const { return sizes_.at(c); }
  std::pair<Point, Point> representative(std::uint32_t c) const { return reps_.at(c); }
  std::uint32_t paired(std::uint32_t c) const { return paired_.at(c); }
  bool is_self_paired(std::uint32_t c) const { return paired(c) == c; }
  bool is_diagonal(std::uint32_t c) const { return reps_.at(c).first == reps_.at(c).second; }

  bool transitive() const { return transitive_; }
  // suborbit lengths of the stabilizer of point 0, sorted (transitive only)
  std::vector<std::size_t> subdegrees() const;

 private:
  void set(std::size_t i, std::uint32_t c);

  std::size_t n_ = 0;
  std::size_t width_ = 1;
  std::vector<std::uint8_t> cells_;
  std::vector<std::size_t> sizes_;
  std::vector<std::pair<Point, Point>> reps_;
  std::vector<std::uint32_t> paired_;
  bool transitive_ = false;
};

bool higman_primitive(const PermGroup& G);
bool higman_primitive(const PermGroup& G, const OrbitalPartition& op);

}  // namespace tc
