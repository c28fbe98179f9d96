#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sdude/grid.hpp"

namespace sdude {

// Dyadic quadtree over a 2^r x 2^r lattice. Children are ordered
// upper-left, upper-right, lower-right, lower-left. The tree is stored as its
// pre-order split string: '1' for an internal node, '0' for a leaf.
class QuadTree {
public:
  QuadTree(int log2_side, std::string preorder);

  static QuadTree leaf(int log2_side) { return QuadTree(log2_side, "0"); }

  int log2_side() const { return log2_side_; }
  int side() const { return 1 << log2_side_; }
  const std::string& preorder() const { return preorder_; }
  int leaf_count() const { return leaves_; }
  int depth() const { return depth_; }

  friend bool operator==(const QuadTree&, const QuadTree&) = default;

private:
  int log2_side_;
  std::string preorder_;
  int leaves_ = 0;
  int depth_ = 0;
};

// All distinct quadtrees with exactly m leaves and depth <= max_depth, in
// lexicographic order of their pre-order strings ('0' < '1'). Returns an empty
// list and warns on std::clog when m is not of the form 3j+1. The trees are
// built for a lattice of side 2^log2_side; max_depth is clamped to log2_side.
std::vector<QuadTree> quadtree_enumerate(int m, int max_depth, int log2_side);

// Leaf labels 1..m in pre-order, one per cell, row-major N x N.
struct RegionMap {
  int side = 0;
  std::vector<int> labels;
  int operator()(Coord t) const { return labels[static_cast<std::size_t>(t.row) * side + t.col]; }
};

RegionMap region_map(const QuadTree& q);

// "row,col,label" CSV.
void write_region_csv(std::ostream& out, const RegionMap& map);

// Ordered split sequences that reach m = 3j+1 leaves: prod_{i<j} (3i+1).
// Throws DomainError for other m.
std::uint64_t split_history_count(int m);

} // namespace sdude
