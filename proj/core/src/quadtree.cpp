#include "sdude/quadtree.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <ostream>

namespace sdude {

QuadTree::QuadTree(int log2_side, std::string preorder)
    : log2_side_(log2_side), preorder_(std::move(preorder)) {
  if (log2_side < 0 || log2_side > 15) throw DomainError("quadtree side exponent out of range");
  std::size_t pos = 0;
  std::function<void(int)> walk = [&](int depth) {
    if (pos >= preorder_.size()) throw FormatError("truncated quadtree pre-order string");
    char ch = preorder_[pos++];
    depth_ = std::max(depth_, depth);
    if (ch == '0') {
      ++leaves_;
    } else if (ch == '1') {
      if (depth >= log2_side_) throw DomainError("quadtree splits a unit cell");
      for (int i = 0; i < 4; ++i) walk(depth + 1);
    } else {
      throw FormatError("quadtree pre-order string may contain only '0' and '1'");
    }
  };
  walk(0);
  if (pos != preorder_.size()) throw FormatError("trailing characters in quadtree pre-order string");
}

namespace {

// All pre-order strings of subtrees with `leaves` leaves and at most
// `levels` further splits, in lexicographic order.
std::vector<std::string> subtrees(int leaves, int levels) {
  std::vector<std::string> out;
  if (leaves == 1) out.emplace_back("0");
  if (leaves < 4 || (leaves - 1) % 3 != 0 || levels == 0) return out;

  std::vector<std::vector<std::string>> memo(leaves + 1);
  auto child = [&](int l) -> const std::vector<std::string>& {
    if (memo[l].empty()) memo[l] = subtrees(l, levels - 1);
    return memo[l];
  };
  for (int a = 1; a <= leaves - 3; a += 3)
    for (int b = 1; a + b <= leaves - 2; b += 3)
      for (int c = 1; a + b + c <= leaves - 1; c += 3) {
        int d = leaves - a - b - c;
        if ((d - 1) % 3 != 0) continue;
        for (const auto& sa : child(a))
          for (const auto& sb : child(b))
            for (const auto& sc : child(c))
              for (const auto& sd : child(d)) out.push_back("1" + sa + sb + sc + sd);
      }
  std::sort(out.begin(), out.end());
  return out;
}

void label_cells(const std::string& pre, std::size_t& pos, int row, int col, int size, int& next,
                 RegionMap& map) {
  if (pre[pos++] == '0') {
    int id = ++next;
    for (int r = row; r < row + size; ++r)
      for (int c = col; c < col + size; ++c) map.labels[static_cast<std::size_t>(r) * map.side + c] = id;
    return;
  }
  int h = size / 2;
  label_cells(pre, pos, row, col, h, next, map);          // upper-left
  label_cells(pre, pos, row, col + h, h, next, map);      // upper-right
  label_cells(pre, pos, row + h, col + h, h, next, map);  // lower-right
  label_cells(pre, pos, row + h, col, h, next, map);      // lower-left
}

} // namespace

std::vector<QuadTree> quadtree_enumerate(int m, int max_depth, int log2_side) {
  std::vector<QuadTree> out;
  if (m < 1 || (m - 1) % 3 != 0) {
    std::clog << "warning: no quadtree has " << m << " leaves; leaf counts are 3j+1\n";
    return out;
  }
  int levels = std::clamp(max_depth, 0, log2_side);
  for (auto& s : subtrees(m, levels)) out.emplace_back(log2_side, std::move(s));
  return out;
}

RegionMap region_map(const QuadTree& q) {
  RegionMap map;
  map.side = q.side();
  map.labels.assign(static_cast<std::size_t>(map.side) * map.side, 0);
  std::size_t pos = 0;
  int next = 0;
  label_cells(q.preorder(), pos, 0, 0, map.side, next, map);
  return map;
}

void write_region_csv(std::ostream& out, const RegionMap& map) {
  out << "row,col,label\n";
  for (int r = 0; r < map.side; ++r)
    for (int c = 0; c < map.side; ++c) out << r << ',' << c << ',' << map({r, c}) << '\n';
}

std::uint64_t split_history_count(int m) {
  if (m < 1 || (m - 1) % 3 != 0) throw DomainError("leaf count must have the form 3j+1");
  std::uint64_t product = 1;
  for (int i = 0; i < (m - 1) / 3; ++i) product *= static_cast<std::uint64_t>(3 * i + 1);
  return product;
}

} // namespace sdude
