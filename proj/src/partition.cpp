#include "rado/partition.hpp"

#include <bit>
#include <string>

namespace rado {

OrderedPartition::OrderedPartition(std::vector<std::vector<int>> blocks, int v) : blocks_(std::move(blocks)), columns_(v) {
  if (v < 1 || v > kMaxColumns) throw std::invalid_argument("ordered partition needs 1..63 columns");
  if (blocks_.empty()) throw std::invalid_argument("ordered partition needs at least one block");
  ColumnMask seen = 0;
  for (auto& block : blocks_) {
    if (block.empty()) throw std::invalid_argument("ordered partition has an empty block");
    std::sort(block.begin(), block.end());
    for (int i : block) {
      if (i < 0 || i >= v) throw std::invalid_argument("column index out of range in partition");
      const ColumnMask bit = ColumnMask{1} << i;
      if (seen & bit) throw std::invalid_argument("column repeated in partition");
      seen |= bit;
    }
  }
  if (seen != (ColumnMask{1} << v) - 1) throw std::invalid_argument("partition does not cover every column");
}

OrderedPartition OrderedPartition::from_masks(std::span<const ColumnMask> masks, int v) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(masks.size());
  for (ColumnMask m : masks) {
    std::vector<int> block;
    for (; m != 0; m &= m - 1) block.push_back(std::countr_zero(m));
    blocks.push_back(std::move(block));
  }
  return OrderedPartition(std::move(blocks), v);
}

ColumnMask OrderedPartition::mask(std::size_t t) const {
  ColumnMask m = 0;
  for (int i : blocks_.at(t)) m |= ColumnMask{1} << i;
  return m;
}

ColumnMask OrderedPartition::prefix_mask(std::size_t t) const {
  ColumnMask m = 0;
  for (std::size_t s = 0; s < t; ++s) m |= mask(s);
  return m;
}

std::size_t OrderedPartition::block_of(int column) const {
  for (std::size_t t = 0; t < blocks_.size(); ++t)
    if (std::find(blocks_[t].begin(), blocks_[t].end(), column) != blocks_[t].end()) return t;
  throw std::out_of_range("column not in partition");
}

std::string OrderedPartition::to_string() const {
  std::string s;
  for (std::size_t t = 0; t < blocks_.size(); ++t) {
    if (t) s += ' ';
    s += '{';
    for (std::size_t j = 0; j < blocks_[t].size(); ++j) {
      if (j) s += ',';
      s += std::to_string(blocks_[t][j] + 1);
    }
    s += '}';
  }
  return s;
}

namespace {

struct Enumerator {
  int v;
  std::optional<std::uint64_t> cap;
  const std::function<bool(const OrderedPartition&)>& visit;
  std::vector<ColumnMask> blocks;
  std::uint64_t yielded = 0;
  SearchStatus status = SearchStatus::Exhausted;

  // Returns false when enumeration must stop.
  bool run(ColumnMask remaining) {
    if (remaining == 0) {
      if (cap && yielded == *cap) {
        status = SearchStatus::CapExceeded;
        return false;
      }
      ++yielded;
      if (!visit(OrderedPartition::from_masks(blocks, v))) {
        status = SearchStatus::Found;
        return false;
      }
      return true;
    }
    for (ColumnMask s = detail::next_submask(0, remaining); s != 0; s = detail::next_submask(s, remaining)) {
      blocks.push_back(s);
      const bool go_on = run(remaining & ~s);
      blocks.pop_back();
      if (!go_on) return false;
    }
    return true;
  }
};

}  // namespace

SearchStatus enumerate_ordered_partitions(int v, std::optional<std::uint64_t> cap,
                                          const std::function<bool(const OrderedPartition&)>& visit) {
  if (v < 1 || v > kMaxColumns) throw std::invalid_argument("enumeration needs 1..63 columns");
  Enumerator e{v, cap, visit, {}};
  e.run((ColumnMask{1} << v) - 1);
  return e.status;
}

std::uint64_t fubini_number(int n) {
  if (n < 0) throw std::invalid_argument("fubini_number of a negative size");
  std::vector<std::uint64_t> a(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::vector<std::uint64_t>> binom(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    binom[i].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int k = 1; k < i; ++k) binom[i][k] = binom[i - 1][k - 1] + binom[i - 1][k];
  }
  a[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= m; ++k) a[m] += binom[m][k] * a[m - k];
  return a[static_cast<std::size_t>(n)];
}

}  // namespace rado
