#ifndef RADO_PARTITION_HPP
#define RADO_PARTITION_HPP

// Ordered set partitions of column indices and the canonical search over them.
//
// Canonical order: partitions are built block by block. At each step the
// next block ranges over the nonempty subsets of the still unassigned
// columns, in increasing order of their bitmask (column i <-> bit i). The
// resulting order is lexicographic in the sequence of block masks, which lets
// a search reject a whole family of partitions as soon as one prefix block
// fails, without changing which partition is found first.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rado {

using ColumnMask = std::uint64_t;

inline constexpr int kMaxColumns = 63;

class OrderedPartition {
 public:
  OrderedPartition() = default;
  /// Throws std::invalid_argument unless `blocks` partition {0, ..., v-1}.
  OrderedPartition(std::vector<std::vector<int>> blocks, int v);

  static OrderedPartition from_masks(std::span<const ColumnMask> masks, int v);

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  int columns() const { return columns_; }
  const std::vector<int>& operator[](std::size_t t) const { return blocks_[t]; }

  ColumnMask mask(std::size_t t) const;
  /// Union of blocks 0..t-1.
  ColumnMask prefix_mask(std::size_t t) const;
  /// Block index holding column i.
  std::size_t block_of(int column) const;

  /// 1-based text form, e.g. "{1,3} {2}".
  std::string to_string() const;

  bool operator==(const OrderedPartition&) const = default;

 private:
  std::vector<std::vector<int>> blocks_;
  int columns_ = 0;
};

enum class SearchStatus { Found, Exhausted, CapExceeded };

struct SearchOptions {
  /// Budget on tested candidate blocks (each prefix test counts once).
  std::uint64_t cap = 10'000'000;
  unsigned threads = 1;
};

template <typename Result>
struct SearchOutcome {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<Result> result;
  std::vector<ColumnMask> blocks;  // the partition that produced `result`
  std::uint64_t steps = 0;
};

/// Visits every ordered partition of {0..v-1} in canonical order. The visitor
/// returns false to stop. Returns Exhausted after a full pass, Found when the
/// visitor stopped early, CapExceeded once `cap` partitions were yielded and
/// more remain.
SearchStatus enumerate_ordered_partitions(int v, std::optional<std::uint64_t> cap,
                                          const std::function<bool(const OrderedPartition&)>& visit);

/// Ordered Bell (Fubini) number by the recurrence a(n) = sum_k C(n,k) a(n-k).
std::uint64_t fubini_number(int n);

namespace detail {

inline ColumnMask next_submask(ColumnMask current, ColumnMask set) { return (current - set) & set; }

template <typename Tester, typename Finisher, typename Result>
struct BranchRunner {
  Tester& test;
  Finisher& finish;
  std::uint64_t budget;
  std::uint64_t steps = 0;
  std::vector<ColumnMask> blocks;
  std::optional<Result> result;
  bool capped = false;

  bool descend(ColumnMask remaining) {
    if (remaining == 0) {
      result = finish(std::span<const ColumnMask>(blocks));
      return result.has_value();
    }
    for (ColumnMask s = next_submask(0, remaining); s != 0; s = next_submask(s, remaining)) {
      if (try_block(s, remaining)) return true;
      if (capped) return false;
    }
    return false;
  }

  // Tests one candidate block; returns true when a result was produced below it.
  bool try_block(ColumnMask block, ColumnMask remaining) {
    if (steps == budget) {
      capped = true;
      return false;
    }
    ++steps;
    blocks.push_back(block);
    if (test(std::span<const ColumnMask>(blocks)) && descend(remaining & ~block)) return true;
    blocks.pop_back();
    return false;
  }
};

}  // namespace detail

/// Depth-first search for the first ordered partition, in canonical order,
/// all of whose blocks pass `test` and for which `finish` returns a value.
///
/// `test(blocks)` judges the last block given the earlier ones; `finish`
/// receives a complete partition. Both must be deterministic and callable
/// concurrently through independent copies: each first-level branch gets its
/// own copy, so per-branch caches are fine.
///
/// The outcome (status, result, step count) is identical for any thread
/// count: each first-level branch is searched independently and outcomes are
/// combined in canonical order against the shared budget.
template <typename Result, typename Tester, typename Finisher>
SearchOutcome<Result> search_ordered_partitions(int v, const Tester& test, const Finisher& finish,
                                                const SearchOptions& options = {}) {
  if (v < 1 || v > kMaxColumns) throw std::invalid_argument("partition search needs 1..63 columns");
  const ColumnMask full = (ColumnMask{1} << v) - 1;

  std::vector<ColumnMask> firsts;
  for (ColumnMask s = detail::next_submask(0, full); s != 0; s = detail::next_submask(s, full)) firsts.push_back(s);

  struct BranchOutcome {
    bool done = false;
    bool capped = false;
    std::uint64_t steps = 0;
    std::optional<Result> result;
    std::vector<ColumnMask> blocks;
  };
  std::vector<BranchOutcome> outcomes(firsts.size());

  auto run_branch = [&](std::size_t i, std::uint64_t budget) {
    Tester t = test;
    Finisher f = finish;
    detail::BranchRunner<Tester, Finisher, Result> runner{t, f, budget, 0, {}, std::nullopt, false};
    runner.try_block(firsts[i], full);
    auto& o = outcomes[i];
    o.capped = runner.capped;
    o.steps = runner.steps;
    o.result = std::move(runner.result);
    if (o.result) o.blocks = runner.blocks;
    o.done = true;
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < firsts.size(); ++i) {
      run_branch(i, options.cap - used);
      used += outcomes[i].steps;
      if (outcomes[i].capped || outcomes[i].result) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_found{firsts.size()};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= firsts.size() || i > first_found.load()) return;
        run_branch(i, options.cap);
        if (outcomes[i].result) {
          std::size_t cur = first_found.load();
          while (i < cur && !first_found.compare_exchange_weak(cur, i)) {
          }
        }
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  // Combine in canonical order; this reproduces the sequential semantics.
  SearchOutcome<Result> out;
  std::uint64_t used = 0;
  for (std::size_t i = 0; i < firsts.size(); ++i) {
    auto& o = outcomes[i];
    if (!o.done || o.capped || used + o.steps > options.cap) {
      out.status = SearchStatus::CapExceeded;
      out.steps = std::min(options.cap, used + o.steps);
      return out;
    }
    used += o.steps;
    if (o.result) {
      out.status = SearchStatus::Found;
      out.result = std::move(o.result);
      out.blocks = std::move(o.blocks);
      out.steps = used;
      return out;
    }
  }
  out.status = SearchStatus::Exhausted;
  out.steps = used;
  return out;
}

}  // namespace rado

#endif  // RADO_PARTITION_HPP
