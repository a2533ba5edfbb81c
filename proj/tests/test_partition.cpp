#include "rado/partition.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace rado;

namespace {

// Independent count: set partitions into k blocks (Stirling, by listing
// restricted growth strings) times the k! orderings of the blocks.
std::uint64_t brute_force_ordered_partitions(int v) {
  std::uint64_t total = 0;
  std::vector<int> rgs(static_cast<std::size_t>(v), 0);
  for (;;) {
    const int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::uint64_t orderings = 1;
    for (int i = 2; i <= k; ++i) orderings *= static_cast<std::uint64_t>(i);
    total += orderings;
    int i = v - 1;
    for (; i > 0; --i) {
      const int prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[static_cast<std::size_t>(i)] <= prefix_max) {
        ++rgs[static_cast<std::size_t>(i)];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
    }
    if (i == 0) return total;
  }
}

}  // namespace

TEST_CASE("ordered partition validation and accessors") {
  const OrderedPartition p({{2, 0}, {1}}, 3);
  CHECK(p[0] == std::vector<int>{0, 2});
  CHECK(p.size() == 2);
  CHECK(p.mask(0) == 0b101);
  CHECK(p.prefix_mask(1) == 0b101);
  CHECK(p.prefix_mask(0) == 0);
  CHECK(p.block_of(1) == 1);
  CHECK(p.to_string() == "{1,3} {2}");
  CHECK_THROWS_AS(OrderedPartition({{0}, {0, 1}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(OrderedPartition({{0}, {}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(OrderedPartition({{0}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(OrderedPartition({{0, 3}}, 2), std::invalid_argument);
  const ColumnMask masks[] = {0b101, 0b010};
  CHECK(OrderedPartition::from_masks(masks, 3) == p);
}

TEST_CASE("fubini numbers") {
  const std::uint64_t expected[] = {1, 1, 3, 13, 75, 541, 4683};
  for (int n = 0; n <= 6; ++n) CHECK(fubini_number(n) == expected[n]);
  for (int n = 1; n <= 6; ++n) CHECK(fubini_number(n) == brute_force_ordered_partitions(n));
}

TEST_CASE("enumeration yields every ordered partition once") {
  for (int v = 1; v <= 5; ++v) {
    std::set<std::vector<std::vector<int>>> seen;
    std::uint64_t count = 0;
    const auto status = enumerate_ordered_partitions(v, std::nullopt, [&](const OrderedPartition& p) {
      ++count;
      seen.insert(p.blocks());
      return true;
    });
    CHECK(status == SearchStatus::Exhausted);
    CHECK(count == fubini_number(v));
    CHECK(seen.size() == count);
  }
}

TEST_CASE("enumeration follows increasing submask order") {
  std::vector<std::string> order;
  enumerate_ordered_partitions(2, std::nullopt, [&](const OrderedPartition& p) {
    order.push_back(p.to_string());
    return true;
  });
  CHECK(order == std::vector<std::string>{"{1} {2}", "{2} {1}", "{1,2}"});
}

TEST_CASE("enumeration cap and early stop are distinguishable") {
  std::uint64_t count = 0;
  auto status = enumerate_ordered_partitions(4, 10, [&](const OrderedPartition&) {
    ++count;
    return true;
  });
  CHECK(status == SearchStatus::CapExceeded);
  CHECK(count == 10);

  status = enumerate_ordered_partitions(3, 13, [](const OrderedPartition&) { return true; });
  CHECK(status == SearchStatus::Exhausted);

  count = 0;
  status = enumerate_ordered_partitions(3, std::nullopt, [&](const OrderedPartition&) { return ++count < 5; });
  CHECK(status == SearchStatus::Found);
  CHECK(count == 5);
}

TEST_CASE("pruned search finds the first accepted partition in canonical order") {
  // First block must contain column 0; the first completion of {0,2} is {0,2},{1},{3}.
  auto tester = [](std::span<const ColumnMask> blocks) { return (blocks.front() & 1) != 0; };
  auto finisher = [](std::span<const ColumnMask> blocks) -> std::optional<int> {
    if (blocks.front() == 0b101) return static_cast<int>(blocks.size());
    return std::nullopt;
  };
  for (unsigned threads : {1u, 2u, 4u}) {
    auto out = search_ordered_partitions<int>(4, tester, finisher, {1'000'000, threads});
    REQUIRE(out.status == SearchStatus::Found);
    CHECK(out.blocks.front() == 0b101);
    CHECK(*out.result == 3);
  }
}

TEST_CASE("search results and step counts agree across thread counts") {
  auto tester = [](std::span<const ColumnMask> blocks) { return std::popcount(blocks.back()) != 2; };
  auto finisher = [](std::span<const ColumnMask> blocks) -> std::optional<std::vector<ColumnMask>> {
    if (blocks.size() == 3 && blocks.back() == 0b1000) return std::vector<ColumnMask>(blocks.begin(), blocks.end());
    return std::nullopt;
  };
  const auto base = search_ordered_partitions<std::vector<ColumnMask>>(5, tester, finisher, {1'000'000, 1});
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto out = search_ordered_partitions<std::vector<ColumnMask>>(5, tester, finisher, {1'000'000, threads});
    CHECK(out.status == base.status);
    CHECK(out.result == base.result);
    CHECK(out.steps == base.steps);
  }
}

TEST_CASE("search reports exhaustion and cap separately") {
  auto never = [](std::span<const ColumnMask>) -> std::optional<int> { return std::nullopt; };
  auto yes = [](std::span<const ColumnMask>) { return true; };
  auto out = search_ordered_partitions<int>(3, yes, never, {});
  CHECK(out.status == SearchStatus::Exhausted);
  out = search_ordered_partitions<int>(5, yes, never, {5, 1});
  CHECK(out.status == SearchStatus::CapExceeded);
  CHECK(out.steps == 5);
  out = search_ordered_partitions<int>(5, yes, never, {5, 4});
  CHECK(out.status == SearchStatus::CapExceeded);
  CHECK(out.steps == 5);
}
