#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace odyn {

// Set of node indices over a fixed universe {0, ..., n-1}, stored as a
// bitmask. Bits at or above the universe size are always zero, so equality
// and hashing work on the raw words.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(int universe);

  static NodeSet from_indices(int universe, std::span<const int> indices);
  // universe must be <= 64.
  static NodeSet from_mask(int universe, std::uint64_t mask);

  int universe() const noexcept { return universe_; }
  bool empty() const noexcept;
  int cardinality() const noexcept;

  bool contains(int v) const;
  void insert(int v);
  void erase(int v);

  bool disjoint_with(const NodeSet& other) const;
  bool subset_of(const NodeSet& other) const;
  NodeSet complement() const;

  // Ascending member indices.
  std::vector<int> indices() const;
  // Raw bitmask; universe() must be <= 64.
  std::uint64_t mask() const;

  std::string to_string() const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  void check_index(int v) const;

  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace odyn
