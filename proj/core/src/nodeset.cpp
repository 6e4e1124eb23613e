#include "odyn/nodeset.hpp"

#include <bit>
#include <sstream>

#include "odyn/error.hpp"

namespace odyn {

namespace {
constexpr int kWordBits = 64;
}

NodeSet::NodeSet(int universe) {
  if (universe < 0) {
    fail(ErrorCode::InvalidArgument, "node set universe must be nonnegative");
  }
  universe_ = universe;
  words_.assign((universe + kWordBits - 1) / kWordBits, 0);
}

NodeSet NodeSet::from_indices(int universe, std::span<const int> indices) {
  NodeSet s(universe);
  for (int v : indices) s.insert(v);
  return s;
}

NodeSet NodeSet::from_mask(int universe, std::uint64_t mask) {
  if (universe < 0 || universe > kWordBits) {
    fail(ErrorCode::InvalidArgument,
         "bitmask construction requires a universe of at most 64 nodes");
  }
  if (universe < kWordBits && (mask >> universe) != 0) {
    fail(ErrorCode::InvalidArgument, "bitmask has bits outside the universe");
  }
  NodeSet s(universe);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

bool NodeSet::empty() const noexcept {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

int NodeSet::cardinality() const noexcept {
  int total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool NodeSet::contains(int v) const {
  check_index(v);
  return (words_[v / kWordBits] >> (v % kWordBits)) & 1u;
}

void NodeSet::insert(int v) {
  check_index(v);
  words_[v / kWordBits] |= std::uint64_t{1} << (v % kWordBits);
}

void NodeSet::erase(int v) {
  check_index(v);
  words_[v / kWordBits] &= ~(std::uint64_t{1} << (v % kWordBits));
}

bool NodeSet::disjoint_with(const NodeSet& other) const {
  if (universe_ != other.universe_) {
    fail(ErrorCode::InvalidArgument,
         "set operation on mismatched universes");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return false;
  }
  return true;
}

bool NodeSet::subset_of(const NodeSet& other) const {
  if (universe_ != other.universe_) {
    fail(ErrorCode::InvalidArgument,
         "set operation on mismatched universes");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

NodeSet NodeSet::complement() const {
  NodeSet out(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  if (int tail = universe_ % kWordBits; tail != 0 && !out.words_.empty()) {
    out.words_.back() &= (std::uint64_t{1} << tail) - 1;
  }
  return out;
}

std::vector<int> NodeSet::indices() const {
  std::vector<int> out;
  out.reserve(cardinality());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      int bit = std::countr_zero(w);
      out.push_back(static_cast<int>(i) * kWordBits + bit);
      w &= w - 1;
    }
  }
  return out;
}

std::uint64_t NodeSet::mask() const {
  if (universe_ > kWordBits) {
    fail(ErrorCode::InvalidArgument,
         "raw bitmask is only available for universes of at most 64 nodes");
  }
  return words_.empty() ? 0 : words_[0];
}

std::string NodeSet::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int v : indices()) {
    if (!first) out << ", ";
    out << v;
    first = false;
  }
  out << '}';
  return out.str();
}

void NodeSet::check_index(int v) const {
  if (v < 0 || v >= universe_) {
    fail(ErrorCode::InvalidArgument,
         "node index " + std::to_string(v) + " outside universe of size " +
             std::to_string(universe_));
  }
}

}  // namespace odyn
