#include <doctest.h>

#include <array>
#include <vector>

#include "odyn/error.hpp"
#include "odyn/nodeset.hpp"

using odyn::Error;
using odyn::NodeSet;

TEST_CASE("empty set basics") {
  NodeSet s(5);
  CHECK(s.universe() == 5);
  CHECK(s.empty());
  CHECK(s.cardinality() == 0);
  CHECK_FALSE(s.contains(3));
  CHECK(s.indices().empty());
  CHECK(s.mask() == 0);
}

TEST_CASE("insert, erase, contains") {
  NodeSet s(6);
  s.insert(0);
  s.insert(3);
  s.insert(5);
  CHECK(s.cardinality() == 3);
  CHECK(s.contains(0));
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(1));
  s.insert(3);  // idempotent
  CHECK(s.cardinality() == 3);
  s.erase(3);
  CHECK_FALSE(s.contains(3));
  CHECK(s.cardinality() == 2);
  s.erase(3);  // idempotent
  CHECK(s.cardinality() == 2);
  CHECK(s.indices() == std::vector<int>{0, 5});
}

TEST_CASE("out-of-range index is rejected with the offending values") {
  NodeSet s(4);
  CHECK_THROWS_WITH_AS(s.insert(4), "node index 4 outside universe of size 4", Error);
  CHECK_THROWS_AS(s.contains(-1), Error);
  CHECK_THROWS_AS(s.erase(17), Error);
}

TEST_CASE("from_indices and from_mask agree") {
  std::array<int, 3> idx = {0, 2, 3};
  auto a = NodeSet::from_indices(6, idx);
  auto b = NodeSet::from_mask(6, 0b001101);
  CHECK(a == b);
  CHECK(a.mask() == 0b001101);
}

TEST_CASE("from_mask rejects bits outside the universe") {
  CHECK_THROWS_AS(NodeSet::from_mask(3, 0b1000), Error);
  CHECK_THROWS_AS(NodeSet::from_mask(65, 1), Error);
  CHECK_NOTHROW(NodeSet::from_mask(64, 1ULL << 63));
}

TEST_CASE("complement stays inside the universe") {
  auto s = NodeSet::from_mask(5, 0b00101);
  auto c = s.complement();
  CHECK(c.mask() == 0b11010);
  CHECK(c.complement() == s);
  NodeSet empty(3);
  CHECK(empty.complement().cardinality() == 3);
}

TEST_CASE("disjointness and subset") {
  auto a = NodeSet::from_mask(6, 0b000111);
  auto b = NodeSet::from_mask(6, 0b111000);
  auto c = NodeSet::from_mask(6, 0b000110);
  CHECK(a.disjoint_with(b));
  CHECK_FALSE(a.disjoint_with(c));
  CHECK(c.subset_of(a));
  CHECK_FALSE(a.subset_of(c));
  CHECK(a.subset_of(a));
  NodeSet empty(6);
  CHECK(empty.subset_of(a));
  CHECK(empty.disjoint_with(a));
}

TEST_CASE("set operations require matching universes") {
  NodeSet a(5), b(6);
  CHECK_THROWS_WITH_AS(a.disjoint_with(b), "set operation on mismatched universes", Error);
  CHECK_THROWS_AS(a.subset_of(b), Error);
}

TEST_CASE("universes above 64 bits work except for mask()") {
  NodeSet s(130);
  s.insert(0);
  s.insert(64);
  s.insert(129);
  CHECK(s.cardinality() == 3);
  CHECK(s.contains(64));
  CHECK(s.indices() == std::vector<int>{0, 64, 129});
  CHECK(s.complement().cardinality() == 127);
  CHECK_THROWS_AS(s.mask(), Error);
  CHECK_THROWS_AS(NodeSet::from_mask(130, 1), Error);
}

TEST_CASE("equality covers universe and members") {
  auto a = NodeSet::from_mask(4, 0b0101);
  auto b = NodeSet::from_mask(4, 0b0101);
  CHECK(a == b);
  b.erase(0);
  CHECK(a != b);
  CHECK(NodeSet(4) != NodeSet(5));
}

TEST_CASE("to_string lists ascending members") {
  CHECK(NodeSet::from_mask(6, 0b101001).to_string() == "{0, 3, 5}");
  CHECK(NodeSet(3).to_string() == "{}");
}
