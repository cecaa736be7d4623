#include "doctest.h"

#include <functional>
#include <vector>

#include "isogroup/group.hpp"

using isogroup::Error;
using isogroup::Group;
using isogroup::GroupSpec;
using isogroup::errc;

namespace {

bool throws_with(errc code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

GroupSpec cayley(std::vector<std::vector<int>> t) {
  GroupSpec s;
  s.cayley = std::move(t);
  return s;
}

GroupSpec perms(std::vector<std::vector<int>> gens, int degree,
                int cap = 5040) {
  GroupSpec s;
  s.generators = std::move(gens);
  s.degree = degree;
  s.order_cap = cap;
  return s;
}

}  // namespace

TEST_CASE("cyclic group of order three from its table") {
  Group g = isogroup::group_from_spec(
      cayley({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
  CHECK(g.order() == 3);
  CHECK(g.product(1, 1) == 2);
  CHECK(g.product(1, 2) == 0);
  CHECK(g.inverse(0) == 0);
  CHECK(g.inverse(1) == 2);
  CHECK(g.inverse(2) == 1);
  CHECK(g.name(0) == "g0");
  CHECK(g.name(2) == "g2");
}

TEST_CASE("table validation rejects each axiom failure with its own code") {
  CHECK(throws_with(errc::no_identity, [] {
    isogroup::group_from_spec(cayley({{1, 0}, {0, 1}}));
  }));
  CHECK(throws_with(errc::no_inverse, [] {
    isogroup::group_from_spec(cayley({{0, 1}, {1, 1}}));
  }));
  CHECK(throws_with(errc::not_associative, [] {
    isogroup::group_from_spec(cayley({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}));
  }));
  CHECK(throws_with(errc::invalid_argument, [] {
    isogroup::group_from_spec(cayley({{0, 1}, {1}}));
  }));
  CHECK(throws_with(errc::invalid_argument, [] {
    isogroup::group_from_spec(cayley({{0, 1}, {1, 5}}));
  }));
  CHECK(throws_with(errc::invalid_argument, [] {
    isogroup::group_from_spec(cayley({}));
  }));
}

TEST_CASE("spec must carry exactly one description") {
  GroupSpec none;
  CHECK(throws_with(errc::invalid_argument,
                    [&] { isogroup::group_from_spec(none); }));
  GroupSpec both;
  both.cayley = std::vector<std::vector<int>>{{0}};
  both.generators = std::vector<std::vector<int>>{{0}};
  both.degree = 1;
  CHECK(throws_with(errc::invalid_argument,
                    [&] { isogroup::group_from_spec(both); }));
}

TEST_CASE("symmetric group on three letters closes in discovery order") {
  Group g = isogroup::group_from_spec(perms({{1, 0, 2}, {0, 2, 1}}, 3));
  CHECK(g.order() == 6);
  // Breadth-first over (element, generator) pairs, identity first:
  // id, (01), (12), then their products in first-seen order.  The table
  // below is the fingerprint of that ordering.
  CHECK(g.product(1, 1) == 0);
  CHECK(g.product(2, 2) == 0);
  CHECK(g.product(1, 2) == 3);
  CHECK(g.product(2, 1) == 4);
  CHECK(g.product(3, 3) == 4);
  CHECK(g.product(4, 4) == 3);
  CHECK(g.product(5, 5) == 0);
  CHECK(g.inverse(3) == 4);
  // Non-commutativity shows up in the table.
  CHECK(g.product(1, 2) != g.product(2, 1));
}

TEST_CASE("klein four group is its own inverse table") {
  Group g = isogroup::group_from_spec(cayley(
      {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}));
  CHECK(g.order() == 4);
  for (int a = 0; a < 4; ++a) {
    CHECK(g.inverse(a) == a);
    for (int b = 0; b < 4; ++b) CHECK(g.product(a, b) == (a ^ b));
  }
}

TEST_CASE("generator closure from a cycle recovers the cyclic group") {
  Group g = isogroup::group_from_spec(perms({{1, 2, 3, 0}}, 4));
  CHECK(g.order() == 4);
  // Powers of the cycle appear in order, so the table is addition mod 4.
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) CHECK(g.product(a, b) == (a + b) % 4);
  }
}

TEST_CASE("generator validation and the closure cap") {
  CHECK(throws_with(errc::invalid_argument, [] {
    isogroup::group_from_spec(perms({{1, 0}}, 0));
  }));
  CHECK(throws_with(errc::invalid_argument, [] {
    isogroup::group_from_spec(perms({{0, 0}}, 2));
  }));
  CHECK(throws_with(errc::invalid_argument, [] {
    isogroup::group_from_spec(perms({{1, 0, 2}}, 2));
  }));
  CHECK(throws_with(errc::order_cap_exceeded, [] {
    isogroup::group_from_spec(perms({{1, 2, 3, 4, 5, 6, 0}}, 7, 5));
  }));
  // The cap is permissive when equal to the order.
  Group g = isogroup::group_from_spec(perms({{1, 2, 3, 4, 5, 6, 0}}, 7, 7));
  CHECK(g.order() == 7);
}
