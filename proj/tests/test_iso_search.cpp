#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "isogroup/iso_search.hpp"

using isogroup::EmbeddingCheck;
using isogroup::Error;
using isogroup::Group;
using isogroup::GroupSpec;
using isogroup::IsoGroup;
using isogroup::Isometry;
using isogroup::Rational;
using isogroup::SpacePtr;
using isogroup::errc;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

SpacePtr discrete(int n) {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(1)));
  for (int i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    m[i][i] = Rational(0);
  }
  return isogroup::validate_space(labels, m);
}

bool throws_with(errc code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

SpacePtr random_space(std::mt19937& rng) {
  std::uniform_int_distribution<int> size_dist(2, 6);
  const int n = size_dist(rng);
  const int shape = std::uniform_int_distribution<int>(0, 2)(rng);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  if (shape == 0) {
    std::uniform_int_distribution<int> step(0, 6);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        m[i][j] = m[j][i] = R("3/4") + Rational(step(rng), 8);
      }
    }
  } else if (shape == 1) {
    std::vector<Rational> coord;
    Rational c(0);
    for (int i = 0; i < n; ++i) {
      coord.push_back(c);
      c += Rational(std::uniform_int_distribution<int>(1, 5)(rng), 7);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = (coord[i] - coord[j]).abs();
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = i == j ? Rational(0) : Rational(1);
    }
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return isogroup::validate_space(labels, m);
}

}  // namespace

TEST_CASE("search agrees with the brute force oracle on random spaces") {
  std::mt19937 rng(424242);
  for (int round = 0; round < 50; ++round) {
    SpacePtr sp = random_space(rng);
    IsoGroup fast = isogroup::enumerate_isometries(sp);
    IsoGroup slow = isogroup::naive_enumerate(sp);
    CHECK(fast.elements == slow.elements);
  }
}

TEST_CASE("discrete spaces have the full permutation group") {
  long long factorial = 1;
  for (int n = 1; n <= 5; ++n) {
    factorial *= n;
    IsoGroup g = isogroup::enumerate_isometries(discrete(n));
    CHECK(g.order() == factorial);
    CHECK(std::is_sorted(g.elements.begin(), g.elements.end()));
    // First element is the identity, last the reversal.
    std::vector<int> id(n), rev(n);
    for (int i = 0; i < n; ++i) {
      id[i] = i;
      rev[i] = n - 1 - i;
    }
    CHECK(g.elements.front() == id);
    CHECK(g.elements.back() == rev);
    CHECK(g.contains(id));
  }
}

TEST_CASE("distinct pairwise distances force rigidity") {
  SpacePtr sp = isogroup::validate_space(
      {"a", "b", "c"},
      {{R("0"), R("1/2"), R("3/4")},
       {R("1/2"), R("0"), R("1")},
       {R("3/4"), R("1"), R("0")}});
  IsoGroup g = isogroup::enumerate_isometries(sp);
  CHECK(g.order() == 1);
  CHECK(g.elements.front() == std::vector<int>{0, 1, 2});
  CHECK_FALSE(g.contains({1, 0, 2}));
  CHECK(isogroup::naive_enumerate(sp).order() == 1);
}

TEST_CASE("empty and single point spaces") {
  SpacePtr empty = isogroup::validate_space({}, {});
  CHECK(isogroup::enumerate_isometries(empty).order() == 1);
  CHECK(isogroup::naive_enumerate(empty).order() == 1);
  CHECK(isogroup::enumerate_isometries(discrete(1)).elements ==
        std::vector<std::vector<int>>{{0}});
}

TEST_CASE("node budget cuts the search off") {
  CHECK(throws_with(errc::size_guard_exceeded, [] {
    isogroup::enumerate_isometries(discrete(6), 3);
  }));
  // A budget big enough for the whole tree succeeds.
  CHECK(isogroup::enumerate_isometries(discrete(6), 10'000'000).order() ==
        720);
}

TEST_CASE("oracle refuses spaces beyond eight points") {
  CHECK(throws_with(errc::too_large_for_oracle,
                    [] { isogroup::naive_enumerate(discrete(9)); }));
  CHECK(isogroup::naive_enumerate(discrete(8)).space->size() == 8);
}

TEST_CASE("embedding check accepts left translations") {
  Group g = isogroup::group_from_spec([] {
    GroupSpec s;
    s.cayley = std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    return s;
  }());
  SpacePtr sp = discrete(3);
  std::vector<Isometry> map;
  for (int a = 0; a < 3; ++a) {
    std::vector<int> image(3);
    for (int x = 0; x < 3; ++x) image[x] = g.product(a, x);
    map.push_back(isogroup::make_isometry(sp, image));
  }
  EmbeddingCheck r = isogroup::verify_embedding(g, map);
  CHECK(r.ok);
}

TEST_CASE("embedding check reports collisions and product mismatches") {
  Group c2 = isogroup::group_from_spec([] {
    GroupSpec s;
    s.cayley = std::vector<std::vector<int>>{{0, 1}, {1, 0}};
    return s;
  }());
  SpacePtr two = discrete(2);
  std::vector<Isometry> collide{isogroup::identity_isometry(two),
                                isogroup::identity_isometry(two)};
  EmbeddingCheck r1 = isogroup::verify_embedding(c2, collide);
  CHECK_FALSE(r1.ok);
  CHECK(r1.g == 0);
  CHECK(r1.h == 1);

  Group c3 = isogroup::group_from_spec([] {
    GroupSpec s;
    s.cayley = std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    return s;
  }());
  SpacePtr three = discrete(3);
  std::vector<Isometry> broken{isogroup::identity_isometry(three),
                               isogroup::make_isometry(three, {1, 2, 0}),
                               isogroup::make_isometry(three, {1, 0, 2})};
  EmbeddingCheck r2 = isogroup::verify_embedding(c3, broken);
  CHECK_FALSE(r2.ok);
  CHECK(r2.g == 1);
  CHECK(r2.h == 1);

  std::vector<Isometry> short_map{isogroup::identity_isometry(three)};
  CHECK_FALSE(isogroup::verify_embedding(c3, short_map).ok);
}
