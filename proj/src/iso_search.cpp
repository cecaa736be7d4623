#include "isogroup/iso_search.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace isogroup {

bool IsoGroup::contains(const std::vector<int>& image) const {
  return std::binary_search(elements.begin(), elements.end(), image);
}

IsoGroup enumerate_isometries(const SpacePtr& space, long long node_budget) {
  const int n = space->size();
  if (n == 0) return IsoGroup{space, {{}}};

  // Sorted distance multiset of every point; a point may only map to a
  // point with an identical multiset.
  std::vector<std::vector<Rational>> key(n);
  for (int i = 0; i < n; ++i) {
    key[i].reserve(n);
    for (int j = 0; j < n; ++j) key[i].push_back(space->dist(i, j));
    std::sort(key[i].begin(), key[i].end());
  }
  std::map<std::vector<Rational>, std::vector<int>> classes;
  for (int i = 0; i < n; ++i) classes[key[i]].push_back(i);
  std::vector<const std::vector<int>*> cand(n);
  for (int i = 0; i < n; ++i) cand[i] = &classes.at(key[i]);

  // Most-constrained first, ties by index.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cand[a]->size() < cand[b]->size();
  });

  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::vector<std::vector<int>> found;
  long long nodes = 0;

  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      found.push_back(image);
      return;
    }
    const int i = order[depth];
    for (int j : *cand[i]) {
      if (used[j]) continue;
      if (++nodes > node_budget) {
        fail(errc::size_guard_exceeded,
             "isometry search exceeded the node budget of " +
                 std::to_string(node_budget));
      }
      bool ok = true;
      for (int e = 0; e < depth; ++e) {
        const int i2 = order[e];
        if (space->dist(i, i2) != space->dist(j, image[i2])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      image[i] = j;
      used[j] = 1;
      self(self, depth + 1);
      image[i] = -1;
      used[j] = 0;
    }
  };
  rec(rec, 0);

  std::sort(found.begin(), found.end());
  return IsoGroup{space, std::move(found)};
}

IsoGroup naive_enumerate(const SpacePtr& space) {
  const int n = space->size();
  if (n > 8) {
    fail(errc::too_large_for_oracle,
         "naive oracle refuses spaces with more than 8 points");
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> found;
  if (n == 0) {
    found.push_back({});
    return IsoGroup{space, std::move(found)};
  }
  do {
    if (is_isometry(*space, perm)) found.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return IsoGroup{space, std::move(found)};  // next_permutation order is lex
}

EmbeddingCheck verify_embedding(const Group& group,
                                const std::vector<Isometry>& map) {
  EmbeddingCheck r;
  const int n = group.order();
  if (static_cast<int>(map.size()) != n) {
    r.reason = "map size does not match group order";
    return r;
  }
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (g < h && map[g].image == map[h].image) {
        r.g = g;
        r.h = h;
        r.reason = "not injective: elements " + group.name(g) + " and " +
                   group.name(h) + " share an image";
        return r;
      }
      Isometry lhs = compose(map[g], map[h]);
      if (lhs.image != map[group.product(g, h)].image) {
        r.g = g;
        r.h = h;
        r.reason = "homomorphism fails at (" + group.name(g) + "," +
                   group.name(h) + ")";
        return r;
      }
    }
  }
  r.ok = true;
  return r;
}

}  // namespace isogroup
