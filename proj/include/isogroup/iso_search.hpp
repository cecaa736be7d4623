#ifndef ISOGROUP_ISO_SEARCH_HPP
#define ISOGROUP_ISO_SEARCH_HPP

/**
 * @file iso_search.hpp
 * @brief Exhaustive enumeration of the isometry group of a finite space.
 */

#include <vector>

#include "isogroup/group.hpp"
#include "isogroup/isometry.hpp"

namespace isogroup {

/// The full set of distance-preserving permutations, in lexicographic
/// image-vector order.
struct IsoGroup {
  SpacePtr space;
  std::vector<std::vector<int>> elements;

  long long order() const { return static_cast<long long>(elements.size()); }
  bool contains(const std::vector<int>& image) const;
};

inline constexpr long long kDefaultNodeBudget = 100'000'000;

/// Backtracking search.  Candidate images are pre-filtered by sorted
/// distance multisets, points are assigned most-constrained first, and
/// partial maps are pruned against every already-assigned distance.
/// Each attempted assignment costs one node; exceeding the budget
/// throws size_guard_exceeded.
IsoGroup enumerate_isometries(const SpacePtr& space,
                              long long node_budget = kDefaultNodeBudget);

/// Independent oracle: filters all n! permutations.  Refuses n > 8.
IsoGroup naive_enumerate(const SpacePtr& space);

struct EmbeddingCheck {
  bool ok = false;
  // On failure, the witness: either a product mismatch map(g)map(h) !=
  // map(gh), or a collision map(g) == map(h) with g != h.
  int g = -1;
  int h = -1;
  std::string reason;
};

/// Checks that element -> isometry is an injective homomorphism.
EmbeddingCheck verify_embedding(const Group& group,
                                const std::vector<Isometry>& map);

}  // namespace isogroup

#endif
