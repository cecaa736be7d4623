#ifndef ISOGROUP_ISOMETRY_HPP
#define ISOGROUP_ISOMETRY_HPP

/**
 * @file isometry.hpp
 * @brief Distance-preserving permutations of a finite metric space.
 */

#include <span>
#include <vector>

#include "isogroup/metric_space.hpp"

namespace isogroup {

/// A permutation of a space's points that preserves every distance.
/// Built through make_isometry (or the search routines), so the
/// invariant holds for every live instance.
struct Isometry {
  SpacePtr space;
  std::vector<int> image;  // image[i] is where point i goes

  int apply(int i) const { return image[i]; }
};

/// True iff perm is a bijection on the space's points preserving d.
/// Throws not_a_bijection when perm is not a permutation at all.
bool is_isometry(const FiniteMetricSpace& space, std::span<const int> perm);

/// Checked constructor: throws not_an_isometry if distances move.
Isometry make_isometry(const SpacePtr& space, std::vector<int> image);

Isometry identity_isometry(const SpacePtr& space);

/// Function composition: compose(f, g) applies g first, then f.
Isometry compose(const Isometry& f, const Isometry& g);

Isometry invert(const Isometry& f);

}  // namespace isogroup

#endif
