#ifndef ISOGROUP_KATETOV_HPP
#define ISOGROUP_KATETOV_HPP

/**
 * @file katetov.hpp
 * @brief One-point metric extensions of a finite space and operations on them.
 *
 * A map f on a space X describes a legal new point at distance f(x) from
 * each x exactly when |f(x) - f(y)| <= d(x,y) <= f(x) + f(y) for all pairs.
 * The sup metric on such maps extends X isometrically via x -> delta_x
 * (the distance-to-x map), which is what adjoin() below exploits.
 */

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isogroup/isometry.hpp"
#include "isogroup/metric_space.hpp"

namespace isogroup {

/// A validated one-point extension function over a fixed base space.
class KatetovMap {
public:
  const SpacePtr& base() const { return base_; }
  const Rational& value(int x) const { return values_[x]; }
  const std::vector<Rational>& values() const { return values_; }

  bool operator==(const KatetovMap& other) const {
    return values_ == other.values_;
  }

  friend KatetovMap validate_katetov(const SpacePtr& base,
                                     std::vector<Rational> values);
  friend KatetovMap unchecked_katetov(const SpacePtr& base,
                                      std::vector<Rational> values);

private:
  KatetovMap() = default;
  SpacePtr base_;
  std::vector<Rational> values_;
};

/// Checks both extension inequalities on every pair (diagonal included,
/// which rejects negative values); reports the first offending pair.
KatetovMap validate_katetov(const SpacePtr& base, std::vector<Rational> values);

/// Trusted constructor for maps valid by proof (staircase, pushforward).
KatetovMap unchecked_katetov(const SpacePtr& base, std::vector<Rational> values);

/// delta_x: y -> d(x, y).
KatetovMap kuratowski(const SpacePtr& base, int x);

/// Sup metric between two maps over the same base.
Rational sup_distance(const KatetovMap& f, const KatetovMap& g);

/// True iff f(x) = min over s in S of f(s) + d(x, s) for every x.
bool is_supported_by(const KatetovMap& f, const PointSet& support);

/// max over s in S of |f(s) - g(s)|; requires S to support both maps.
Rational support_reduced_distance(const KatetovMap& f, const KatetovMap& g,
                                  const PointSet& support);

/// Parameters of the distinguishing functions: an ordered tuple of
/// distinct witness points, a step epsilon > 0, and a level offset >= 0.
struct StaircaseSpec {
  std::vector<int> witnesses;
  Rational epsilon;
  Rational offset;
};

/// values[x] = min( min_k (1 + offset + d(x, x_k) + 2(k-1) epsilon),
///                  1 + offset + 2 m epsilon )
/// over the m witnesses; the empty tuple gives the constant 1 + offset.
/// Requires a base of diameter <= 1 and 2 m epsilon <= the minimum
/// pairwise witness distance.
KatetovMap staircase(const SpacePtr& base, const StaircaseSpec& spec);

/// (phi_* f)(x) = f(phi^{-1}(x)); an isometric action on extension maps.
KatetovMap pushforward(const KatetovMap& f, const Isometry& phi);

struct AdjoinResult {
  SpacePtr space;
  PointSet base_copy;               // the base_subset indices, unchanged
  std::vector<int> map_point_index; // result index realizing each input map
};

/// Extends the base space by one new point per distinct map, with
/// d(new_f, x) = f(x) and d(new_f, new_g) = sup_distance(f, g).
/// Equal maps collapse to one point; a map equal to some delta_x is
/// identified with the base point x.  The output is re-validated.
AdjoinResult adjoin(const SpacePtr& base, std::span<const KatetovMap> maps,
                    std::span<const std::string> labels,
                    const PointSet& base_subset);

}  // namespace isogroup

#endif
