#ifndef ISOGROUP_METRIC_SPACE_HPP
#define ISOGROUP_METRIC_SPACE_HPP

/**
 * @file metric_space.hpp
 * @brief Finite metric spaces with exact rational distances.
 */

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "isogroup/rational.hpp"

namespace isogroup {

class FiniteMetricSpace;
using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

/// Sorted set of distinct point indices into some space.
struct PointSet {
  std::vector<int> indices;

  static PointSet of(std::vector<int> idx);
  static PointSet all(int n);
  bool contains(int i) const;
  int size() const { return static_cast<int>(indices.size()); }
  bool operator==(const PointSet&) const = default;
};

/// Immutable labelled space.  Instances only come out of validate_space
/// and the trusted constructions built on top of it, so the metric
/// axioms hold by construction.
class FiniteMetricSpace {
public:
  int size() const { return n_; }
  const Rational& dist(int i, int j) const { return d_[i * n_ + j]; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Structural equality of the metric (labels ignored).
  bool same_metric(const FiniteMetricSpace& other) const;

  friend SpacePtr validate_space(std::vector<std::string> labels,
                                 const std::vector<std::vector<Rational>>& m);
  friend SpacePtr unchecked_space(std::vector<std::string> labels,
                                  std::vector<Rational> flat, int n);

private:
  FiniteMetricSpace() = default;
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Rational> d_;  // row-major n x n
};

/// Checks symmetry, zero diagonal, positive off-diagonal entries and the
/// triangle inequality; reports the first offending pair or triple.
SpacePtr validate_space(std::vector<std::string> labels,
                        const std::vector<std::vector<Rational>>& matrix);

/// Internal fast path for constructions whose output is metric by proof;
/// the assembly code still re-validates its final artifacts.
SpacePtr unchecked_space(std::vector<std::string> labels,
                         std::vector<Rational> flat, int n);

Rational diameter(const FiniteMetricSpace& space);

/// Divides every distance by the diameter.  Requires at least two points.
SpacePtr rescale_to_unit_diameter(const FiniteMetricSpace& space);

/// min over s in subset of d(point, s); the subset must be nonempty.
Rational distance_to_subset(const FiniteMetricSpace& space, int point,
                            const PointSet& subset);

/// Minimum of d over distinct pairs drawn from an ordered tuple of
/// at least two distinct indices.
Rational min_pairwise_distance(const FiniteMetricSpace& space,
                               std::span<const int> tuple);

}  // namespace isogroup

#endif
