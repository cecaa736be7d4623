#include "isogroup/metric_space.hpp"

#include <algorithm>
#include <set>

namespace isogroup {

PointSet PointSet::of(std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  for (std::size_t k = 1; k < idx.size(); ++k) {
    if (idx[k] == idx[k - 1]) {
      fail(errc::repeated_index,
           "repeated index " + std::to_string(idx[k]) + " in point set");
    }
  }
  return PointSet{std::move(idx)};
}

PointSet PointSet::all(int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return PointSet{std::move(idx)};
}

bool PointSet::contains(int i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

bool FiniteMetricSpace::same_metric(const FiniteMetricSpace& other) const {
  return n_ == other.n_ && d_ == other.d_;
}

SpacePtr validate_space(std::vector<std::string> labels,
                        const std::vector<std::vector<Rational>>& matrix) {
  const int n = static_cast<int>(labels.size());
  if (static_cast<int>(matrix.size()) != n) {
    fail(errc::invalid_argument, "matrix size does not match label count");
  }
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != n) {
      fail(errc::invalid_argument, "matrix is not square");
    }
  }
  {
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) {
        fail(errc::duplicate_label, "duplicate label '" + l + "'");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!matrix[i][i].is_zero()) {
      fail(errc::nonzero_diagonal,
           "nonzero diagonal at point " + std::to_string(i));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) {
        fail(errc::asymmetric_matrix, "d(" + std::to_string(i) + "," +
                                          std::to_string(j) +
                                          ") differs from its transpose");
      }
      if (!(Rational(0) < matrix[i][j])) {
        fail(errc::nonpositive_off_diagonal,
             "nonpositive distance at pair (" + std::to_string(i) + "," +
                 std::to_string(j) + ")");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (matrix[i][j] + matrix[j][k] < matrix[i][k]) {
          fail(errc::triangle_violation,
               "triangle violation at (" + std::to_string(i) + "," +
                   std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
  std::vector<Rational> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) flat.push_back(matrix[i][j]);
  }
  return unchecked_space(std::move(labels), std::move(flat), n);
}

SpacePtr unchecked_space(std::vector<std::string> labels,
                         std::vector<Rational> flat, int n) {
  auto sp = std::shared_ptr<FiniteMetricSpace>(new FiniteMetricSpace());
  sp->n_ = n;
  sp->labels_ = std::move(labels);
  sp->d_ = std::move(flat);
  return sp;
}

Rational diameter(const FiniteMetricSpace& space) {
  Rational best(0);
  for (int i = 0; i < space.size(); ++i) {
    for (int j = i + 1; j < space.size(); ++j) {
      best = max(best, space.dist(i, j));
    }
  }
  return best;
}

SpacePtr rescale_to_unit_diameter(const FiniteMetricSpace& space) {
  if (space.size() < 2) {
    fail(errc::degenerate_space, "rescale requires at least two points");
  }
  const Rational diam = diameter(space);
  std::vector<Rational> flat;
  flat.reserve(static_cast<std::size_t>(space.size()) * space.size());
  for (int i = 0; i < space.size(); ++i) {
    for (int j = 0; j < space.size(); ++j) {
      flat.push_back(space.dist(i, j) / diam);
    }
  }
  return unchecked_space(space.labels(), std::move(flat), space.size());
}

Rational distance_to_subset(const FiniteMetricSpace& space, int point,
                            const PointSet& subset) {
  if (subset.indices.empty()) {
    fail(errc::empty_subset, "distance to empty subset is undefined");
  }
  bool first = true;
  Rational best;
  for (int s : subset.indices) {
    if (s < 0 || s >= space.size()) {
      fail(errc::invalid_argument, "subset index out of range");
    }
    const Rational& d = space.dist(point, s);
    if (first || d < best) {
      best = d;
      first = false;
    }
  }
  return best;
}

Rational min_pairwise_distance(const FiniteMetricSpace& space,
                               std::span<const int> tuple) {
  if (tuple.size() < 2) {
    fail(errc::fewer_than_two_points,
         "min pairwise distance needs at least two points");
  }
  for (std::size_t a = 0; a < tuple.size(); ++a) {
    if (tuple[a] < 0 || tuple[a] >= space.size()) {
      fail(errc::invalid_argument, "tuple index out of range");
    }
    for (std::size_t b = a + 1; b < tuple.size(); ++b) {
      if (tuple[a] == tuple[b]) {
        fail(errc::repeated_index,
             "repeated index " + std::to_string(tuple[a]) + " in tuple");
      }
    }
  }
  bool first = true;
  Rational best;
  for (std::size_t a = 0; a < tuple.size(); ++a) {
    for (std::size_t b = a + 1; b < tuple.size(); ++b) {
      const Rational& d = space.dist(tuple[a], tuple[b]);
      if (first || d < best) {
        best = d;
        first = false;
      }
    }
  }
  return best;
}

}  // namespace isogroup
