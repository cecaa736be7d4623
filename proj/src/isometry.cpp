#include "isogroup/isometry.hpp"

namespace isogroup {

namespace {

void check_permutation(int n, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != n) {
    fail(errc::not_a_bijection, "permutation length does not match space size");
  }
  std::vector<char> hit(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || hit[v]) {
      fail(errc::not_a_bijection, "image vector is not a bijection");
    }
    hit[v] = 1;
  }
}

void check_same_space(const Isometry& a, const Isometry& b) {
  if (a.space == b.space) return;
  if (a.space && b.space && a.space->same_metric(*b.space)) return;
  fail(errc::space_mismatch, "isometries live on different spaces");
}

}  // namespace

bool is_isometry(const FiniteMetricSpace& space, std::span<const int> perm) {
  check_permutation(space.size(), perm);
  for (int i = 0; i < space.size(); ++i) {
    for (int j = i + 1; j < space.size(); ++j) {
      if (space.dist(i, j) != space.dist(perm[i], perm[j])) return false;
    }
  }
  return true;
}

Isometry make_isometry(const SpacePtr& space, std::vector<int> image) {
  if (!is_isometry(*space, image)) {
    fail(errc::not_an_isometry, "image vector does not preserve distances");
  }
  return Isometry{space, std::move(image)};
}

Isometry identity_isometry(const SpacePtr& space) {
  std::vector<int> image(space->size());
  for (int i = 0; i < space->size(); ++i) image[i] = i;
  return Isometry{space, std::move(image)};
}

Isometry compose(const Isometry& f, const Isometry& g) {
  check_same_space(f, g);
  std::vector<int> image(g.image.size());
  for (std::size_t i = 0; i < g.image.size(); ++i) {
    image[i] = f.image[g.image[i]];
  }
  return Isometry{f.space, std::move(image)};
}

Isometry invert(const Isometry& f) {
  std::vector<int> image(f.image.size());
  for (std::size_t i = 0; i < f.image.size(); ++i) {
    image[f.image[i]] = static_cast<int>(i);
  }
  return Isometry{f.space, std::move(image)};
}

}  // namespace isogroup
