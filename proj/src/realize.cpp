#include "isogroup/realize.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace isogroup {

namespace {

Rational min_positive_distance(const FiniteMetricSpace& space) {
  bool first = true;
  Rational best;
  for (int i = 0; i < space.size(); ++i) {
    for (int j = i + 1; j < space.size(); ++j) {
      if (first || space.dist(i, j) < best) {
        best = space.dist(i, j);
        first = false;
      }
    }
  }
  return first ? Rational(0) : best;
}

std::vector<std::vector<Rational>> word_metric_matrix(const Group& group,
                                                      const std::vector<int>& gens) {
  const int n = group.order();
  std::set<int> sym;
  for (int g : gens) {
    if (g < 0 || g >= n) {
      fail(errc::invalid_argument, "word metric generator index out of range");
    }
    if (g == 0) continue;  // the identity contributes nothing to words
    sym.insert(g);
    sym.insert(group.inverse(g));
  }
  if (sym.empty() && n > 1) {
    fail(errc::disconnected_word_metric,
         "generating set is empty or trivial");
  }
  std::vector<int> length(n, -1);
  std::queue<int> queue;
  length[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop();
    for (int s : sym) {
      int next = group.product(cur, s);
      if (length[next] < 0) {
        length[next] = length[cur] + 1;
        queue.push(next);
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    if (length[x] < 0) {
      fail(errc::disconnected_word_metric,
           "generating set does not generate the group (element " +
               group.name(x) + " unreachable)");
    }
  }
  std::vector<int> inv(n);
  for (int x = 0; x < n; ++x) inv[x] = group.inverse(x);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      m[x][y] = Rational(length[group.product(inv[x], y)]);
    }
  }
  return m;
}

}  // namespace

LeftTranslationSpace left_translation_space(const Group& group,
                                            const MetricChoice& metric) {
  const int n = group.order();
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> matrix;

  switch (metric.kind) {
    case MetricKind::discrete: {
      labels = group.names;
      matrix.assign(n, std::vector<Rational>(n, Rational(1)));
      for (int i = 0; i < n; ++i) matrix[i][i] = Rational(0);
      break;
    }
    case MetricKind::word: {
      labels = group.names;
      matrix = word_metric_matrix(group, metric.word_generators);
      break;
    }
    case MetricKind::explicit_matrix: {
      labels = metric.labels.empty() ? group.names : metric.labels;
      matrix = metric.matrix;
      if (static_cast<int>(matrix.size()) != n) {
        fail(errc::invalid_argument,
             "explicit metric size does not match the group order");
      }
      break;
    }
  }

  SpacePtr space = validate_space(labels, matrix);
  if (metric.kind == MetricKind::explicit_matrix) {
    for (int g = 0; g < n; ++g) {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          if (space->dist(group.product(g, x), group.product(g, y)) !=
              space->dist(x, y)) {
            fail(errc::not_left_invariant,
                 "metric is not left-invariant at (g,x,y) = (" +
                     std::to_string(g) + "," + std::to_string(x) + "," +
                     std::to_string(y) + ")");
          }
        }
      }
    }
  }
  if (n >= 2 && diameter(*space) > Rational(1)) {
    space = rescale_to_unit_diameter(*space);
  }

  LeftTranslationSpace out;
  out.space = space;
  out.embed.reserve(n);
  for (int g = 0; g < n; ++g) {
    std::vector<int> image(n);
    for (int x = 0; x < n; ++x) image[x] = group.product(g, x);
    out.embed.push_back(make_isometry(space, std::move(image)));
  }
  return out;
}

bool v_membership(const Isometry& psi, const Neighborhood& nb) {
  const auto& space = *psi.space;
  for (std::size_t k = 0; k < nb.witnesses.size(); ++k) {
    if (!(space.dist(psi.apply(nb.witnesses[k]), nb.targets[k]) < nb.epsilon)) {
      return false;
    }
  }
  return true;
}

namespace {

Rational neighborhood_epsilon(const FiniteMetricSpace& space,
                              const std::vector<int>& witnesses) {
  Rational minpair = min_pairwise_distance(space, witnesses);
  return minpair / Rational(2 * static_cast<int>(witnesses.size()) + 1);
}

void check_neighborhood_invariants(const FiniteMetricSpace& space,
                                   const LeftTranslationSpace& base,
                                   const Neighborhood& nb) {
  const int m = static_cast<int>(nb.witnesses.size());
  if (m < 2 || nb.targets.size() != nb.witnesses.size()) {
    fail(errc::cover_unsound, "neighborhood needs matching tuples of size >= 2");
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (space.dist(nb.witnesses[a], nb.witnesses[b]) !=
          space.dist(nb.targets[a], nb.targets[b])) {
        fail(errc::cover_unsound,
             "targets are not an isometric image of the witnesses");
      }
    }
  }
  Rational minpair = min_pairwise_distance(space, nb.witnesses);
  if (!(Rational(2 * m) * nb.epsilon < minpair)) {
    fail(errc::cover_unsound,
         "2 m epsilon must stay below the minimum witness distance");
  }
  for (const Isometry& t : base.embed) {
    if (v_membership(t, nb)) {
      fail(errc::cover_unsound,
           "a group translation lies inside a neighborhood");
    }
  }
}

Neighborhood grow_neighborhood(const LeftTranslationSpace& base,
                               const Group& group,
                               const std::vector<int>& psi) {
  const auto& space = *base.space;
  const int n = space.size();
  std::vector<int> witnesses{0};  // the identity element's point
  std::vector<int> targets{psi[0]};
  std::vector<char> used(n, 0);
  used[0] = 1;

  while (true) {
    std::vector<int> violators;
    Rational eps;
    if (witnesses.size() >= 2) {
      eps = neighborhood_epsilon(space, witnesses);
      for (int g = 0; g < group.order(); ++g) {
        bool inside = true;
        for (std::size_t k = 0; k < witnesses.size(); ++k) {
          if (!(space.dist(base.embed[g].apply(witnesses[k]), targets[k]) <
                eps)) {
            inside = false;
            break;
          }
        }
        if (inside) violators.push_back(g);
      }
    } else {
      for (int g = 0; g < group.order(); ++g) {
        if (base.embed[g].apply(witnesses[0]) == targets[0]) {
          violators.push_back(g);
        }
      }
    }

    if (violators.empty() && witnesses.size() >= 2) {
      return Neighborhood{witnesses, targets, eps, 0};
    }

    int add = -1;
    if (!violators.empty()) {
      const Isometry& t = base.embed[violators.front()];
      Rational best(0);
      for (int z = 0; z < n; ++z) {
        if (used[z]) continue;
        Rational gap = space.dist(t.apply(z), psi[z]);
        if (gap > best) {
          best = gap;
          add = z;
        }
      }
    }
    if (add < 0) {
      for (int z = 0; z < n; ++z) {
        if (!used[z]) {
          add = z;
          break;
        }
      }
    }
    if (add < 0) {
      fail(errc::cover_unsound,
           "could not separate an isometry from the translations");
    }
    used[add] = 1;
    witnesses.push_back(add);
    targets.push_back(psi[add]);
  }
}

std::vector<Neighborhood> build_cover_greedy(const LeftTranslationSpace& base,
                                             const Group& group,
                                             const IsoGroup& iso_x) {
  std::set<std::vector<int>> translations;
  for (const Isometry& t : base.embed) translations.insert(t.image);

  const std::size_t count = iso_x.elements.size();
  std::vector<char> covered(count, 0);
  std::vector<Neighborhood> cover;
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto& psi = iso_x.elements[idx];
    if (covered[idx] || translations.count(psi)) continue;
    Neighborhood nb = grow_neighborhood(base, group, psi);
    nb.index = static_cast<int>(cover.size()) + 1;
    check_neighborhood_invariants(*base.space, base, nb);
    for (std::size_t j = idx; j < count; ++j) {
      if (covered[j] || translations.count(iso_x.elements[j])) continue;
      Isometry phi{base.space, iso_x.elements[j]};
      if (v_membership(phi, nb)) covered[j] = 1;
    }
    if (!covered[idx]) {
      fail(errc::cover_unsound, "a neighborhood misses its own isometry");
    }
    cover.push_back(std::move(nb));
  }
  return cover;
}

std::vector<Neighborhood> build_cover_pairs(const LeftTranslationSpace& base,
                                            const Group& group) {
  const auto& space = *base.space;
  const int n = group.order();
  std::vector<Neighborhood> cover;
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (int a = 1; a < n; ++a) {
    const std::vector<int> witnesses{0, a};
    const Rational eps = neighborhood_epsilon(space, witnesses);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (v == group.product(u, a)) continue;
        if (space.dist(u, v) != space.dist(0, a)) continue;
        Neighborhood nb{witnesses, {u, v}, eps, 0};
        for (int g = 0; g < n; ++g) {
          if (v_membership(base.embed[g], nb)) {
            fail(errc::cover_unsound,
                 "pair neighborhood admits a translation; the metric is too "
                 "fine-grained for the pairs strategy, use greedy");
          }
        }
        if (!seen.insert({nb.witnesses, nb.targets}).second) continue;
        nb.index = static_cast<int>(cover.size()) + 1;
        cover.push_back(std::move(nb));
      }
    }
  }
  return cover;
}

}  // namespace

void check_cover(const LeftTranslationSpace& base, const Group& group,
                 const IsoGroup& iso_x,
                 const std::vector<Neighborhood>& cover) {
  std::set<std::vector<int>> translations;
  for (const Isometry& t : base.embed) translations.insert(t.image);
  for (const Neighborhood& nb : cover) {
    check_neighborhood_invariants(*base.space, base, nb);
  }
  for (const auto& psi : iso_x.elements) {
    if (translations.count(psi)) continue;
    Isometry phi{base.space, psi};
    bool hit = false;
    for (const Neighborhood& nb : cover) {
      if (v_membership(phi, nb)) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      fail(errc::cover_unsound, "an isometry outside the group escapes the cover");
    }
  }
}

std::vector<Neighborhood> build_cover(const LeftTranslationSpace& base,
                                      const Group& group,
                                      const IsoGroup& iso_x,
                                      CoverStrategy strategy) {
  std::vector<Neighborhood> cover = strategy == CoverStrategy::greedy
                                        ? build_cover_greedy(base, group, iso_x)
                                        : build_cover_pairs(base, group);
  check_cover(base, group, iso_x, cover);
  return cover;
}

std::pair<KatetovMap, KatetovMap> build_pair_functions(const SpacePtr& base,
                                                       const Neighborhood& nb,
                                                       const Rational& offset) {
  KatetovMap f = staircase(base, {nb.witnesses, nb.epsilon, offset});
  KatetovMap g = staircase(base, {nb.targets, nb.epsilon, offset});
  return {std::move(f), std::move(g)};
}

Lemma1Result lemma1_check(const SpacePtr& base, const IsoGroup& iso_x,
                          const Neighborhood& nb, const KatetovMap& f,
                          const KatetovMap& g) {
  for (const auto& vec : iso_x.elements) {
    Isometry psi{base, vec};
    const bool inside = v_membership(psi, nb);
    const Rational gap = sup_distance(pushforward(f, psi), g);
    const bool close = gap < nb.epsilon;
    if (inside != close) {
      Lemma1Result r;
      r.passed = false;
      r.witness_psi = vec;
      r.in_neighborhood = inside;
      r.function_gap = gap;
      return r;
    }
  }
  return Lemma1Result{};
}

namespace {

Rational offset_for(OffsetSchedule schedule, int index) {
  if (schedule == OffsetSchedule::harmonic) {
    return Rational(1, index + 1);
  }
  Rational r(1);
  for (int i = 0; i < index; ++i) r = r / Rational(2);
  return r;
}

/// Runs the Lemma-1 gate per neighborhood, halving epsilon up to eight
/// times on failure, and returns the final distinguishing functions.
std::vector<KatetovMap> lemma1_gate(const LeftTranslationSpace& base,
                                    const Group& group, const IsoGroup& iso_x,
                                    std::vector<Neighborhood>& cover,
                                    const std::vector<Rational>& offsets) {
  std::vector<KatetovMap> functions;
  functions.reserve(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    Neighborhood nb = cover[i];
    bool ok = false;
    for (int attempt = 0; attempt <= 8; ++attempt) {
      auto [f, g] = build_pair_functions(base.space, nb, offsets[i]);
      Lemma1Result res = lemma1_check(base.space, iso_x, nb, f, g);
      if (res.passed) {
        cover[i] = nb;
        functions.push_back(std::move(f));
        ok = true;
        break;
      }
      nb.epsilon = nb.epsilon / Rational(2);
    }
    if (!ok) {
      fail(errc::lemma1_failed,
           "neighborhood " + std::to_string(cover[i].index) +
               " fails the membership/function equivalence after 8 retries");
    }
  }
  // Epsilon halving shrinks neighborhoods, so re-establish the cover.
  check_cover(base, group, iso_x, cover);
  return functions;
}

struct OrbitLayer {
  std::vector<KatetovMap> maps;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> meta;  // (neighborhood 1-based, element)
};

OrbitLayer orbit_layer(const LeftTranslationSpace& base, const Group& group,
                       const std::vector<Neighborhood>& cover,
                       const std::vector<KatetovMap>& functions) {
  OrbitLayer layer;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (int g = 0; g < group.order(); ++g) {
      layer.maps.push_back(pushforward(functions[i], base.embed[g]));
      layer.labels.push_back("F" + std::to_string(cover[i].index) + ":" +
                             group.name(g));
      layer.meta.emplace_back(cover[i].index, g);
    }
  }
  return layer;
}

struct ExtraLayer {
  std::vector<KatetovMap> maps;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> translate;  // [slot][g] -> slot
};

/// Offset-zero staircases over every witness and target tuple of the
/// cover, closed under the translation action, plus the constant-one
/// map.  Closure keeps the layer invariant under the extended group.
ExtraLayer extra_layer(const LeftTranslationSpace& base, const Group& group,
                       const std::vector<Neighborhood>& cover) {
  ExtraLayer layer;
  std::map<std::vector<Rational>, int> slot_of;
  auto add = [&](const KatetovMap& f, const std::string& label) {
    if (slot_of.emplace(f.values(), static_cast<int>(layer.maps.size()))
            .second) {
      layer.maps.push_back(f);
      layer.labels.push_back(label);
    }
  };
  for (const Neighborhood& nb : cover) {
    for (int g = 0; g < group.order(); ++g) {
      auto translated = [&](const std::vector<int>& tuple) {
        std::vector<int> t;
        t.reserve(tuple.size());
        for (int p : tuple) t.push_back(base.embed[g].apply(p));
        return t;
      };
      add(staircase(base.space, {translated(nb.witnesses), nb.epsilon, Rational(0)}),
          "E" + std::to_string(nb.index) + "w:" + group.name(g));
      add(staircase(base.space, {translated(nb.targets), nb.epsilon, Rational(0)}),
          "E" + std::to_string(nb.index) + "t:" + group.name(g));
    }
  }
  add(staircase(base.space, {{}, Rational(1), Rational(0)}), "Econst");
  layer.translate.assign(layer.maps.size(),
                         std::vector<int>(group.order(), -1));
  for (std::size_t j = 0; j < layer.maps.size(); ++j) {
    for (int g = 0; g < group.order(); ++g) {
      KatetovMap moved = pushforward(layer.maps[j], base.embed[g]);
      auto it = slot_of.find(moved.values());
      if (it == slot_of.end()) {
        fail(errc::cover_unsound, "extra layer is not translation-closed");
      }
      layer.translate[j][g] = it->second;
    }
  }
  return layer;
}

Assembly degenerate_assembly(const LeftTranslationSpace& base,
                             Pipeline pipeline, OffsetSchedule schedule) {
  Assembly a;
  a.K = base.space;
  a.X = base.space;
  a.pipeline = pipeline;
  a.schedule = schedule;
  a.x_set = PointSet::all(base.space->size());
  for (int x = 0; x < base.space->size(); ++x) {
    a.provenance.push_back(PointProvenance{PointKind::base, x, -1});
  }
  a.lemma1_passed = true;
  return a;
}

}  // namespace

Assembly assemble_compact(const LeftTranslationSpace& base, const Group& group,
                          const IsoGroup& iso_x,
                          std::vector<Neighborhood> cover,
                          OffsetSchedule schedule, bool include_extra_layer) {
  if (base.space->size() == 1) {
    // A lone point needs no apex; the generic construction over it is
    // not rigid, so the space itself is the answer.
    return degenerate_assembly(base, Pipeline::compact, schedule);
  }

  std::vector<Rational> offsets;
  offsets.reserve(cover.size());
  for (const Neighborhood& nb : cover) {
    offsets.push_back(offset_for(schedule, nb.index));
  }
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (offsets[i] <= Rational(0)) {
      fail(errc::spec_violation, "level offsets must be positive");
    }
    for (std::size_t j = i + 1; j < offsets.size(); ++j) {
      if (offsets[i] == offsets[j]) {
        fail(errc::spec_violation, "level offsets must be pairwise distinct");
      }
    }
  }

  std::vector<KatetovMap> functions =
      lemma1_gate(base, group, iso_x, cover, offsets);
  OrbitLayer orbit = orbit_layer(base, group, cover, functions);

  ExtraLayer extra;
  if (include_extra_layer) extra = extra_layer(base, group, cover);

  std::vector<KatetovMap> maps = orbit.maps;
  std::vector<std::string> labels = orbit.labels;
  for (std::size_t j = 0; j < extra.maps.size(); ++j) {
    maps.push_back(extra.maps[j]);
    labels.push_back(extra.labels[j]);
  }

  const int nx = base.space->size();
  AdjoinResult zr = adjoin(base.space, maps, labels, PointSet::all(nx));

  Assembly a;
  a.X = base.space;
  a.pipeline = Pipeline::compact;
  a.schedule = schedule;
  a.cover = cover;
  a.offsets = offsets;
  a.x_set = PointSet::all(nx);
  a.orbit_point.assign(cover.size(), std::vector<int>(group.order(), -1));
  for (std::size_t j = 0; j < orbit.meta.size(); ++j) {
    auto [idx, g] = orbit.meta[j];
    int p = zr.map_point_index[j];
    if (p < nx) {
      fail(errc::spec_violation,
           "an orbit function collided with a base point");
    }
    a.orbit_point[idx - 1][g] = p;
  }
  // Positive pairwise-distinct offsets force distinct levels.
  {
    std::map<int, int> level_of;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      for (int p : a.orbit_point[i]) {
        auto it = level_of.emplace(p, static_cast<int>(i));
        if (!it.second && it.first->second != static_cast<int>(i)) {
          fail(errc::spec_violation, "orbit levels collided across neighborhoods");
        }
      }
    }
  }
  a.f_sets.reserve(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    std::vector<int> pts = a.orbit_point[i];
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    a.f_sets.push_back(PointSet{std::move(pts)});
  }
  a.extra_translate = extra.translate;
  a.extra_point.resize(extra.maps.size());
  for (std::size_t j = 0; j < extra.maps.size(); ++j) {
    a.extra_point[j] = zr.map_point_index[orbit.maps.size() + j];
  }

  const SpacePtr z = zr.space;
  const Rational c = diameter(*z) + Rational(1);
  std::vector<Rational> apex_values;
  apex_values.reserve(z->size());
  for (int p = 0; p < z->size(); ++p) {
    apex_values.push_back(c + distance_to_subset(*z, p, a.x_set));
  }
  KatetovMap apex_map = validate_katetov(z, std::move(apex_values));
  std::vector<std::string> apex_label{"apex"};
  AdjoinResult kr = adjoin(z, std::span<const KatetovMap>(&apex_map, 1),
                           apex_label, a.x_set);
  a.K = kr.space;
  a.apex = kr.map_point_index[0];
  if (a.apex != z->size()) {
    fail(errc::spec_violation, "apex point collapsed into the inner space");
  }

  a.provenance.resize(a.K->size());
  for (int x = 0; x < nx; ++x) {
    a.provenance[x] = PointProvenance{PointKind::base, x, -1};
  }
  for (std::size_t j = 0; j < orbit.meta.size(); ++j) {
    auto [idx, g] = orbit.meta[j];
    int p = zr.map_point_index[j];
    if (a.provenance[p].kind == PointKind::base && p >= nx) {
      a.provenance[p] = PointProvenance{PointKind::orbit, g, idx};
    }
  }
  for (std::size_t j = 0; j < a.extra_point.size(); ++j) {
    int p = a.extra_point[j];
    if (a.provenance[p].kind == PointKind::base && p >= nx) {
      a.provenance[p] = PointProvenance{PointKind::orbit, -1, 0};
    }
  }
  a.provenance[a.apex] = PointProvenance{PointKind::apex, -1, -1};
  a.lemma1_passed = true;

  // Recovery identities, checked now rather than trusted.
  for (int p = 0; p < z->size(); ++p) {
    bool at_c = a.K->dist(p, a.apex) == c;
    if (at_c != a.x_set.contains(p)) {
      fail(errc::spec_violation, "base recovery from the apex distance failed");
    }
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    Rational level = Rational(1) + offsets[i];
    for (int p = 0; p < z->size(); ++p) {
      bool at_level = distance_to_subset(*a.K, p, a.x_set) == level;
      if (at_level != a.f_sets[i].contains(p)) {
        fail(errc::spec_violation, "orbit recovery from the base distance failed");
      }
    }
  }
  return a;
}

Assembly assemble_polish(const LeftTranslationSpace& base, const Group& group,
                         const IsoGroup& iso_x,
                         std::vector<Neighborhood> cover) {
  std::vector<Rational> offsets(cover.size(), Rational(0));
  std::vector<KatetovMap> functions =
      lemma1_gate(base, group, iso_x, cover, offsets);
  OrbitLayer orbit = orbit_layer(base, group, cover, functions);

  const int nx = base.space->size();
  AdjoinResult zr =
      adjoin(base.space, orbit.maps, orbit.labels, PointSet::all(nx));

  Assembly a;
  a.X = base.space;
  a.pipeline = Pipeline::polish;
  a.cover = cover;
  a.offsets = offsets;
  a.x_set = PointSet::all(nx);
  a.orbit_point.assign(cover.size(), std::vector<int>(group.order(), -1));
  for (std::size_t j = 0; j < orbit.meta.size(); ++j) {
    auto [idx, g] = orbit.meta[j];
    int p = zr.map_point_index[j];
    if (p < nx) {
      fail(errc::spec_violation, "an orbit function collided with a base point");
    }
    a.orbit_point[idx - 1][g] = p;
  }
  a.f_sets.reserve(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    std::vector<int> pts = a.orbit_point[i];
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    a.f_sets.push_back(PointSet{std::move(pts)});
  }

  const SpacePtr z = zr.space;
  const Rational diam_z = diameter(*z);
  if (!(diam_z < Rational(2))) {
    fail(errc::spec_violation, "tag levels require inner diameter below 2");
  }
  std::vector<KatetovMap> tags;
  std::vector<std::string> tag_labels;
  for (std::size_t i = 0; i <= cover.size(); ++i) {
    const PointSet& target = i == 0 ? a.x_set : a.f_sets[i - 1];
    std::vector<Rational> values;
    values.reserve(z->size());
    for (int p = 0; p < z->size(); ++p) {
      values.push_back(Rational(static_cast<long long>(i) + 2) +
                       distance_to_subset(*z, p, target));
    }
    tags.push_back(validate_katetov(z, std::move(values)));
    tag_labels.push_back("y" + std::to_string(i));
  }
  AdjoinResult kr = adjoin(z, tags, tag_labels, a.x_set);
  a.K = kr.space;
  a.tag_points = kr.map_point_index;
  for (std::size_t i = 0; i < a.tag_points.size(); ++i) {
    if (a.tag_points[i] != z->size() + static_cast<int>(i)) {
      fail(errc::spec_violation, "tag points collapsed during adjoining");
    }
  }

  a.provenance.resize(a.K->size());
  for (int x = 0; x < nx; ++x) {
    a.provenance[x] = PointProvenance{PointKind::base, x, -1};
  }
  for (std::size_t j = 0; j < orbit.meta.size(); ++j) {
    auto [idx, g] = orbit.meta[j];
    int p = zr.map_point_index[j];
    if (a.provenance[p].kind == PointKind::base && p >= nx) {
      a.provenance[p] = PointProvenance{PointKind::orbit, g, idx};
    }
  }
  for (std::size_t i = 0; i < a.tag_points.size(); ++i) {
    a.provenance[a.tag_points[i]] =
        PointProvenance{PointKind::tag, -1, static_cast<int>(i)};
  }
  a.lemma1_passed = true;

  for (std::size_t i = 0; i < a.tag_points.size(); ++i) {
    const PointSet& target = i == 0 ? a.x_set : a.f_sets[i - 1];
    const Rational level(static_cast<long long>(i) + 2);
    if (!(diam_z < level)) {
      fail(errc::spec_violation, "tag level does not dominate the inner diameter");
    }
    for (int p = 0; p < z->size(); ++p) {
      const Rational& d = a.K->dist(p, a.tag_points[i]);
      if (d < level) {
        fail(errc::spec_violation, "tag separation failed");
      }
      if ((d == level) != target.contains(p)) {
        fail(errc::spec_violation, "orbit recovery from a tag distance failed");
      }
    }
  }
  return a;
}

Isometry extend_isometry(const Isometry& phi, const Assembly& assembly,
                         const Group& group,
                         const LeftTranslationSpace& base) {
  int g = -1;
  for (int cand = 0; cand < group.order(); ++cand) {
    if (base.embed[cand].image == phi.image) {
      g = cand;
      break;
    }
  }
  if (g < 0) {
    fail(errc::invalid_argument,
         "only embedded translations extend to the assembled space");
  }
  const int total = assembly.K->size();
  std::vector<int> image(total, -1);
  auto assign = [&](int from, int to) {
    if (image[from] >= 0 && image[from] != to) {
      fail(errc::extension_not_isometric,
           "extension is inconsistent on a shared point");
    }
    image[from] = to;
  };
  for (int x : assembly.x_set.indices) {
    assign(x, base.embed[g].apply(x));
  }
  for (std::size_t i = 0; i < assembly.orbit_point.size(); ++i) {
    for (int h = 0; h < group.order(); ++h) {
      assign(assembly.orbit_point[i][h],
             assembly.orbit_point[i][group.product(g, h)]);
    }
  }
  for (std::size_t j = 0; j < assembly.extra_point.size(); ++j) {
    assign(assembly.extra_point[j],
           assembly.extra_point[assembly.extra_translate[j][g]]);
  }
  if (assembly.apex >= 0) assign(assembly.apex, assembly.apex);
  for (int t : assembly.tag_points) assign(t, t);
  for (int p = 0; p < total; ++p) {
    if (image[p] < 0) {
      fail(errc::extension_not_isometric, "extension left a point unassigned");
    }
  }
  if (!is_isometry(*assembly.K, image)) {
    fail(errc::extension_not_isometric,
         "the extended permutation does not preserve distances");
  }
  return Isometry{assembly.K, std::move(image)};
}

RealizationReport verify_realization(const Assembly& assembly,
                                     const Group& group,
                                     const LeftTranslationSpace& base,
                                     long long node_budget) {
  RealizationReport r;
  r.group_order = group.order();
  r.pipeline = assembly.pipeline;
  r.schedule = assembly.schedule;
  r.cover_size = static_cast<int>(assembly.cover.size());
  r.cover = assembly.cover;
  r.provenance = assembly.provenance;
  r.lemma1_verified = assembly.lemma1_passed;

  IsoGroup iso_k = enumerate_isometries(assembly.K, node_budget);
  r.iso_order_of_k = iso_k.order();

  std::vector<Isometry> embedded;
  bool embedding_ok = true;
  try {
    embedded.reserve(group.order());
    for (int g = 0; g < group.order(); ++g) {
      embedded.push_back(extend_isometry(base.embed[g], assembly, group, base));
    }
  } catch (const Error& e) {
    embedding_ok = false;
    r.detail = e.what();
  }
  if (embedding_ok) {
    EmbeddingCheck check = verify_embedding(group, embedded);
    if (!check.ok) {
      embedding_ok = false;
      r.detail = check.reason;
    }
  }
  if (embedding_ok) {
    std::set<std::vector<int>> images;
    for (const Isometry& e : embedded) images.insert(e.image);
    for (const Isometry& e : embedded) {
      if (!iso_k.contains(e.image)) {
        embedding_ok = false;
        r.detail = "an extension is missing from the isometry group";
        break;
      }
    }
    if (embedding_ok) {
      for (const auto& psi : iso_k.elements) {
        if (!images.count(psi)) {
          embedding_ok = false;
          r.detail = "an isometry of K is not an extended translation";
          break;
        }
      }
    }
  }
  r.embedding_verified = embedding_ok;

  bool recovery_ok = true;
  std::string recovery_detail;
  const int inner = assembly.apex >= 0 ? assembly.K->size() - 1
                    : !assembly.tag_points.empty()
                        ? assembly.tag_points.front()
                        : assembly.K->size();
  if (assembly.apex >= 0) {
    for (const auto& psi : iso_k.elements) {
      if (psi[assembly.apex] != assembly.apex) {
        recovery_ok = false;
        recovery_detail = "an isometry moves the apex point";
        break;
      }
    }
    if (recovery_ok) {
      Rational c;
      bool first = true;
      for (int p = 0; p < assembly.K->size(); ++p) {
        if (p == assembly.apex) continue;
        const Rational& d = assembly.K->dist(assembly.apex, p);
        if (first || d < c) {
          c = d;
          first = false;
        }
      }
      for (int p = 0; p < assembly.K->size() && recovery_ok; ++p) {
        if (p == assembly.apex) continue;
        if ((assembly.K->dist(assembly.apex, p) == c) !=
            assembly.x_set.contains(p)) {
          recovery_ok = false;
          recovery_detail = "base recovery from the apex distance failed";
        }
      }
      for (std::size_t i = 0; i < assembly.cover.size() && recovery_ok; ++i) {
        Rational level = Rational(1) + assembly.offsets[i];
        for (int p = 0; p < inner; ++p) {
          if ((distance_to_subset(*assembly.K, p, assembly.x_set) == level) !=
              assembly.f_sets[i].contains(p)) {
            recovery_ok = false;
            recovery_detail = "orbit recovery from the base distance failed";
            break;
          }
        }
      }
    }
  }
  if (!assembly.tag_points.empty() && recovery_ok) {
    for (const auto& psi : iso_k.elements) {
      for (int t : assembly.tag_points) {
        if (psi[t] != t) {
          recovery_ok = false;
          recovery_detail = "an isometry moves a tag point";
          break;
        }
      }
      if (!recovery_ok) break;
    }
    for (std::size_t i = 0; i < assembly.tag_points.size() && recovery_ok;
         ++i) {
      const Rational level(static_cast<long long>(i) + 2);
      const PointSet& target =
          i == 0 ? assembly.x_set : assembly.f_sets[i - 1];
      for (int p = 0; p < inner; ++p) {
        const Rational& d = assembly.K->dist(p, assembly.tag_points[i]);
        if (d < level || (d == level) != target.contains(p)) {
          recovery_ok = false;
          recovery_detail = "tag separation or recovery failed";
          break;
        }
      }
    }
  }
  r.recovery_verified = recovery_ok;
  if (!recovery_ok && r.detail.empty()) r.detail = recovery_detail;

  r.realized = r.embedding_verified &&
               r.iso_order_of_k == static_cast<long long>(group.order());
  if (!r.realized && r.detail.empty()) {
    r.detail = "isometry group order " + std::to_string(r.iso_order_of_k) +
               " does not match group order " + std::to_string(group.order());
  }
  return r;
}

PipelineResult realize_pipeline(const Group& group, const MetricChoice& metric,
                                Pipeline pipeline, CoverStrategy strategy,
                                OffsetSchedule schedule,
                                bool include_extra_layer,
                                long long node_budget) {
  if (include_extra_layer && pipeline == Pipeline::polish) {
    fail(errc::invalid_argument,
         "the extra offset-zero layer only applies to the compact pipeline");
  }
  PipelineResult out;
  out.base = left_translation_space(group, metric);

  const int n = group.order();
  if (n == 1 || (n == 2 && pipeline == Pipeline::compact)) {
    // One- and two-point spaces already have the right isometry group;
    // the generic apex construction over them is not rigid.
    out.assembly = degenerate_assembly(out.base, pipeline, schedule);
  } else {
    IsoGroup iso_x = enumerate_isometries(out.base.space, node_budget);
    std::vector<Neighborhood> cover =
        build_cover(out.base, group, iso_x, strategy);
    out.assembly =
        pipeline == Pipeline::compact
            ? assemble_compact(out.base, group, iso_x, std::move(cover),
                               schedule, include_extra_layer)
            : assemble_polish(out.base, group, iso_x, std::move(cover));
  }
  out.report = verify_realization(out.assembly, group, out.base, node_budget);
  return out;
}

}  // namespace isogroup
