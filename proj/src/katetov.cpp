#include "isogroup/katetov.hpp"

#include <algorithm>

namespace isogroup {

namespace {

void check_base_match(const KatetovMap& f, const KatetovMap& g) {
  if (f.base() == g.base()) return;
  if (f.base() && g.base() && f.base()->same_metric(*g.base())) return;
  fail(errc::base_mismatch, "maps live over different base spaces");
}

}  // namespace

KatetovMap validate_katetov(const SpacePtr& base, std::vector<Rational> values) {
  const int n = base->size();
  if (static_cast<int>(values.size()) != n) {
    fail(errc::invalid_argument, "value count does not match base size");
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      const Rational& d = base->dist(x, y);
      if ((values[x] - values[y]).abs() > d) {
        fail(errc::katetov_lower, "lower bound fails at pair (" +
                                      std::to_string(x) + "," +
                                      std::to_string(y) + ")");
      }
      if (values[x] + values[y] < d) {
        fail(errc::katetov_upper, "upper bound fails at pair (" +
                                      std::to_string(x) + "," +
                                      std::to_string(y) + ")");
      }
    }
  }
  return unchecked_katetov(base, std::move(values));
}

KatetovMap unchecked_katetov(const SpacePtr& base, std::vector<Rational> values) {
  KatetovMap f;
  f.base_ = base;
  f.values_ = std::move(values);
  return f;
}

KatetovMap kuratowski(const SpacePtr& base, int x) {
  if (x < 0 || x >= base->size()) {
    fail(errc::invalid_argument, "kuratowski index out of range");
  }
  std::vector<Rational> values;
  values.reserve(base->size());
  for (int y = 0; y < base->size(); ++y) values.push_back(base->dist(x, y));
  return unchecked_katetov(base, std::move(values));
}

Rational sup_distance(const KatetovMap& f, const KatetovMap& g) {
  check_base_match(f, g);
  Rational best(0);
  for (int x = 0; x < f.base()->size(); ++x) {
    best = max(best, (f.value(x) - g.value(x)).abs());
  }
  return best;
}

bool is_supported_by(const KatetovMap& f, const PointSet& support) {
  if (support.indices.empty()) {
    fail(errc::empty_subset, "empty support set");
  }
  const auto& base = *f.base();
  for (int x = 0; x < base.size(); ++x) {
    bool first = true;
    Rational m;
    for (int s : support.indices) {
      if (s < 0 || s >= base.size()) {
        fail(errc::invalid_argument, "support index out of range");
      }
      Rational cand = f.value(s) + base.dist(x, s);
      if (first || cand < m) {
        m = cand;
        first = false;
      }
    }
    if (m != f.value(x)) return false;
  }
  return true;
}

Rational support_reduced_distance(const KatetovMap& f, const KatetovMap& g,
                                  const PointSet& support) {
  check_base_match(f, g);
  if (!is_supported_by(f, support) || !is_supported_by(g, support)) {
    fail(errc::not_supported, "given set does not support both maps");
  }
  Rational best(0);
  for (int s : support.indices) {
    best = max(best, (f.value(s) - g.value(s)).abs());
  }
  return best;
}

KatetovMap staircase(const SpacePtr& base, const StaircaseSpec& spec) {
  const int n = base->size();
  const int m = static_cast<int>(spec.witnesses.size());
  if (!(Rational(0) < spec.epsilon)) {
    fail(errc::spec_violation, "epsilon must be positive");
  }
  if (spec.offset.is_negative()) {
    fail(errc::spec_violation, "offset must be nonnegative");
  }
  if (diameter(*base) > Rational(1)) {
    fail(errc::diameter_exceeds_one, "staircase base must have diameter <= 1");
  }
  if (m >= 2) {
    Rational minpair = min_pairwise_distance(*base, spec.witnesses);
    if (Rational(2 * m) * spec.epsilon > minpair) {
      fail(errc::spec_violation,
           "2 m epsilon exceeds the minimum pairwise witness distance");
    }
  } else if (m == 1) {
    int w = spec.witnesses[0];
    if (w < 0 || w >= n) fail(errc::invalid_argument, "witness out of range");
  }

  const Rational floor_value = Rational(1) + spec.offset;
  const Rational cap = floor_value + Rational(2 * m) * spec.epsilon;
  std::vector<Rational> values;
  values.reserve(n);
  for (int x = 0; x < n; ++x) {
    Rational v = cap;
    for (int k = 0; k < m; ++k) {
      Rational term = floor_value + base->dist(x, spec.witnesses[k]) +
                      Rational(2 * k) * spec.epsilon;
      v = min(v, term);
    }
    values.push_back(v);
  }
  // Valid by construction: min of 1-Lipschitz terms and a constant is
  // 1-Lipschitz, and all values are >= 1 >= diameter.
  return unchecked_katetov(base, std::move(values));
}

KatetovMap pushforward(const KatetovMap& f, const Isometry& phi) {
  if (!(phi.space == f.base() ||
        (phi.space && f.base() && phi.space->same_metric(*f.base())))) {
    fail(errc::base_mismatch, "isometry does not act on the map's base");
  }
  Isometry inv = invert(phi);
  std::vector<Rational> values;
  values.reserve(f.base()->size());
  for (int x = 0; x < f.base()->size(); ++x) {
    values.push_back(f.value(inv.apply(x)));
  }
  return unchecked_katetov(f.base(), std::move(values));
}

AdjoinResult adjoin(const SpacePtr& base, std::span<const KatetovMap> maps,
                    std::span<const std::string> labels,
                    const PointSet& base_subset) {
  const int n = base->size();
  if (labels.size() != maps.size()) {
    fail(errc::invalid_argument, "adjoin needs one label per map");
  }
  for (int s : base_subset.indices) {
    if (s < 0 || s >= n) {
      fail(errc::invalid_argument, "base subset index out of range");
    }
  }

  // Dedup maps against the base (Kuratowski images) and against each other.
  std::vector<const KatetovMap*> kept;
  std::vector<std::string> kept_labels;
  std::vector<int> map_index(maps.size(), -1);
  for (std::size_t j = 0; j < maps.size(); ++j) {
    const KatetovMap& f = maps[j];
    if (!(f.base() == base ||
          (f.base() && f.base()->same_metric(*base)))) {
      fail(errc::base_mismatch, "adjoined map has a different base space");
    }
    int zero_at = -1;
    for (int x = 0; x < n; ++x) {
      if (f.value(x).is_zero()) {
        zero_at = x;
        break;
      }
    }
    if (zero_at >= 0) {
      // With valid extension values a zero forces f = delta_{zero_at}.
      for (int x = 0; x < n; ++x) {
        if (f.value(x) != base->dist(zero_at, x)) {
          fail(errc::zero_on_base,
               "map hits zero without being a distance function");
        }
      }
      map_index[j] = zero_at;
      continue;
    }
    bool dup = false;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if (*kept[k] == f) {
        map_index[j] = n + static_cast<int>(k);
        dup = true;
        break;
      }
    }
    if (dup) continue;
    map_index[j] = n + static_cast<int>(kept.size());
    kept.push_back(&f);
    kept_labels.push_back(labels[j]);
  }

  const int total = n + static_cast<int>(kept.size());
  std::vector<Rational> flat(static_cast<std::size_t>(total) * total,
                             Rational(0));
  auto at = [&](int i, int j) -> Rational& {
    return flat[static_cast<std::size_t>(i) * total + j];
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = base->dist(i, j);
  }
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const int pk = n + static_cast<int>(k);
    for (int x = 0; x < n; ++x) {
      at(pk, x) = kept[k]->value(x);
      at(x, pk) = kept[k]->value(x);
    }
    for (std::size_t l = 0; l < k; ++l) {
      const int pl = n + static_cast<int>(l);
      Rational d = sup_distance(*kept[k], *kept[l]);
      at(pk, pl) = d;
      at(pl, pk) = d;
    }
  }

  std::vector<std::string> all_labels = base->labels();
  for (auto& l : kept_labels) all_labels.push_back(std::move(l));

  // Re-validate the assembled matrix rather than trusting the proof.
  std::vector<std::vector<Rational>> rows(total);
  for (int i = 0; i < total; ++i) {
    rows[i].assign(flat.begin() + static_cast<std::size_t>(i) * total,
                   flat.begin() + static_cast<std::size_t>(i + 1) * total);
  }
  SpacePtr out = validate_space(std::move(all_labels), rows);
  return AdjoinResult{out, base_subset, std::move(map_index)};
}

}  // namespace isogroup
