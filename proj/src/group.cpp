#include "isogroup/group.hpp"

#include <map>

namespace isogroup {

int Group::inverse(int a) const {
  for (int b = 0; b < order(); ++b) {
    if (table[a][b] == 0 && table[b][a] == 0) return b;
  }
  fail(errc::no_inverse, "element " + std::to_string(a) + " has no inverse");
}

namespace {

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
  return names;
}

Group from_cayley(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) fail(errc::invalid_argument, "empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) {
      fail(errc::invalid_argument, "multiplication table is not square");
    }
    for (int v : row) {
      if (v < 0 || v >= n) {
        fail(errc::invalid_argument, "table entry out of range");
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    if (table[0][a] != a || table[a][0] != a) {
      fail(errc::no_identity, "index 0 is not a two-sided identity");
    }
  }
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n; ++b) {
      if (table[a][b] == 0 && table[b][a] == 0) {
        found = true;
        break;
      }
    }
    if (!found) {
      fail(errc::no_inverse,
           "element " + std::to_string(a) + " has no inverse");
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          fail(errc::not_associative,
               "associativity fails at (" + std::to_string(a) + "," +
                   std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
    }
  }
  return Group{table, default_names(n)};
}

std::vector<int> compose_perm(const std::vector<int>& f,
                              const std::vector<int>& g) {
  std::vector<int> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
  return r;
}

Group from_generators(const std::vector<std::vector<int>>& gens, int degree,
                      int order_cap) {
  if (degree <= 0) fail(errc::invalid_argument, "degree must be positive");
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != degree) {
      fail(errc::invalid_argument, "generator length does not match degree");
    }
    std::vector<char> hit(degree, 0);
    for (int v : g) {
      if (v < 0 || v >= degree || hit[v]) {
        fail(errc::invalid_argument, "generator is not a permutation");
      }
      hit[v] = 1;
    }
  }

  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;

  std::vector<std::vector<int>> elements{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<int> next = compose_perm(elements[head], g);
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(std::move(next));
        if (static_cast<int>(elements.size()) > order_cap) {
          fail(errc::order_cap_exceeded,
               "generator closure exceeds the order cap of " +
                   std::to_string(order_cap));
        }
      }
    }
  }

  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      table[a][b] = index.at(compose_perm(elements[a], elements[b]));
    }
  }
  return Group{std::move(table), default_names(n)};
}

}  // namespace

Group group_from_spec(const GroupSpec& spec) {
  if (spec.cayley.has_value() == spec.generators.has_value()) {
    fail(errc::invalid_argument,
         "exactly one of a multiplication table or a generator list is required");
  }
  if (spec.cayley) return from_cayley(*spec.cayley);
  return from_generators(*spec.generators, spec.degree, spec.order_cap);
}

}  // namespace isogroup
