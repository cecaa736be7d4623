#ifndef ISOGROUP_GROUP_HPP
#define ISOGROUP_GROUP_HPP

/**
 * @file group.hpp
 * @brief Abstract finite groups given by a multiplication table or by
 *        permutation generators.
 */

#include <optional>
#include <string>
#include <vector>

#include "isogroup/errors.hpp"

namespace isogroup {

/// Finite group as a validated multiplication table; the identity sits
/// at index 0 and element names are g0, g1, ...
struct Group {
  std::vector<std::vector<int>> table;  // table[a][b] = a * b
  std::vector<std::string> names;

  int order() const { return static_cast<int>(table.size()); }
  int product(int a, int b) const { return table[a][b]; }
  int inverse(int a) const;
  const std::string& name(int a) const { return names[a]; }
};

struct GroupSpec {
  // Exactly one of the two descriptions must be present.
  std::optional<std::vector<std::vector<int>>> cayley;
  std::optional<std::vector<std::vector<int>>> generators;  // image vectors
  int degree = 0;                                           // for generators
  int order_cap = 5040;
};

/// Validates a table (associativity, identity at 0, inverses) or closes
/// a permutation generating set, assigning indices in discovery order
/// with the identity first.  Closure beyond order_cap throws.
Group group_from_spec(const GroupSpec& spec);

}  // namespace isogroup

#endif
