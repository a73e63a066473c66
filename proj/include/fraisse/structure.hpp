#pragma once

#include <set>
#include <vector>

#include "fraisse/signature.hpp"

namespace fraisse {

using Tuple = std::vector<int>;

/// A finite structure: per-sort universe sizes {0..size-1} and one tuple set
/// per relation symbol. Tuple entries are per-sort indices according to the
/// relation's profile. Tuple sets are stored in full (symmetric relations
/// carry every ordering of each edge), ordered for deterministic iteration.
struct Structure {
  Signature sig;
  std::vector<int> sizes;               // per sort
  std::vector<std::set<Tuple>> rels;    // per relation symbol

  Structure() = default;
  explicit Structure(Signature s);
  Structure(Signature s, std::vector<int> sizes_);

  int size(int sort) const { return sizes.at(sort); }
  int total_size() const;
  bool empty() const { return total_size() == 0; }

  bool has(int rel, const Tuple& t) const;
  void add(int rel, Tuple t);            // validates entries
  void add_orbit(int rel, const Tuple& t);  // all permutations (one-sorted rel)

  /// Throws std::invalid_argument if sizes/tuples are out of range or a
  /// tuple's length disagrees with its relation's arity.
  void validate() const;

  bool operator==(const Structure&) const = default;
};

/// Substructure induced by per-sort element subsets (each given as a sorted
/// list of kept indices). Kept elements are re-indexed by rank.
Structure induced_substructure(const Structure& s, const std::vector<std::vector<int>>& keep);

/// Restriction to the relation symbols of `target` (matched by name; profiles
/// must agree up to sort names). Used to take reducts before comparisons.
Structure reduct(const Structure& s, const Signature& target);

/// Relabel: perm[sort][old] = new index, a bijection per sort.
Structure apply_permutation(const Structure& s, const std::vector<std::vector<int>>& perm);

/// Disjoint union (same signature): b's elements are appended after a's.
Structure disjoint_union(const Structure& a, const Structure& b);

}  // namespace fraisse
