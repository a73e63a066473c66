#pragma once

#include <string>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

/// Fingerprint of an irreflexive quantifier-free complete type realized in a
/// multi-sorted structure: the sorts of the tuple positions plus every
/// relation atom over sort-compatible position maps (repeats allowed).
struct TypeDescriptor {
  int arity = 0;
  std::vector<int> sorts;  // sort index per position, in the original signature
  // (relation index, position map) pairs that hold of the tuple
  std::vector<std::pair<int, std::vector<int>>> atoms;

  auto operator<=>(const TypeDescriptor&) const = default;
  std::string to_text(const Signature& original) const;
  static TypeDescriptor from_text(std::string_view text, const Signature& original);
};

/// One-sorted companion of B: universe is the sort-tagged disjoint union of
/// B's sorts, one relation per realized type of arity <= the original max
/// arity. The derived signature is input-relative: only realized types get a
/// symbol.
struct OneSortResult {
  Signature original;
  Structure derived;                    // one-sorted, relations named T0, T1, ...
  std::vector<TypeDescriptor> types;    // aligned with derived.sig.relations
  std::vector<int> sort_offsets;        // flat index of (sort i, elt b) = offsets[i] + b
};

OneSortResult one_sort_forward(const Structure& b);

/// Inverse direction: reads a one-sorted structure over a derived signature
/// back into the original vocabulary. The unary types must partition the
/// universe; elements keep their derived order within each sort.
struct OneSortBackResult {
  Structure original;
  std::vector<int> sort_of;   // per derived element
  std::vector<int> index_of;  // per derived element, index within its sort
};

OneSortBackResult one_sort_back(const Structure& c, const Signature& original,
                                const std::vector<TypeDescriptor>& types);

/// File form: structure text plus trailing lines
///   origsig: <signature literal>
///   type <R>: <descriptor text>
std::string serialize_one_sort(const OneSortResult& r);
OneSortResult parse_one_sort(std::string_view text);

}  // namespace fraisse
