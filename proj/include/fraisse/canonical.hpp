#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

/// Canonical code of a structure: byte string invariant under isomorphism and
/// equal exactly for isomorphic structures over equal signatures.
struct CanonicalCode {
  std::vector<std::uint8_t> bytes;

  auto operator<=>(const CanonicalCode&) const = default;
  std::string hex() const;
};

/// Individualisation-refinement canonical form. Returns the code of the
/// lexicographically least relabeling among all refinement-stable labelings.
CanonicalCode canonical_form(const Structure& s);

/// A relabeling (perm[sort][old] = new) realising the canonical form.
std::vector<std::vector<int>> canonical_labeling(const Structure& s);

bool are_isomorphic(const Structure& a, const Structure& b);

}  // namespace fraisse
