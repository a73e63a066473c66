#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

/// An embedding A -> B between structures over the same signature: per-sort
/// injections that both preserve and reflect every relation.
struct Embedding {
  std::vector<std::vector<int>> map;  // map[sort][element of A] = element of B

  bool operator==(const Embedding&) const = default;
  int image(int sort, int elt) const { return map.at(sort).at(elt); }
};

Embedding identity_embedding(const Structure& a);
Embedding compose(const Embedding& first, const Embedding& then);

/// Checks injectivity, ranges, and the preserve-and-reflect condition on
/// every profile-compatible tuple of A.
bool check_embedding(const Structure& a, const Structure& b, const Embedding& e);

/// All embeddings A -> B in deterministic (lexicographic) order.
std::vector<Embedding> enumerate_embeddings(const Structure& a, const Structure& b);

/// First embedding extending `pinned` (entries >= 0 are fixed), if any.
std::optional<Embedding> find_embedding_extending(const Structure& a, const Structure& b,
                                                  const std::vector<std::vector<int>>& pinned);

bool embeds(const Structure& a, const Structure& b);

/// Induced substructure together with its inclusion embedding.
std::pair<Structure, Embedding> induced_with_inclusion(const Structure& s,
                                                       const std::vector<std::vector<int>>& keep);

}  // namespace fraisse
