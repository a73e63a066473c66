#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraisse/class_spec.hpp"

namespace fraisse {

struct ExtensionReport {
  bool holds = true;
  int k = 0;
  // populated on failure: the extension instance that has no solution
  std::optional<Structure> b;
  std::vector<std::vector<int>> subset;  // kept indices of B forming A
  std::optional<Embedding> f;            // A -> S with no extension B -> S
  std::string detail;
};

/// k-extension property of S relative to K: every embedding of an induced
/// substructure A of a member B with |B| <= k+1 into S extends to B.
/// Throws std::invalid_argument when S is not a member of K.
ExtensionReport verify_extension_property(const Structure& s, const ClassSpec& k, int level);

struct GenericResult {
  enum class Status { Ok, BudgetExceeded };
  Status status = Status::Ok;
  std::optional<Structure> model;
  std::string detail;
};

/// Finite approximation of the generic model: first any registered candidate
/// stream (each candidate verified before being returned), then greedy
/// closure satisfying unmet extension requirements in deterministic order.
/// `budget` caps the universe size of the greedy closure.
GenericResult build_generic(const ClassSpec& k, int level, int budget = 64);

struct RamseyResult {
  enum class Status { Found, Absent, BudgetExceeded };
  Status status = Status::Absent;
  std::optional<Structure> c;
  int candidates_checked = 0;
  int candidates_skipped = 0;  // coloring space exceeded the bit budget
  std::string detail;
};

/// Exhaustive search for C in K with C -> (B)^A_colors: every coloring of the
/// embeddings of A into C is monochromatic on some induced copy of B. A and B
/// must be members of K. Candidates whose coloring space exceeds 2^budget_bits
/// are skipped; skipping anything downgrades an empty-handed run from Absent
/// to BudgetExceeded.
RamseyResult ramsey_witness_search(const ClassSpec& k, const Structure& a, const Structure& b,
                                   int colors, int max_size, int budget_bits = 24);

}  // namespace fraisse
