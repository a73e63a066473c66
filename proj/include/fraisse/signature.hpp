#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fraisse {

/// A finite relational vocabulary: named sorts plus relation symbols with
/// arities and sort profiles. One-sorted signatures are the |sorts|==1 case.
struct Signature {
  struct Relation {
    std::string name;
    int arity = 0;
    std::vector<int> profile;  // sort index per argument position

    bool operator==(const Relation&) const = default;
  };

  std::vector<std::string> sorts;
  std::vector<Relation> relations;

  Signature() = default;
  Signature(std::vector<std::string> sorts_, std::vector<Relation> rels);

  int sort_count() const { return static_cast<int>(sorts.size()); }
  int relation_count() const { return static_cast<int>(relations.size()); }
  bool one_sorted() const { return sorts.size() == 1; }

  // -1 when absent
  int sort_index(std::string_view name) const;
  int relation_index(std::string_view name) const;

  int max_arity() const;

  bool operator==(const Signature&) const = default;

  /// Compact space-free literal, e.g. "V:E/2(V,V),</2(V,V)". Sorts listed
  /// comma-separated before ':', relations after.
  std::string to_literal() const;
  static Signature from_literal(std::string_view text);

  void validate() const;  // throws std::invalid_argument on broken invariants
};

/// Convenience for the ubiquitous one-sorted case.
Signature make_one_sorted(std::string sort, std::vector<std::pair<std::string, int>> rels);

}  // namespace fraisse
