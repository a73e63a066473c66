#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/embedding.hpp"
#include "fraisse/structure.hpp"

namespace fraisse {

/// A class of finite structures over a fixed signature, cut out by structural
/// constraints. Constraints do double duty: membership checking and
/// structured one-point-extension enumeration.
struct ClassSpec {
  std::string name;
  Signature sig;

  struct Constraints {
    std::vector<int> symmetric_irreflexive;          // orbit-closed, non-repeating tuples
    std::vector<int> linear_orders;                  // strict total order on its sort
    std::vector<std::vector<int>> unary_partitions;  // unary rels partitioning one sort
    std::vector<int> transversal;                    // tuple meets each partition class once
    std::vector<Structure> forbidden;                // forbidden induced substructures
    std::optional<std::pair<int, int>> max_tuple_orbits;  // (relation, cap)
  } constraints;

  bool hereditary = true;

  /// Optional registered stream of candidate generic models, consumed by
  /// build_generic before it falls back to greedy closure.
  std::function<std::optional<Structure>(int)> generic_candidates;
};

/// Membership. Throws std::invalid_argument on signature mismatch.
bool is_member(const ClassSpec& k, const Structure& s);

/// Members with total size exactly n (resp. at most n), one representative
/// per isomorphism class, sorted by canonical code.
std::vector<Structure> members_of_size(const ClassSpec& k, int n);
std::vector<Structure> members_up_to(const ClassSpec& k, int n);

/// All members over `s` plus one fresh element of `sort`, as labeled
/// structures (the new element gets the last index of its sort).
std::vector<Structure> one_point_extensions(const ClassSpec& k, const Structure& s, int sort);

enum class Axiom { HP, JEP, AP, DisjointJEP, DisjointAP };
Axiom parse_axiom(std::string_view name);
std::string axiom_name(Axiom a);

struct AxiomReport {
  enum class Verdict { HoldsUpTo, Counterexample };
  Verdict verdict = Verdict::HoldsUpTo;
  Axiom axiom = Axiom::HP;
  int bound = 0;
  // populated on counterexample; for HP, a = offending induced substructure
  // and b1 = the member it came from
  std::optional<Structure> a, b1, b2;
  std::optional<Embedding> f1, f2;
  std::string detail;
};

/// Bounded axiom check over all instances drawn from members of size <= n.
AxiomReport check_axiom(const ClassSpec& k, Axiom axiom, int n);

struct Amalgam {
  Structure c;
  Embedding g1, g2;  // g1 f1 = g2 f2
};

/// Searches completions of the pushout universe B1 + (B2 - f2 A) for a member
/// of K; the coprojection images always intersect exactly in the copy of A.
std::optional<Amalgam> amalgamate_disjoint(const ClassSpec& k, const Structure& a,
                                           const Structure& b1, const Structure& b2,
                                           const Embedding& f1, const Embedding& f2);

/// Plain amalgamation: disjoint pushout first, then exhaustive search over
/// members up to |B1|+|B2|-|A| (sufficient for hereditary classes).
std::optional<Amalgam> amalgamate(const ClassSpec& k, const Structure& a, const Structure& b1,
                                  const Structure& b2, const Embedding& f1, const Embedding& f2);

/// Quantifier-free type fingerprint of a tuple (with repeats allowed): sorts,
/// equality pattern, and every relation atom over position maps.
std::string qf_type(const Structure& s, const std::vector<std::pair<int, int>>& tuple);

struct FactorizationReport {
  bool holds = true;
  std::string detail;  // witness description when it fails
};

/// Window check (window size k) that qf types in A and coordinatewise type
/// tuples in the product of `factors` determine each other along u.
/// A and all factors must be one-sorted; u maps A's elements injectively to
/// row-major indices of the product universe.
FactorizationReport factorization_window_check(const Structure& a,
                                               const std::vector<Structure>& factors,
                                               const std::vector<int>& u, int k);

}  // namespace fraisse
