#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

/// A variable coordinate: coordinate `coord` of block `block`, written
/// "x<block>.<coord>" in text form.
struct Term {
  int block = 0;
  int coord = 0;
  auto operator<=>(const Term&) const = default;
};

/// Quantifier-free formula over one-sorted block variables: atoms
/// R(t1,...,tr), equalities t1 = t2, and !/&/| combinations. Kept in a normal
/// form: negations only on atoms, And/Or flattened with children sorted and
/// deduplicated, equality operands ordered, reflexive equalities never built
/// by the enumerator.
struct QFFormula {
  enum class Kind { Atom, Eq, Not, And, Or };

  Kind kind = Kind::Atom;
  std::string rel;               // Atom: relation name
  std::vector<Term> args;        // Atom: arity terms; Eq: exactly 2
  std::vector<QFFormula> children;

  // recorded at the root
  int block_count = 0;
  int block_width = 0;

  static QFFormula atom(std::string rel, std::vector<Term> args);
  static QFFormula equal(Term a, Term b);
  static QFFormula negate(QFFormula f);    // collapses double negation
  static QFFormula conj(std::vector<QFFormula> parts);
  static QFFormula disj(std::vector<QFFormula> parts);

  int node_count() const;  // Atom/Eq 1, Not child+1, And/Or 1+sum
  bool operator==(const QFFormula&) const = default;
  std::strong_ordering order_against(const QFFormula& other) const;

  QFFormula shifted(int coord_offset) const;  // remap every term's coordinate
};

/// Assignment of an m-tuple of elements to each block.
using Assignment = std::vector<std::vector<int>>;

/// Evaluate over a one-sorted structure. Throws on arity/width mismatches,
/// unknown relation names, or out-of-range elements.
bool evaluate(const QFFormula& f, const Structure& s, const Assignment& asg);

/// Text syntax: R(x0.1, x1.0), !phi, phi & psi, phi | psi, x0.0 = x1.0,
/// parentheses; ! binds tighter than &, & tighter than |.
std::string format_formula(const QFFormula& f);
QFFormula parse_formula(std::string_view text, const Signature& sig, int block_count,
                        int block_width);

/// All normal-form formulas over a one-sorted signature with the given block
/// shape and at most `max_nodes` nodes, in deterministic order (by node count,
/// then structurally). maxNodes must be >= 1.
void enumerate_formulas(const Signature& sig, int block_count, int block_width, int max_nodes,
                        const std::function<bool(const QFFormula&)>& visit);
std::vector<QFFormula> enumerate_formulas(const Signature& sig, int block_count, int block_width,
                                          int max_nodes);

}  // namespace fraisse
