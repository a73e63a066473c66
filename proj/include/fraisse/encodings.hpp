#pragma once

#include <string>
#include <vector>

#include "fraisse/class_spec.hpp"
#include "fraisse/interpretation.hpp"

namespace fraisse {

/// Hypergraph arity lift: embeds an r1-uniform hypergraph into an r2-uniform
/// one (r2 > r1) on |B| + (r2 - r1) vertices, with block width r2 - r1 + 1.
/// B must be a symmetric irreflexive r1-ary structure.
EncodingResult lift_arity(const Structure& b, int r2);

/// Clique removal: encodes an arbitrary r-uniform hypergraph B into a
/// K_k(r)-free one on |B|*(k-1) vertices (k > r), theta the conjunction of
/// R-atoms over all injections of arities into levels.
EncodingResult remove_cliques(const Structure& b, int k);

/// Society encoding: a structure whose relations are all symmetric
/// irreflexive of arity >= 2 goes into a single max-arity symmetric relation
/// on |C| * (sum of arities) vertices.
EncodingResult encode_society(const Structure& c);

/// A witness for coding orders into class K: block width m, a two-block
/// formula psi over K's signature, and a generator producing, for each n, a
/// member W of K with tuples aa_0..aa_{n-1} such that psi(aa_i; aa_j) holds
/// iff i < j.
struct OrderWitness {
  int m = 1;
  QFFormula psi;
  std::function<std::pair<Structure, BlockMap>(int)> generate;

  /// Re-checks the defining biconditional at size n.
  bool validate(int n, std::string* why = nullptr) const;
};

/// Encodes a linearly ordered member B of K^< back into plain K using an
/// order witness: head coordinate carries the K-relations, tail coordinates
/// carry the order via psi. B's signature must be K's plus a linear order.
EncodingResult code_order(const ClassSpec& k, const Structure& b, const OrderWitness& w);

/// K^< : adds a fresh linear order "<" to the signature and constraints.
ClassSpec order_expansion(const ClassSpec& k);

/// Product structure over one-sorted factors with pairwise disjoint relation
/// names: universe is the row-major product, each relation holds when it
/// holds on the respective coordinate projections.
Structure product_structure(const std::vector<Structure>& factors);

/// In-class join of two members: disjoint universes, within-part relations
/// kept, cross relations completed deterministically (empty for free and
/// symmetric relations, first-part-below-second for linear orders).
Structure class_join(const ClassSpec& k, const Structure& s1, const Structure& s2);

struct ChainGapResult {
  long long n = 0;          // minimal N with C(N*m, r1) < C(N, r2)
  std::string lhs, rhs;     // the two binomials at N, exact decimal
};

/// Minimal N where m-fold blowup loses to higher arity: counts r1-subsets of
/// an (N*m)-set against r2-subsets of an N-set, exact integer arithmetic.
ChainGapResult chain_gap(int r1, int r2, int m);

}  // namespace fraisse
