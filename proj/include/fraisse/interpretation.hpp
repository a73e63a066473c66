#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraisse/class_spec.hpp"
#include "fraisse/formula.hpp"

namespace fraisse {

/// Quantifier-free interpretation scheme of width m: one formula per source
/// relation, each over block_count = arity blocks of width m in the target
/// signature.
struct Interpretation {
  Signature from;
  Signature to;
  int m = 1;
  std::vector<QFFormula> thetas;  // aligned with from.relations

  void validate() const;
};

/// Block map witnessing an interpretation on a concrete pair (B, C): element
/// b of the one-sorted source goes to the m-tuple map[b] of target elements.
using BlockMap = std::vector<std::vector<int>>;

/// Checks width, injectivity, ranges, and the biconditional
///   B |= R(b0..b_{r-1})  <=>  C |= theta_R(u(b0),...,u(b_{r-1}))
/// over every tuple of B (repeats included) for every source relation.
bool verify_witness(const Interpretation& interp, const Structure& b, const Structure& c,
                    const BlockMap& u, std::string* why = nullptr);

/// Target structure along with the block map that produced it; the encoding
/// operations return these and every producer re-verifies before returning.
struct EncodingResult {
  Interpretation interp;
  Structure source;
  Structure target;
  BlockMap map;
};

struct InterpSearchResult {
  enum class Status { Found, Absent, BudgetExceeded };
  Status status = Status::Absent;
  std::optional<Interpretation> interp;
  // per source member of size 1..n_max, a verified witness for the found interpretation
  std::vector<EncodingResult> witnesses;
  long long verify_calls = 0;
  std::string detail;
};

/// Searches formulas theta (one per K1-relation, node budget max_nodes) and,
/// for each source B in K1 of size <= n_max, a target C in K2 with
/// |C| <= m*|B| plus a block map u making the biconditional true. The size
/// cap is complete: any witness restricts to the coordinates actually used.
/// `max_verify` caps the total number of (C, u) candidates considered.
InterpSearchResult search_interpretation(const ClassSpec& k1, const ClassSpec& k2, int m,
                                         int max_nodes, int n_max,
                                         long long max_verify = 400000000);

/// Interpretation file format:
///   interp m=<m> from=<sig literal> to=<sig literal>
///   theta <R>: <formula>
std::string serialize_interpretation(const Interpretation& i);
Interpretation parse_interpretation(std::string_view text);
Interpretation load_interpretation(const std::string& path);
void save_interpretation(const Interpretation& i, const std::string& path);

/// Encoding file: target structure followed by "map: b -> (c0,...,cm-1)"
/// lines. The interpretation travels separately.
std::string serialize_encoding(const Structure& target, const BlockMap& map);
std::pair<Structure, BlockMap> parse_encoding(std::string_view text);

}  // namespace fraisse
