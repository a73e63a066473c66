#pragma once

#include <string>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

/// Hereditarily finite set in canonical form: children sorted and
/// deduplicated under a fixed total order, recursively.
class HFSet {
 public:
  HFSet() = default;                          // empty set
  explicit HFSet(std::vector<HFSet> members); // normalizes

  const std::vector<HFSet>& members() const { return members_; }
  bool contains(const HFSet& x) const;
  bool is_empty() const { return members_.empty(); }

  static HFSet numeral(int n);                   // von Neumann
  static HFSet pair(const HFSet& a, const HFSet& b);  // Kuratowski {{a},{a,b}}
  /// Right-nested tuple: <> = empty set, <a> = a, <a,b,...> = pair(a, <b,...>).
  static HFSet tuple(const std::vector<HFSet>& parts);

  std::strong_ordering operator<=>(const HFSet&) const;
  bool operator==(const HFSet&) const;

  std::string to_string() const;  // "{...}" with sorted members

 private:
  std::vector<HFSet> members_;
};

/// Set-theoretic encoding of a one-sorted structure B with relations
/// R_0..R_{n-1}: element b gets the components
///   u(b) = (numeral(b), enc(R_0), ..., enc(R_{n-1}))
/// where enc(R_i) collects the tuple encodings of R_i's rows. The defining
/// formulas say "the tuple of first components lies in component i+1".
struct HFEncoding {
  Structure source;
  std::vector<std::vector<HFSet>> components;  // per element: n+1 components
  std::vector<HFSet> encoded;                  // per element: tuple of components
  int block_width() const { return static_cast<int>(source.sig.relations.size()) + 1; }
};

HFEncoding hf_encode(const Structure& b);

/// Re-checks every defining membership biconditional over all tuples of the
/// source (repeats included).
bool hf_check(const HFEncoding& e, std::string* why = nullptr);

}  // namespace fraisse
