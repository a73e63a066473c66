#pragma once

#include <string>
#include <vector>

#include "fraisse/class_spec.hpp"
#include "fraisse/encodings.hpp"

namespace fraisse {

/// Named class constructors. Accepted names:
///   pure_sets            no relations
///   LO                   one strict linear order
///   MO[k]                k linear orders (MO[1] is LO itself)
///   H[r]                 r-uniform hypergraphs
///   H[r,k]               r-uniform hypergraphs with no complete k-set, k > r
///   Hstar[r]             r-partite r-uniform: unary partition + transversal edges
///   society[P/2,Q/3]     named symmetric relations of the listed arities >= 2
///   J[p]                 (p+1)-sorted single relation across all sorts
///   ordered[<name>]      order expansion of another catalog class
///   max_edges[c]         graphs with at most c edges (toy, not amalgamation-friendly)
///   @path/to/file.cls    textual class file
ClassSpec get_class(const std::string& name);

/// Order-property witness registered for a class (H[r], H[r,k], LO, MO[k]).
/// Throws std::invalid_argument when the class has none.
OrderWitness op_witness(const std::string& name);
bool has_op_witness(const std::string& name);

std::vector<std::string> catalog_names();

/// One-line textual class form:
///   class <name> sig <literal> [builtin <catalog name>] [forbid <file>...]
/// Without a builtin the class is the free hereditary class over the
/// signature; forbidden-structure paths resolve against `base_dir`.
ClassSpec parse_class_line(std::string_view line, const std::string& base_dir);
ClassSpec load_class_file(const std::string& path);
std::string class_line(const ClassSpec& k);

}  // namespace fraisse
