#pragma once

#include <iosfwd>
#include <string>

#include "fraisse/structure.hpp"

namespace fraisse {

/// Text format, one structure per file:
///
///   # optional comments
///   sorts: V=4 W=2
///   rels: E/2:V,V P/1:W
///   E: (0,1) (1,0)
///   P: (0)
///
/// Relation lines may be omitted (empty relation) and may repeat (unioned).
/// Parse errors carry the 1-based line number.
std::string serialize_structure(const Structure& s);
Structure parse_structure(std::string_view text);
Structure load_structure(const std::string& path);
void save_structure(const Structure& s, const std::string& path);

}  // namespace fraisse
