#include "fraisse/signature.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fraisse {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (c == ':' || c == '/' || c == '(' || c == ')' || c == ',' || c == '#') return false;
  }
  return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

Signature::Signature(std::vector<std::string> sorts_, std::vector<Relation> rels)
    : sorts(std::move(sorts_)), relations(std::move(rels)) {
  validate();
}

int Signature::sort_index(std::string_view name) const {
  for (size_t i = 0; i < sorts.size(); ++i)
    if (sorts[i] == name) return static_cast<int>(i);
  return -1;
}

int Signature::relation_index(std::string_view name) const {
  for (size_t i = 0; i < relations.size(); ++i)
    if (relations[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::max_arity() const {
  int m = 0;
  for (const auto& r : relations) m = std::max(m, r.arity);
  return m;
}

void Signature::validate() const {
  if (sorts.empty()) throw std::invalid_argument("signature needs at least one sort");
  std::set<std::string_view> seen;
  for (const auto& s : sorts) {
    if (!valid_name(s)) throw std::invalid_argument("bad sort name '" + s + "'");
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate sort '" + s + "'");
  }
  seen.clear();
  for (const auto& r : relations) {
    if (!valid_name(r.name)) throw std::invalid_argument("bad relation name '" + r.name + "'");
    if (!seen.insert(r.name).second)
      throw std::invalid_argument("duplicate relation '" + r.name + "'");
    if (r.arity < 1) throw std::invalid_argument("relation '" + r.name + "' needs arity >= 1");
    if (static_cast<int>(r.profile.size()) != r.arity)
      throw std::invalid_argument("relation '" + r.name + "' profile length != arity");
    for (int s : r.profile)
      if (s < 0 || s >= sort_count())
        throw std::invalid_argument("relation '" + r.name + "' profile sort out of range");
  }
}

std::string Signature::to_literal() const {
  std::ostringstream os;
  for (size_t i = 0; i < sorts.size(); ++i) {
    if (i) os << ',';
    os << sorts[i];
  }
  os << ':';
  for (size_t i = 0; i < relations.size(); ++i) {
    const auto& r = relations[i];
    if (i) os << ',';
    os << r.name << '/' << r.arity << '(';
    for (int j = 0; j < r.arity; ++j) {
      if (j) os << ',';
      os << sorts[r.profile[j]];
    }
    os << ')';
  }
  return os.str();
}

Signature Signature::from_literal(std::string_view text) {
  size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("signature literal needs ':' after sorts");
  Signature sig;
  for (auto part : split(text.substr(0, colon), ','))
    sig.sorts.emplace_back(part);

  std::string_view rest = text.substr(colon + 1);
  // relations are comma-separated, but profiles contain commas too; split on
  // commas at paren depth zero
  size_t start = 0;
  int depth = 0;
  std::vector<std::string_view> items;
  for (size_t i = 0; i <= rest.size(); ++i) {
    if (i == rest.size() || (rest[i] == ',' && depth == 0)) {
      if (i > start) items.push_back(rest.substr(start, i - start));
      start = i + 1;
    } else if (rest[i] == '(') {
      ++depth;
    } else if (rest[i] == ')') {
      --depth;
    }
  }
  for (auto item : items) {
    size_t slash = item.find('/');
    size_t paren = item.find('(');
    if (slash == std::string_view::npos || paren == std::string_view::npos || item.back() != ')')
      throw std::invalid_argument("bad relation item '" + std::string(item) + "'");
    Signature::Relation r;
    r.name = std::string(item.substr(0, slash));
    r.arity = std::stoi(std::string(item.substr(slash + 1, paren - slash - 1)));
    auto profile = item.substr(paren + 1, item.size() - paren - 2);
    for (auto sname : split(profile, ',')) {
      int idx = sig.sort_index(sname);
      if (idx < 0)
        throw std::invalid_argument("unknown sort '" + std::string(sname) + "' in profile");
      r.profile.push_back(idx);
    }
    sig.relations.push_back(std::move(r));
  }
  sig.validate();
  return sig;
}

Signature make_one_sorted(std::string sort, std::vector<std::pair<std::string, int>> rels) {
  Signature sig;
  sig.sorts.push_back(std::move(sort));
  for (auto& [name, arity] : rels) {
    Signature::Relation r;
    r.name = std::move(name);
    r.arity = arity;
    r.profile.assign(arity, 0);
    sig.relations.push_back(std::move(r));
  }
  sig.validate();
  return sig;
}

}  // namespace fraisse
