#include "fraisse/one_sort.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "fraisse/structure_io.hpp"

namespace fraisse {

std::string TypeDescriptor::to_text(const Signature& original) const {
  std::ostringstream os;
  os << "sorts=";
  for (size_t i = 0; i < sorts.size(); ++i) {
    if (i) os << ',';
    os << original.sorts[sorts[i]];
  }
  os << " atoms=";
  for (size_t a = 0; a < atoms.size(); ++a) {
    if (a) os << ';';
    os << original.relations[atoms[a].first].name << '(';
    for (size_t j = 0; j < atoms[a].second.size(); ++j) {
      if (j) os << ',';
      os << atoms[a].second[j];
    }
    os << ')';
  }
  return os.str();
}

TypeDescriptor TypeDescriptor::from_text(std::string_view text, const Signature& original) {
  TypeDescriptor out;
  size_t spos = text.find("sorts=");
  size_t apos = text.find(" atoms=");
  if (spos == std::string_view::npos || apos == std::string_view::npos || apos < spos)
    throw std::runtime_error("bad type descriptor '" + std::string(text) + "'");
  std::string sorts_part(text.substr(spos + 6, apos - spos - 6));
  std::string atoms_part(text.substr(apos + 7));
  if (!sorts_part.empty()) {
    std::istringstream ss(sorts_part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int s = original.sort_index(item);
      if (s < 0) throw std::runtime_error("unknown sort '" + item + "' in type descriptor");
      out.sorts.push_back(s);
    }
  }
  out.arity = static_cast<int>(out.sorts.size());
  if (out.arity == 0) throw std::runtime_error("type descriptor needs at least one sort");
  if (!atoms_part.empty()) {
    std::istringstream as(atoms_part);
    std::string atom;
    while (std::getline(as, atom, ';')) {
      size_t open = atom.find('('), close = atom.rfind(')');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::runtime_error("bad atom '" + atom + "' in type descriptor");
      int rel = original.relation_index(atom.substr(0, open));
      if (rel < 0) throw std::runtime_error("unknown relation in type descriptor atom '" + atom + "'");
      std::vector<int> pm;
      std::istringstream ps(atom.substr(open + 1, close - open - 1));
      std::string item;
      while (std::getline(ps, item, ',')) pm.push_back(std::stoi(item));
      if (static_cast<int>(pm.size()) != original.relations[rel].arity)
        throw std::runtime_error("atom position map width mismatch in type descriptor");
      for (size_t j = 0; j < pm.size(); ++j) {
        if (pm[j] < 0 || pm[j] >= out.arity)
          throw std::runtime_error("atom position out of range in type descriptor");
        if (original.relations[rel].profile[j] != out.sorts[pm[j]])
          throw std::runtime_error("atom position map violates sort profile");
      }
      out.atoms.emplace_back(rel, std::move(pm));
    }
  }
  return out;
}

namespace {

TypeDescriptor descriptor_of(const Structure& b, const std::vector<int>& sort_of,
                             const std::vector<int>& index_of, const Tuple& flat) {
  TypeDescriptor d;
  d.arity = static_cast<int>(flat.size());
  for (int x : flat) d.sorts.push_back(sort_of[x]);
  for (int rel = 0; rel < b.sig.relation_count(); ++rel) {
    const auto& r = b.sig.relations[rel];
    std::vector<int> pm(r.arity, 0);
    while (true) {
      bool compatible = true;
      for (int j = 0; j < r.arity && compatible; ++j)
        compatible = d.sorts[pm[j]] == r.profile[j];
      if (compatible) {
        Tuple args(r.arity);
        for (int j = 0; j < r.arity; ++j) args[j] = index_of[flat[pm[j]]];
        if (b.rels[rel].count(args)) d.atoms.emplace_back(rel, pm);
      }
      int j = r.arity - 1;
      while (j >= 0) {
        if (++pm[j] < d.arity) break;
        pm[j--] = 0;
      }
      if (j < 0) break;
    }
  }
  return d;
}

}  // namespace

OneSortResult one_sort_forward(const Structure& b) {
  b.validate();
  OneSortResult out;
  out.original = b.sig;
  out.sort_offsets.resize(b.sig.sort_count());
  int total = 0;
  for (int s = 0; s < b.sig.sort_count(); ++s) {
    out.sort_offsets[s] = total;
    total += b.sizes[s];
  }
  std::vector<int> sort_of(total), index_of(total);
  for (int s = 0; s < b.sig.sort_count(); ++s)
    for (int x = 0; x < b.sizes[s]; ++x) {
      sort_of[out.sort_offsets[s] + x] = s;
      index_of[out.sort_offsets[s] + x] = x;
    }

  const int rmax = std::max(1, b.sig.max_arity());
  std::map<TypeDescriptor, std::set<Tuple>> realized;
  for (int r = 1; r <= std::min(rmax, total); ++r) {
    Tuple flat(r, 0);
    while (true) {
      std::set<int> distinct(flat.begin(), flat.end());
      if (static_cast<int>(distinct.size()) == r)
        realized[descriptor_of(b, sort_of, index_of, flat)].insert(flat);
      int j = r - 1;
      while (j >= 0) {
        if (++flat[j] < total) break;
        flat[j--] = 0;
      }
      if (j < 0) break;
    }
  }

  out.derived.sig.sorts = {"U"};
  int t = 0;
  for (auto& [desc, tuples] : realized) {
    out.derived.sig.relations.push_back(
        {"T" + std::to_string(t++), desc.arity, std::vector<int>(desc.arity, 0)});
    out.types.push_back(desc);
    out.derived.rels.push_back(tuples);
  }
  out.derived.sizes = {total};
  return out;
}

OneSortBackResult one_sort_back(const Structure& c, const Signature& original,
                                const std::vector<TypeDescriptor>& types) {
  c.validate();
  original.validate();
  if (!c.sig.one_sorted()) throw std::invalid_argument("one_sort_back: structure must be one-sorted");
  if (c.sig.relations.size() != types.size())
    throw std::invalid_argument("one_sort_back: need one type descriptor per relation");
  for (size_t i = 0; i < types.size(); ++i)
    if (types[i].arity != c.sig.relations[i].arity)
      throw std::invalid_argument("one_sort_back: descriptor arity mismatch for '" +
                                  c.sig.relations[i].name + "'");

  const int total = c.sizes[0];
  OneSortBackResult out;
  out.sort_of.assign(total, -1);
  for (size_t i = 0; i < types.size(); ++i) {
    if (types[i].arity != 1) continue;
    for (const auto& t : c.rels[i]) {
      if (out.sort_of[t[0]] >= 0 && out.sort_of[t[0]] != types[i].sorts[0])
        throw std::invalid_argument("one_sort_back: unary types do not partition the universe");
      out.sort_of[t[0]] = types[i].sorts[0];
    }
  }
  for (int x = 0; x < total; ++x)
    if (out.sort_of[x] < 0)
      throw std::invalid_argument("one_sort_back: unary types do not partition the universe");

  out.index_of.assign(total, 0);
  std::vector<int> counts(original.sort_count(), 0);
  for (int x = 0; x < total; ++x) out.index_of[x] = counts[out.sort_of[x]]++;

  out.original.sig = original;
  out.original.sizes = counts;
  out.original.rels.resize(original.relation_count());
  for (size_t i = 0; i < types.size(); ++i) {
    for (const auto& t : c.rels[i]) {
      std::set<int> distinct(t.begin(), t.end());
      if (distinct.size() != t.size())
        throw std::invalid_argument("one_sort_back: type relation tuple repeats an element");
      for (size_t j = 0; j < t.size(); ++j)
        if (out.sort_of[t[j]] != types[i].sorts[j])
          throw std::invalid_argument("one_sort_back: tuple element sort clashes with descriptor");
      for (const auto& [rel, pm] : types[i].atoms) {
        Tuple args(pm.size());
        for (size_t j = 0; j < pm.size(); ++j) args[j] = out.index_of[t[pm[j]]];
        out.original.rels[rel].insert(args);
      }
    }
  }
  out.original.validate();
  return out;
}

std::string serialize_one_sort(const OneSortResult& r) {
  std::ostringstream os;
  os << serialize_structure(r.derived);
  os << "origsig: " << r.original.to_literal() << '\n';
  for (size_t i = 0; i < r.types.size(); ++i)
    os << "type " << r.derived.sig.relations[i].name << ": " << r.types[i].to_text(r.original)
       << '\n';
  return os.str();
}

OneSortResult parse_one_sort(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::ostringstream structural;
  std::string origsig;
  std::map<std::string, std::string> type_lines;
  while (std::getline(is, line)) {
    std::string_view l = line;
    while (!l.empty() && std::isspace(static_cast<unsigned char>(l.front()))) l.remove_prefix(1);
    if (l.starts_with("origsig:")) {
      origsig = std::string(l.substr(8));
      continue;
    }
    if (l.starts_with("type ")) {
      l.remove_prefix(5);
      size_t colon = l.find(':');
      if (colon == std::string_view::npos)
        throw std::runtime_error("expected ':' in type line '" + line + "'");
      std::string name(l.substr(0, colon));
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
      std::string_view body = l.substr(colon + 1);
      while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front())))
        body.remove_prefix(1);
      type_lines[name] = std::string(body);
      continue;
    }
    structural << line << '\n';
  }
  if (origsig.empty()) throw std::runtime_error("missing 'origsig:' line");
  while (!origsig.empty() && std::isspace(static_cast<unsigned char>(origsig.front())))
    origsig.erase(origsig.begin());

  OneSortResult out;
  out.original = Signature::from_literal(origsig);
  out.derived = parse_structure(structural.str());
  for (const auto& rel : out.derived.sig.relations) {
    auto it = type_lines.find(rel.name);
    if (it == type_lines.end())
      throw std::runtime_error("missing type descriptor for relation '" + rel.name + "'");
    out.types.push_back(TypeDescriptor::from_text(it->second, out.original));
  }
  return out;
}

}  // namespace fraisse
