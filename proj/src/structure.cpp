#include "fraisse/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace fraisse {

Structure::Structure(Signature s) : Structure(std::move(s), {}) {}

Structure::Structure(Signature s, std::vector<int> sizes_) : sig(std::move(s)) {
  sizes = std::move(sizes_);
  sizes.resize(sig.sorts.size(), 0);
  rels.resize(sig.relations.size());
}

int Structure::total_size() const {
  int t = 0;
  for (int s : sizes) t += s;
  return t;
}

bool Structure::has(int rel, const Tuple& t) const { return rels.at(rel).count(t) > 0; }

void Structure::add(int rel, Tuple t) {
  const auto& r = sig.relations.at(rel);
  if (static_cast<int>(t.size()) != r.arity)
    throw std::invalid_argument("tuple length != arity for " + r.name);
  for (int i = 0; i < r.arity; ++i)
    if (t[i] < 0 || t[i] >= sizes.at(r.profile[i]))
      throw std::invalid_argument("tuple entry out of range for " + r.name);
  rels[rel].insert(std::move(t));
}

void Structure::add_orbit(int rel, const Tuple& t) {
  Tuple s = t;
  std::sort(s.begin(), s.end());
  do {
    add(rel, s);
  } while (std::next_permutation(s.begin(), s.end()));
}

void Structure::validate() const {
  sig.validate();
  if (sizes.size() != sig.sorts.size())
    throw std::invalid_argument("size vector length != sort count");
  for (int s : sizes)
    if (s < 0) throw std::invalid_argument("negative sort size");
  if (rels.size() != sig.relations.size())
    throw std::invalid_argument("relation vector length != relation count");
  for (size_t i = 0; i < rels.size(); ++i) {
    const auto& r = sig.relations[i];
    for (const auto& t : rels[i]) {
      if (static_cast<int>(t.size()) != r.arity)
        throw std::invalid_argument("tuple length != arity for " + r.name);
      for (int j = 0; j < r.arity; ++j)
        if (t[j] < 0 || t[j] >= sizes[r.profile[j]])
          throw std::invalid_argument("tuple entry out of range for " + r.name);
    }
  }
}

Structure induced_substructure(const Structure& s, const std::vector<std::vector<int>>& keep) {
  if (keep.size() != s.sizes.size())
    throw std::invalid_argument("keep vector length != sort count");
  // old index -> new index per sort, -1 when dropped
  std::vector<std::vector<int>> remap(s.sizes.size());
  Structure out(s.sig);
  for (size_t i = 0; i < keep.size(); ++i) {
    remap[i].assign(s.sizes[i], -1);
    int next = 0;
    int prev = -1;
    for (int e : keep[i]) {
      if (e <= prev || e >= s.sizes[i])
        throw std::invalid_argument("keep lists must be sorted, unique, in range");
      remap[i][e] = next++;
      prev = e;
    }
    out.sizes[i] = next;
  }
  for (size_t r = 0; r < s.rels.size(); ++r) {
    const auto& profile = s.sig.relations[r].profile;
    for (const auto& t : s.rels[r]) {
      Tuple nt(t.size());
      bool kept = true;
      for (size_t j = 0; j < t.size() && kept; ++j) {
        nt[j] = remap[profile[j]][t[j]];
        kept = nt[j] >= 0;
      }
      if (kept) out.rels[r].insert(std::move(nt));
    }
  }
  return out;
}

Structure reduct(const Structure& s, const Signature& target) {
  Structure out(target, s.sizes);
  for (int r = 0; r < target.relation_count(); ++r) {
    int src = s.sig.relation_index(target.relations[r].name);
    if (src < 0)
      throw std::invalid_argument("reduct: relation '" + target.relations[r].name + "' absent");
    if (s.sig.relations[src].arity != target.relations[r].arity)
      throw std::invalid_argument("reduct: arity mismatch on '" + target.relations[r].name + "'");
    out.rels[r] = s.rels[src];
  }
  if (target.sorts.size() != s.sig.sorts.size())
    throw std::invalid_argument("reduct: sort count mismatch");
  return out;
}

Structure apply_permutation(const Structure& s, const std::vector<std::vector<int>>& perm) {
  Structure out(s.sig, s.sizes);
  for (size_t r = 0; r < s.rels.size(); ++r) {
    const auto& profile = s.sig.relations[r].profile;
    for (const auto& t : s.rels[r]) {
      Tuple nt(t.size());
      for (size_t j = 0; j < t.size(); ++j) nt[j] = perm.at(profile[j]).at(t[j]);
      out.rels[r].insert(std::move(nt));
    }
  }
  return out;
}

Structure disjoint_union(const Structure& a, const Structure& b) {
  if (a.sig != b.sig) throw std::invalid_argument("disjoint_union: signature mismatch");
  Structure out(a.sig, a.sizes);
  for (size_t i = 0; i < out.sizes.size(); ++i) out.sizes[i] += b.sizes[i];
  for (size_t r = 0; r < a.rels.size(); ++r) {
    out.rels[r] = a.rels[r];
    const auto& profile = a.sig.relations[r].profile;
    for (const auto& t : b.rels[r]) {
      Tuple nt(t.size());
      for (size_t j = 0; j < t.size(); ++j) nt[j] = t[j] + a.sizes[profile[j]];
      out.rels[r].insert(std::move(nt));
    }
  }
  return out;
}

}  // namespace fraisse
