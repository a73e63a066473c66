#include "fraisse/embedding.hpp"

#include <algorithm>
#include <stdexcept>

namespace fraisse {

namespace {

// Backtracking matcher shared by enumeration and extension search. Elements
// of A are assigned in flat order; after each assignment the tuples whose
// last-assigned position is the current element are checked both ways.
struct Matcher {
  const Structure& a;
  const Structure& b;
  std::vector<std::pair<int, int>> order;              // flat position -> (sort, elt)
  std::vector<std::vector<int>> ordinal;               // [sort][elt] -> flat position
  std::vector<std::vector<std::pair<int, Tuple>>> checks;  // per flat position: (rel, tuple)

  Matcher(const Structure& a_, const Structure& b_) : a(a_), b(b_) {
    if (a.sig != b.sig) throw std::invalid_argument("embedding: signature mismatch");
    ordinal.resize(a.sizes.size());
    for (size_t s = 0; s < a.sizes.size(); ++s) {
      ordinal[s].resize(a.sizes[s]);
      for (int e = 0; e < a.sizes[s]; ++e) {
        ordinal[s][e] = static_cast<int>(order.size());
        order.emplace_back(static_cast<int>(s), e);
      }
    }
    checks.resize(order.size());
    for (int r = 0; r < a.sig.relation_count(); ++r) {
      const auto& rel = a.sig.relations[r];
      Tuple t(rel.arity, 0);
      while (true) {
        int last = -1;
        bool in_range = true;
        for (int j = 0; j < rel.arity && in_range; ++j) {
          if (a.sizes[rel.profile[j]] == 0) in_range = false;
          else last = std::max(last, ordinal[rel.profile[j]][t[j]]);
        }
        if (!in_range) break;  // some sort empty: no tuples at all
        checks[last].emplace_back(r, t);
        int j = rel.arity - 1;
        while (j >= 0) {
          if (++t[j] < a.sizes[rel.profile[j]]) break;
          t[j--] = 0;
        }
        if (j < 0) break;
      }
    }
  }

  // visit(map) for each embedding; returns false from visit to stop early
  bool search(std::vector<std::vector<int>>& map, std::vector<std::vector<char>>& used, size_t pos,
              const std::function<bool(const Embedding&)>& visit) const {
    if (pos == order.size()) return visit(Embedding{map});
    auto [s, e] = order[pos];
    const bool pinned = map[s][e] >= 0;
    for (int cand = pinned ? map[s][e] : 0; cand < b.sizes[s]; ++cand) {
      if (used[s][cand]) {
        if (pinned) break;
        continue;
      }
      map[s][e] = cand;
      bool ok = true;
      for (const auto& [r, t] : checks[pos]) {
        const auto& profile = a.sig.relations[r].profile;
        Tuple image(t.size());
        for (size_t j = 0; j < t.size(); ++j) image[j] = map[profile[j]][t[j]];
        if (a.has(r, t) != b.has(r, image)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[s][cand] = 1;
        if (!search(map, used, pos + 1, visit)) return false;
        used[s][cand] = 0;
      }
      if (pinned) break;
    }
    if (!pinned) map[s][e] = -1;
    return true;
  }

  void run(const std::vector<std::vector<int>>& pinned,
           const std::function<bool(const Embedding&)>& visit) const {
    std::vector<std::vector<int>> map(a.sizes.size());
    std::vector<std::vector<char>> used(b.sizes.size());
    for (size_t s = 0; s < a.sizes.size(); ++s) map[s].assign(a.sizes[s], -1);
    for (size_t s = 0; s < b.sizes.size(); ++s) used[s].assign(b.sizes[s], 0);
    if (!pinned.empty()) {
      for (size_t s = 0; s < pinned.size(); ++s)
        for (size_t e = 0; e < pinned[s].size(); ++e) {
          int v = pinned[s][e];
          if (v < 0) continue;
          if (v >= b.sizes[s]) throw std::invalid_argument("pinned value out of range");
          if (used[s][v]) throw std::invalid_argument("pinned values not injective");
          map[s][e] = v;
          used[s][v] = 1;
        }
      // clear the "used" marks: search() re-marks as it walks, pinned slots
      // are honoured via map entries
      for (auto& u : used) std::fill(u.begin(), u.end(), 0);
    }
    search(map, used, 0, visit);
  }
};

}  // namespace

Embedding identity_embedding(const Structure& a) {
  Embedding e;
  e.map.resize(a.sizes.size());
  for (size_t s = 0; s < a.sizes.size(); ++s) {
    e.map[s].resize(a.sizes[s]);
    for (int i = 0; i < a.sizes[s]; ++i) e.map[s][i] = i;
  }
  return e;
}

Embedding compose(const Embedding& first, const Embedding& then) {
  Embedding out;
  out.map.resize(first.map.size());
  for (size_t s = 0; s < first.map.size(); ++s) {
    out.map[s].reserve(first.map[s].size());
    for (int v : first.map[s]) out.map[s].push_back(then.map.at(s).at(v));
  }
  return out;
}

bool check_embedding(const Structure& a, const Structure& b, const Embedding& e) {
  if (a.sig != b.sig) throw std::invalid_argument("embedding: signature mismatch");
  if (e.map.size() != a.sizes.size()) return false;
  for (size_t s = 0; s < a.sizes.size(); ++s) {
    if (static_cast<int>(e.map[s].size()) != a.sizes[s]) return false;
    std::vector<char> used(b.sizes[s], 0);
    for (int v : e.map[s]) {
      if (v < 0 || v >= b.sizes[s] || used[v]) return false;
      used[v] = 1;
    }
  }
  for (int r = 0; r < a.sig.relation_count(); ++r) {
    const auto& rel = a.sig.relations[r];
    Tuple t(rel.arity, 0);
    bool any_empty = false;
    for (int j = 0; j < rel.arity; ++j)
      if (a.sizes[rel.profile[j]] == 0) any_empty = true;
    if (any_empty) continue;
    while (true) {
      Tuple image(t.size());
      for (int j = 0; j < rel.arity; ++j) image[j] = e.map[rel.profile[j]][t[j]];
      if (a.has(r, t) != b.has(r, image)) return false;
      int j = rel.arity - 1;
      while (j >= 0) {
        if (++t[j] < a.sizes[rel.profile[j]]) break;
        t[j--] = 0;
      }
      if (j < 0) break;
    }
  }
  return true;
}

std::vector<Embedding> enumerate_embeddings(const Structure& a, const Structure& b) {
  Matcher m(a, b);
  std::vector<Embedding> out;
  m.run({}, [&](const Embedding& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

std::optional<Embedding> find_embedding_extending(const Structure& a, const Structure& b,
                                                  const std::vector<std::vector<int>>& pinned) {
  Matcher m(a, b);
  std::optional<Embedding> out;
  m.run(pinned, [&](const Embedding& e) {
    out = e;
    return false;
  });
  return out;
}

bool embeds(const Structure& a, const Structure& b) {
  return find_embedding_extending(a, b, {}).has_value();
}

std::pair<Structure, Embedding> induced_with_inclusion(
    const Structure& s, const std::vector<std::vector<int>>& keep) {
  Structure sub = induced_substructure(s, keep);
  Embedding inc;
  inc.map.resize(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) inc.map[i] = keep[i];
  return {std::move(sub), std::move(inc)};
}

}  // namespace fraisse
