#include "fraisse/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace fraisse {

namespace {

void append_int(std::vector<std::uint8_t>& out, int v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((static_cast<unsigned>(v) >> shift) & 0xff));
}

struct Canonizer {
  const Structure& s;
  int total = 0;
  std::vector<int> offsets;  // flat id of (sort, elt) = offsets[sort] + elt
  std::vector<int> sort_of;
  std::vector<std::vector<Tuple>> tuples;  // per relation, flat element ids
  // incidences[e] = (relation, position, tuple index)
  std::vector<std::vector<std::tuple<int, int, int>>> incidences;

  std::vector<std::uint8_t> best;
  std::vector<std::vector<int>> best_perm;
  bool have_best = false;

  explicit Canonizer(const Structure& str) : s(str) {
    offsets.resize(s.sizes.size());
    for (size_t i = 0; i < s.sizes.size(); ++i) {
      offsets[i] = total;
      total += s.sizes[i];
      for (int e = 0; e < s.sizes[i]; ++e) sort_of.push_back(static_cast<int>(i));
    }
    tuples.resize(s.rels.size());
    incidences.resize(total);
    for (size_t r = 0; r < s.rels.size(); ++r) {
      const auto& profile = s.sig.relations[r].profile;
      for (const auto& t : s.rels[r]) {
        Tuple flat(t.size());
        for (size_t j = 0; j < t.size(); ++j) flat[j] = offsets[profile[j]] + t[j];
        int idx = static_cast<int>(tuples[r].size());
        for (size_t j = 0; j < flat.size(); ++j)
          incidences[flat[j]].emplace_back(static_cast<int>(r), static_cast<int>(j), idx);
        tuples[r].push_back(std::move(flat));
      }
    }
  }

  int class_count(const std::vector<int>& color) const {
    std::vector<int> c = color;
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
  }

  // one-step colour refinement to a fixed point; colours are normalised ranks
  std::vector<int> refine(std::vector<int> color) const {
    int classes = class_count(color);
    while (true) {
      std::vector<std::pair<std::vector<int>, int>> keyed(total);
      for (int e = 0; e < total; ++e) {
        std::vector<std::vector<int>> sig;
        sig.reserve(incidences[e].size());
        for (auto [r, p, idx] : incidences[e]) {
          std::vector<int> item{r, p};
          for (int x : tuples[r][idx]) item.push_back(color[x]);
          sig.push_back(std::move(item));
        }
        std::sort(sig.begin(), sig.end());
        std::vector<int> key{color[e]};
        for (const auto& item : sig) {
          key.push_back(-2);  // separator; colours are >= -1
          key.insert(key.end(), item.begin(), item.end());
        }
        keyed[e] = {std::move(key), e};
      }
      std::vector<std::pair<std::vector<int>, int>> sorted = keyed;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> next(total);
      int rank = -1;
      for (size_t i = 0; i < sorted.size(); ++i) {
        if (i == 0 || sorted[i].first != sorted[i - 1].first) ++rank;
        next[sorted[i].second] = rank;
      }
      int next_classes = rank + 1;
      if (next_classes == classes) return next;
      classes = next_classes;
      color = std::move(next);
    }
  }

  void leaf(const std::vector<int>& color) {
    std::vector<std::vector<int>> perm(s.sizes.size());
    for (size_t i = 0; i < s.sizes.size(); ++i) {
      std::vector<int> order(s.sizes[i]);
      for (int e = 0; e < s.sizes[i]; ++e) order[e] = e;
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return color[offsets[i] + a] < color[offsets[i] + b]; });
      perm[i].resize(s.sizes[i]);
      for (int rank = 0; rank < s.sizes[i]; ++rank) perm[i][order[rank]] = rank;
    }
    Structure relabeled = apply_permutation(s, perm);
    std::vector<std::uint8_t> code;
    append_int(code, static_cast<int>(relabeled.sizes.size()));
    for (int sz : relabeled.sizes) append_int(code, sz);
    for (const auto& rel : relabeled.rels) {
      append_int(code, static_cast<int>(rel.size()));
      for (const auto& t : rel)
        for (int x : t) append_int(code, x);
    }
    if (!have_best || code < best) {
      best = std::move(code);
      best_perm = std::move(perm);
      have_best = true;
    }
  }

  void descend(std::vector<int> color) {
    color = refine(color);
    int target = -1;
    std::map<int, std::vector<int>> classes;
    for (int e = 0; e < total; ++e) classes[color[e]].push_back(e);
    for (const auto& [c, members] : classes) {
      if (members.size() > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) {
      leaf(color);
      return;
    }
    for (int e : classes[target]) {
      std::vector<int> next = color;
      next[e] = -1;  // unique minimum, re-ranked by refine
      descend(std::move(next));
    }
  }

  void run() {
    std::vector<int> color(total);
    for (int e = 0; e < total; ++e) color[e] = sort_of[e];
    if (total == 0) {
      leaf(color);
      return;
    }
    descend(std::move(color));
  }
};

}  // namespace

std::string CanonicalCode::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

CanonicalCode canonical_form(const Structure& s) {
  Canonizer c(s);
  c.run();
  return CanonicalCode{std::move(c.best)};
}

std::vector<std::vector<int>> canonical_labeling(const Structure& s) {
  Canonizer c(s);
  c.run();
  return c.best_perm;
}

bool are_isomorphic(const Structure& a, const Structure& b) {
  if (a.sig != b.sig || a.sizes != b.sizes) return false;
  for (size_t r = 0; r < a.rels.size(); ++r)
    if (a.rels[r].size() != b.rels[r].size()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace fraisse
