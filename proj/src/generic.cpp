#include "fraisse/generic.hpp"

#include <cmath>
#include <sstream>

#include "fraisse/canonical.hpp"

namespace fraisse {

namespace {

// all per-sort subsets of b's universe, cartesian over sorts, bitmask order
void for_each_subset(const Structure& b,
                     const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
  const int sorts = static_cast<int>(b.sizes.size());
  std::vector<unsigned> mask(sorts, 0);
  while (true) {
    std::vector<std::vector<int>> keep(sorts);
    for (int s = 0; s < sorts; ++s)
      for (int e = 0; e < b.sizes[s]; ++e)
        if (mask[s] & (1u << e)) keep[s].push_back(e);
    if (!visit(keep)) return;
    int s = sorts - 1;
    while (s >= 0) {
      if (++mask[s] < (1u << b.sizes[s])) break;
      mask[s--] = 0;
    }
    if (s < 0) return;
  }
}

}  // namespace

ExtensionReport verify_extension_property(const Structure& s, const ClassSpec& k, int level) {
  if (level < 0) throw std::invalid_argument("extension level must be >= 0");
  if (!is_member(k, s))
    throw std::invalid_argument("extension property: structure is not a member of " + k.name);

  ExtensionReport report;
  report.k = level;

  for (int size = 1; size <= level + 1 && report.holds; ++size) {
    for (const auto& b : members_of_size(k, size)) {
      bool keep_going = true;
      for_each_subset(b, [&](const std::vector<std::vector<int>>& keep) {
        auto [a, inc] = induced_with_inclusion(b, keep);
        for (const auto& f : enumerate_embeddings(a, s)) {
          std::vector<std::vector<int>> pinned(b.sizes.size());
          for (size_t srt = 0; srt < b.sizes.size(); ++srt) {
            pinned[srt].assign(b.sizes[srt], -1);
            for (size_t i = 0; i < keep[srt].size(); ++i)
              pinned[srt][keep[srt][i]] = f.map[srt][i];
          }
          if (!find_embedding_extending(b, s, pinned)) {
            report.holds = false;
            report.b = b;
            report.subset = keep;
            report.f = f;
            std::ostringstream os;
            os << "no extension of a " << a.total_size() << "-element map to the "
               << b.total_size() << "-element member";
            report.detail = os.str();
            keep_going = false;
            return false;
          }
        }
        return true;
      });
      if (!keep_going) break;
    }
    if (!report.holds) break;
  }
  return report;
}

GenericResult build_generic(const ClassSpec& k, int level, int budget) {
  if (level < 0) throw std::invalid_argument("extension level must be >= 0");
  GenericResult result;

  if (k.generic_candidates) {
    for (int i = 0;; ++i) {
      auto cand = k.generic_candidates(i);
      if (!cand) break;
      if (cand->total_size() > budget) {
        result.status = GenericResult::Status::BudgetExceeded;
        result.detail = "registered candidates exceed the size budget";
        return result;
      }
      if (!is_member(k, *cand)) continue;
      if (verify_extension_property(*cand, k, level).holds) {
        result.model = std::move(*cand);
        result.detail = "registered candidate verified";
        return result;
      }
    }
  }

  // greedy closure: satisfy the first unmet requirement by gluing the member
  // onto the current model over the mapped substructure
  Structure s(k.sig);
  while (true) {
    ExtensionReport rep = verify_extension_property(s, k, level);
    if (rep.holds) {
      result.model = std::move(s);
      result.detail = "greedy closure";
      return result;
    }
    auto [a, inc] = induced_with_inclusion(*rep.b, rep.subset);
    std::optional<Amalgam> glued;
    try {
      glued = amalgamate_disjoint(k, a, s, *rep.b, *rep.f, inc);
    } catch (const std::runtime_error& e) {
      result.status = GenericResult::Status::BudgetExceeded;
      result.detail = e.what();
      return result;
    }
    if (!glued) {
      result.status = GenericResult::Status::BudgetExceeded;
      result.detail = "greedy closure stuck: no disjoint amalgam for the next requirement";
      return result;
    }
    s = std::move(glued->c);
    if (s.total_size() > budget) {
      result.status = GenericResult::Status::BudgetExceeded;
      std::ostringstream os;
      os << "greedy closure exceeded the size budget (" << budget << ")";
      result.detail = os.str();
      return result;
    }
  }
}

RamseyResult ramsey_witness_search(const ClassSpec& k, const Structure& a, const Structure& b,
                                   int colors, int max_size, int budget_bits) {
  if (colors < 1) throw std::invalid_argument("need at least one colour");
  if (!is_member(k, a) || !is_member(k, b))
    throw std::invalid_argument("ramsey search: A and B must be members of " + k.name);

  RamseyResult result;
  const double bits_per_emb = std::log2(static_cast<double>(colors));

  for (int size = std::max(a.total_size(), b.total_size()); size <= max_size; ++size) {
    for (const auto& c : members_of_size(k, size)) {
      const auto embs_a = enumerate_embeddings(a, c);
      const int e = static_cast<int>(embs_a.size());
      if (colors > 1 && e * bits_per_emb > static_cast<double>(budget_bits)) {
        ++result.candidates_skipped;
        continue;
      }
      ++result.candidates_checked;

      // per copy of B in C: which embeddings of A land inside it
      std::vector<std::vector<int>> masks;
      for (const auto& u : enumerate_embeddings(b, c)) {
        std::vector<std::vector<char>> in_image(c.sizes.size());
        for (size_t s = 0; s < c.sizes.size(); ++s) {
          in_image[s].assign(c.sizes[s], 0);
          for (int v : u.map[s]) in_image[s][v] = 1;
        }
        std::vector<int> mask;
        for (int i = 0; i < e; ++i) {
          bool inside = true;
          for (size_t s = 0; s < c.sizes.size() && inside; ++s)
            for (int v : embs_a[i].map[s])
              if (!in_image[s][v]) {
                inside = false;
                break;
              }
          if (inside) mask.push_back(i);
        }
        masks.push_back(std::move(mask));
      }

      std::vector<int> col(e, 0);
      bool works = true;
      while (works) {
        bool mono_found = false;
        for (const auto& mask : masks) {
          bool mono = true;
          for (size_t i = 1; i < mask.size(); ++i)
            if (col[mask[i]] != col[mask[0]]) {
              mono = false;
              break;
            }
          if (mono) {
            mono_found = true;
            break;
          }
        }
        if (!mono_found) {
          works = false;
          break;
        }
        int i = e - 1;
        while (i >= 0) {
          if (++col[i] < colors) break;
          col[i--] = 0;
        }
        if (i < 0) break;  // all colourings survived
      }
      if (works) {
        result.status = RamseyResult::Status::Found;
        result.c = c;
        return result;
      }
    }
  }
  result.status = result.candidates_skipped > 0 ? RamseyResult::Status::BudgetExceeded
                                                : RamseyResult::Status::Absent;
  result.detail = result.candidates_skipped > 0
                      ? "some candidates exceeded the colouring budget"
                      : "no witness within the size bound";
  return result;
}

}  // namespace fraisse
