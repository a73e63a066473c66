#include "fraisse/encodings.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>

namespace fraisse {

namespace {

// expects a one-sorted structure with exactly one relation, symmetric and
// irreflexive; returns its arity
int hypergraph_arity(const Structure& b, const char* who) {
  std::string ctx(who);
  if (!b.sig.one_sorted() || b.sig.relation_count() != 1)
    throw std::invalid_argument(ctx + ": expected a one-sorted single-relation structure");
  const int r = b.sig.relations[0].arity;
  if (r < 2) throw std::invalid_argument(ctx + ": relation arity must be >= 2");
  for (const auto& t : b.rels[0]) {
    std::set<int> distinct(t.begin(), t.end());
    if (static_cast<int>(distinct.size()) != r)
      throw std::invalid_argument(ctx + ": relation is not irreflexive");
    Tuple p = t;
    std::sort(p.begin(), p.end());
    do {
      if (!b.rels[0].count(p)) throw std::invalid_argument(ctx + ": relation is not symmetric");
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return r;
}

void self_verify(EncodingResult& out, const char* who) {
  std::string why;
  if (!verify_witness(out.interp, out.source, out.target, out.map, &why))
    throw std::logic_error(std::string(who) + ": construction failed self-check: " + why);
}

}  // namespace

EncodingResult lift_arity(const Structure& b, int r2) {
  b.validate();
  const int r1 = hypergraph_arity(b, "lift_arity");
  if (r2 <= r1) throw std::invalid_argument("lift_arity: target arity must exceed source arity");
  const int d = r2 - r1;
  const int n = b.sizes[0];
  const std::string& rel = b.sig.relations[0].name;
  const std::string& sort = b.sig.sorts[0];

  EncodingResult out;
  out.source = b;
  out.target.sig = make_one_sorted(sort, {{rel, r2}});
  out.target.sizes = {n + d};
  out.target.rels.resize(1);
  for (const auto& t : b.rels[0]) {
    Tuple lifted = t;
    for (int j = 0; j < d; ++j) lifted.push_back(n + j);
    out.target.add_orbit(0, lifted);
  }

  out.map.resize(n);
  for (int x = 0; x < n; ++x) {
    out.map[x].push_back(x);
    for (int j = 0; j < d; ++j) out.map[x].push_back(n + j);
  }

  out.interp.from = b.sig;
  out.interp.to = out.target.sig;
  out.interp.m = d + 1;
  std::vector<Term> args;
  for (int t = 0; t < r1; ++t) args.push_back({t, 0});
  for (int j = 1; j <= d; ++j) args.push_back({0, j});
  out.interp.thetas.push_back(QFFormula::atom(rel, std::move(args)));
  self_verify(out, "lift_arity");
  return out;
}

EncodingResult remove_cliques(const Structure& b, int k) {
  b.validate();
  const int r = hypergraph_arity(b, "remove_cliques");
  if (k <= r) throw std::invalid_argument("remove_cliques: clique size must exceed arity");
  const int levels = k - 1;
  const int n = b.sizes[0];
  const std::string& rel = b.sig.relations[0].name;
  auto idx = [&](int x, int level) { return x * levels + level; };

  EncodingResult out;
  out.source = b;
  out.target.sig = b.sig;
  out.target.sizes = {n * levels};
  out.target.rels.resize(1);
  for (const auto& t : b.rels[0]) {
    std::vector<int> lv(r, 0);
    while (true) {
      std::set<int> distinct(lv.begin(), lv.end());
      if (static_cast<int>(distinct.size()) == r) {
        Tuple img(r);
        for (int j = 0; j < r; ++j) img[j] = idx(t[j], lv[j]);
        out.target.rels[0].insert(img);
      }
      int j = r - 1;
      while (j >= 0) {
        if (++lv[j] < levels) break;
        lv[j--] = 0;
      }
      if (j < 0) break;
    }
  }

  out.map.resize(n);
  for (int x = 0; x < n; ++x)
    for (int level = 0; level < levels; ++level) out.map[x].push_back(idx(x, level));

  out.interp.from = b.sig;
  out.interp.to = out.target.sig;
  out.interp.m = levels;
  std::vector<QFFormula> atoms;
  std::vector<int> s(r, 0);
  while (true) {
    std::set<int> distinct(s.begin(), s.end());
    if (static_cast<int>(distinct.size()) == r) {
      std::vector<Term> args;
      for (int t = 0; t < r; ++t) args.push_back({t, s[t]});
      atoms.push_back(QFFormula::atom(rel, std::move(args)));
    }
    int j = r - 1;
    while (j >= 0) {
      if (++s[j] < levels) break;
      s[j--] = 0;
    }
    if (j < 0) break;
  }
  out.interp.thetas.push_back(QFFormula::conj(std::move(atoms)));
  out.interp.thetas[0].block_width = levels;

  // the level pigeonhole guarantees no complete k-set; confirm exhaustively
  const int total = out.target.sizes[0];
  if (total >= k) {
    std::vector<int> pickv(k);
    for (int j = 0; j < k; ++j) pickv[j] = j;
    while (true) {
      bool complete = true;
      std::vector<int> sub(r);
      for (int j = 0; j < r && complete; ++j) sub[j] = j;
      while (complete) {
        Tuple t(r);
        for (int j = 0; j < r; ++j) t[j] = pickv[sub[j]];
        if (!out.target.rels[0].count(t)) {
          complete = false;
          break;
        }
        int j = r - 1;
        while (j >= 0 && sub[j] == k - r + j) --j;
        if (j < 0) break;
        ++sub[j];
        for (int l = j + 1; l < r; ++l) sub[l] = sub[l - 1] + 1;
      }
      if (complete)
        throw std::logic_error("remove_cliques: target contains a complete k-set");
      int j = k - 1;
      while (j >= 0 && pickv[j] == total - k + j) --j;
      if (j < 0) break;
      ++pickv[j];
      for (int l = j + 1; l < k; ++l) pickv[l] = pickv[l - 1] + 1;
    }
  }

  self_verify(out, "remove_cliques");
  return out;
}

EncodingResult encode_society(const Structure& c) {
  c.validate();
  if (!c.sig.one_sorted()) throw std::invalid_argument("encode_society: structure must be one-sorted");
  if (c.sig.relation_count() == 0)
    throw std::invalid_argument("encode_society: society needs at least one relation");
  int m = 0, r = 0;
  for (const auto& q : c.sig.relations) {
    if (q.arity < 2) throw std::invalid_argument("encode_society: all arities must be >= 2");
    m += q.arity;
    r = std::max(r, q.arity);
  }
  for (int q = 0; q < c.sig.relation_count(); ++q) {
    const int ar = c.sig.relations[q].arity;
    for (const auto& t : c.rels[q]) {
      std::set<int> distinct(t.begin(), t.end());
      if (static_cast<int>(distinct.size()) != ar)
        throw std::invalid_argument("encode_society: relation '" + c.sig.relations[q].name +
                                    "' is not irreflexive");
      Tuple p = t;
      std::sort(p.begin(), p.end());
      do {
        if (!c.rels[q].count(p))
          throw std::invalid_argument("encode_society: relation '" + c.sig.relations[q].name +
                                      "' is not symmetric");
      } while (std::next_permutation(p.begin(), p.end()));
    }
  }

  // consecutive index blocks I_Q in signature order, pads from the complement
  std::vector<std::vector<int>> iq(c.sig.relation_count());
  int next = 0;
  for (int q = 0; q < c.sig.relation_count(); ++q)
    for (int t = 0; t < c.sig.relations[q].arity; ++t) iq[q].push_back(next++);
  std::vector<std::vector<int>> jq(c.sig.relation_count());
  for (int q = 0; q < c.sig.relation_count(); ++q) {
    std::set<int> in(iq[q].begin(), iq[q].end());
    for (int j = 0; j < m; ++j)
      if (!in.count(j)) jq[q].push_back(j);
  }

  const int n = c.sizes[0];
  auto idx = [&](int x, int block) { return x * m + block; };

  EncodingResult out;
  out.source = c;
  out.target.sig = make_one_sorted(c.sig.sorts[0], {{"R", r}});
  out.target.sizes = {n * m};
  out.target.rels.resize(1);
  for (int q = 0; q < c.sig.relation_count(); ++q) {
    const int ar = c.sig.relations[q].arity;
    for (const auto& t : c.rels[q]) {
      Tuple img;
      for (int j = 0; j < ar; ++j) img.push_back(idx(t[j], iq[q][j]));
      for (int j = 0; j < r - ar; ++j) img.push_back(idx(t[0], jq[q][j]));
      out.target.add_orbit(0, img);
    }
  }

  out.map.resize(n);
  for (int x = 0; x < n; ++x)
    for (int block = 0; block < m; ++block) out.map[x].push_back(idx(x, block));

  out.interp.from = c.sig;
  out.interp.to = out.target.sig;
  out.interp.m = m;
  for (int q = 0; q < c.sig.relation_count(); ++q) {
    const int ar = c.sig.relations[q].arity;
    std::vector<Term> args;
    for (int t = 0; t < ar; ++t) args.push_back({t, iq[q][t]});
    for (int j = 0; j < r - ar; ++j) args.push_back({0, jq[q][j]});
    QFFormula theta = QFFormula::atom("R", std::move(args));
    theta.block_count = ar;
    theta.block_width = m;
    out.interp.thetas.push_back(std::move(theta));
  }
  self_verify(out, "encode_society");
  return out;
}

bool OrderWitness::validate(int n, std::string* why) const {
  auto explain = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!generate) return explain("no generator");
  auto [w, aas] = generate(n);
  w.validate();
  if (!w.sig.one_sorted()) return explain("witness structure must be one-sorted");
  if (static_cast<int>(aas.size()) != n) return explain("generator returned wrong tuple count");
  for (const auto& row : aas) {
    if (static_cast<int>(row.size()) != m) return explain("tuple width != m");
    for (int v : row)
      if (v < 0 || v >= w.sizes[0]) return explain("tuple entry out of range");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool val = evaluate(psi, w, {aas[i], aas[j]});
      if (val != (i < j)) {
        std::ostringstream os;
        os << "psi(aa_" << i << "; aa_" << j << ") is " << (val ? "true" : "false")
           << ", wanted " << (i < j ? "true" : "false");
        return explain(os.str());
      }
    }
  return true;
}

EncodingResult code_order(const ClassSpec& k, const Structure& b, const OrderWitness& w) {
  ClassSpec expanded = order_expansion(k);
  if (b.sig != expanded.sig)
    throw std::invalid_argument("code_order: structure is not over the order expansion of K");
  if (!is_member(expanded, b))
    throw std::invalid_argument("code_order: structure is not an ordered member of K");

  const int n = b.sizes[0];
  const int order_rel = b.sig.relation_count() - 1;
  std::vector<int> rank(n, 0);
  for (const auto& t : b.rels[order_rel]) ++rank[t[1]];

  std::string why;
  if (!w.validate(n, &why)) throw std::runtime_error("code_order: invalid order witness: " + why);
  auto [wn, aas] = w.generate(n);

  Structure base = reduct(b, k.sig);

  EncodingResult out;
  out.source = b;
  out.target = class_join(k, base, wn);
  out.map.resize(n);
  for (int x = 0; x < n; ++x) {
    out.map[x].push_back(x);
    for (int v : aas[rank[x]]) out.map[x].push_back(n + v);
  }

  out.interp.from = b.sig;
  out.interp.to = k.sig;
  out.interp.m = 1 + w.m;
  for (const auto& rel : k.sig.relations) {
    std::vector<Term> args;
    for (int t = 0; t < rel.arity; ++t) args.push_back({t, 0});
    QFFormula theta = QFFormula::atom(rel.name, std::move(args));
    theta.block_count = rel.arity;
    theta.block_width = out.interp.m;
    out.interp.thetas.push_back(std::move(theta));
  }
  QFFormula psi = w.psi.shifted(1);
  psi.block_width = out.interp.m;
  out.interp.thetas.push_back(std::move(psi));
  self_verify(out, "code_order");
  return out;
}

ClassSpec order_expansion(const ClassSpec& k) {
  if (!k.sig.one_sorted()) throw std::invalid_argument("order_expansion: class must be one-sorted");
  std::string fresh = "<";
  int existing = k.sig.relation_index("<");
  if (existing >= 0) {
    bool is_order = false;
    for (int rel : k.constraints.linear_orders) is_order |= rel == existing;
    if (!is_order)
      throw std::invalid_argument("order_expansion: relation name '<' already in use");
    for (int j = 1;; ++j) {
      fresh = "<" + std::to_string(j);
      if (k.sig.relation_index(fresh) < 0) break;
    }
  }
  ClassSpec out = k;
  out.name = "ordered[" + k.name + "]";
  out.sig.relations.push_back({fresh, 2, {0, 0}});
  out.constraints.linear_orders.push_back(out.sig.relation_count() - 1);
  out.generic_candidates = nullptr;
  return out;
}

Structure product_structure(const std::vector<Structure>& factors) {
  if (factors.empty()) throw std::invalid_argument("product of zero structures is undefined");
  Signature sig;
  std::vector<int> rel_factor;  // owning factor per product relation
  for (size_t i = 0; i < factors.size(); ++i) {
    factors[i].validate();
    if (!factors[i].sig.one_sorted())
      throw std::invalid_argument("product factors must be one-sorted");
    for (const auto& rel : factors[i].sig.relations) {
      if (sig.relation_index(rel.name) >= 0)
        throw std::invalid_argument("product factors share relation name '" + rel.name + "'");
      sig.relations.push_back(rel);
      rel_factor.push_back(static_cast<int>(i));
    }
  }
  sig.sorts = {factors[0].sig.sorts[0]};
  for (auto& rel : sig.relations) rel.profile.assign(rel.arity, 0);

  long long total = 1;
  for (const auto& f : factors) total *= f.sizes[0];
  // stride of factor i in the row-major index (last factor varies fastest)
  std::vector<long long> stride(factors.size(), 1);
  for (size_t i = factors.size() - 1; i > 0; --i)
    stride[i - 1] = stride[i] * factors[i].sizes[0];
  auto project = [&](long long e, size_t i) {
    return static_cast<int>(e / stride[i] % factors[i].sizes[0]);
  };

  Structure out;
  out.sig = sig;
  out.sizes = {static_cast<int>(total)};
  out.rels.resize(sig.relation_count());
  for (int rr = 0; rr < sig.relation_count(); ++rr) {
    const size_t i = rel_factor[rr];
    const int local = factors[i].sig.relation_index(sig.relations[rr].name);
    const int ar = sig.relations[rr].arity;
    if (total == 0) continue;
    Tuple t(ar, 0);
    while (true) {
      Tuple proj(ar);
      for (int j = 0; j < ar; ++j) proj[j] = project(t[j], i);
      if (factors[i].rels[local].count(proj)) out.rels[rr].insert(t);
      int j = ar - 1;
      while (j >= 0) {
        if (++t[j] < static_cast<int>(total)) break;
        t[j--] = 0;
      }
      if (j < 0) break;
    }
  }
  return out;
}

Structure class_join(const ClassSpec& k, const Structure& s1, const Structure& s2) {
  Structure empty;
  empty.sig = k.sig;
  empty.sizes.assign(k.sig.sort_count(), 0);
  empty.rels.resize(k.sig.relation_count());
  Embedding e1, e2;
  e1.map.resize(k.sig.sort_count());
  e2.map.resize(k.sig.sort_count());
  auto joined = amalgamate_disjoint(k, empty, s1, s2, e1, e2);
  if (!joined) throw std::runtime_error("class is not closed under disjoint joins at these members");
  return joined->c;
}

ChainGapResult chain_gap(int r1, int r2, int m) {
  if (r1 < 2 || r2 <= r1 || m < 1) throw std::invalid_argument("chain_gap: need 2 <= r1 < r2, m >= 1");
  using boost::multiprecision::cpp_int;
  auto binom = [](long long n, int kk) {
    cpp_int res = 1;
    for (int i = 1; i <= kk; ++i) {
      res *= n - kk + i;
      res /= i;
    }
    return res;
  };
  for (long long n = 1; n <= 10000000; ++n) {
    cpp_int lhs = binom(n * m, r1);
    cpp_int rhs = binom(n, r2);
    if (lhs < rhs) return {n, lhs.str(), rhs.str()};
  }
  throw std::runtime_error("chain_gap: no gap found below 1e7");
}

}  // namespace fraisse
