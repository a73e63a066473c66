#include "fraisse/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fraisse/structure_io.hpp"

namespace fraisse {

namespace {

struct ParsedName {
  std::string base;
  std::vector<std::string> params;
};

ParsedName parse_name(const std::string& name) {
  ParsedName out;
  size_t open = name.find('[');
  if (open == std::string::npos) {
    out.base = name;
    return out;
  }
  if (name.back() != ']')
    throw std::invalid_argument("malformed class name '" + name + "': missing ']'");
  out.base = name.substr(0, open);
  std::string inner = name.substr(open + 1, name.size() - open - 2);
  std::string item;
  int depth = 0;
  for (char ch : inner) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.params.push_back(item);
      item.clear();
    } else {
      item += ch;
    }
  }
  if (!item.empty() || !inner.empty()) out.params.push_back(item);
  return out;
}

int int_param(const std::string& s, const std::string& name) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size())
    throw std::invalid_argument("class '" + name + "': bad integer parameter '" + s + "'");
  return v;
}

const std::vector<int>& paley_primes() {
  static const std::vector<int> primes = [] {
    std::vector<int> out;
    for (int q = 5; q < 5000; q += 4) {
      bool prime = true;
      for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) {
          prime = false;
          break;
        }
      if (prime) out.push_back(q);
    }
    return out;
  }();
  return primes;
}

std::vector<bool> residue_set(int q) {
  std::vector<bool> qr(q, false);
  for (int x = 1; x < q; ++x) qr[static_cast<long long>(x) * x % q] = true;
  return qr;
}

Structure paley_graph(const Signature& sig, int q) {
  Structure s(sig, {q});
  auto qr = residue_set(q);
  for (int a = 0; a < q; ++a)
    for (int b = a + 1; b < q; ++b)
      if (qr[b - a]) s.add_orbit(0, {a, b});
  return s;
}

// r-subsets related when their element sum is a nonzero quadratic residue
Structure residue_sum_hypergraph(const Signature& sig, int q, int r) {
  Structure s(sig, {q});
  auto qr = residue_set(q);
  std::vector<int> pick(r);
  for (int j = 0; j < r; ++j) pick[j] = j;
  if (q < r) return s;
  while (true) {
    long long sum = 0;
    for (int v : pick) sum += v;
    if (qr[sum % q]) s.add_orbit(0, Tuple(pick.begin(), pick.end()));
    int j = r - 1;
    while (j >= 0 && pick[j] == q - r + j) --j;
    if (j < 0) break;
    ++pick[j];
    for (int l = j + 1; l < r; ++l) pick[l] = pick[l - 1] + 1;
  }
  return s;
}

ClassSpec make_pure_sets() {
  ClassSpec k;
  k.name = "pure_sets";
  k.sig.sorts = {"V"};
  return k;
}

ClassSpec make_MO(int orders) {
  if (orders < 1) throw std::invalid_argument("MO needs at least one order");
  ClassSpec k;
  k.name = orders == 1 ? "LO" : "MO[" + std::to_string(orders) + "]";
  k.sig.sorts = {"V"};
  for (int i = 0; i < orders; ++i) {
    std::string rel = i == 0 ? "<" : "<" + std::to_string(i);
    k.sig.relations.push_back({rel, 2, {0, 0}});
    k.constraints.linear_orders.push_back(i);
  }
  return k;
}

ClassSpec make_H(int r, int clique = 0) {
  if (r < 2) throw std::invalid_argument("H needs arity >= 2");
  if (clique && clique <= r) throw std::invalid_argument("H[r,k] needs k > r");
  ClassSpec k;
  k.name = "H[" + std::to_string(r) + (clique ? "," + std::to_string(clique) : "") + "]";
  k.sig = make_one_sorted("V", {{"R", r}});
  k.constraints.symmetric_irreflexive = {0};
  if (clique) {
    Structure forbidden(k.sig, {clique});
    std::vector<int> pick(r);
    for (int j = 0; j < r; ++j) pick[j] = j;
    while (true) {
      forbidden.add_orbit(0, Tuple(pick.begin(), pick.end()));
      int j = r - 1;
      while (j >= 0 && pick[j] == clique - r + j) --j;
      if (j < 0) break;
      ++pick[j];
      for (int l = j + 1; l < r; ++l) pick[l] = pick[l - 1] + 1;
    }
    k.constraints.forbidden.push_back(std::move(forbidden));
  } else {
    Signature sig = k.sig;
    k.generic_candidates = [sig, r](int i) -> std::optional<Structure> {
      const auto& primes = paley_primes();
      if (i >= static_cast<int>(primes.size())) return std::nullopt;
      if (r == 2) return paley_graph(sig, primes[i]);
      return residue_sum_hypergraph(sig, primes[i], r);
    };
  }
  return k;
}

ClassSpec make_Hstar(int r) {
  if (r < 2) throw std::invalid_argument("Hstar needs arity >= 2");
  ClassSpec k;
  k.name = "Hstar[" + std::to_string(r) + "]";
  k.sig.sorts = {"V"};
  k.sig.relations.push_back({"R", r, std::vector<int>(r, 0)});
  std::vector<int> classes;
  for (int i = 0; i < r; ++i) {
    k.sig.relations.push_back({"U" + std::to_string(i), 1, {0}});
    classes.push_back(i + 1);
  }
  k.constraints.symmetric_irreflexive = {0};
  k.constraints.unary_partitions = {classes};
  k.constraints.transversal = {0};
  return k;
}

ClassSpec make_society(const std::vector<std::string>& items, const std::string& name) {
  if (items.empty()) throw std::invalid_argument("society needs at least one relation");
  ClassSpec k;
  k.name = name;
  k.sig.sorts = {"V"};
  for (const auto& item : items) {
    size_t slash = item.find('/');
    if (slash == std::string::npos)
      throw std::invalid_argument("society relation '" + item + "' must look like Name/arity");
    std::string rel = item.substr(0, slash);
    int arity = int_param(item.substr(slash + 1), name);
    if (arity < 2) throw std::invalid_argument("society relations need arity >= 2");
    k.sig.relations.push_back({rel, arity, std::vector<int>(arity, 0)});
    k.constraints.symmetric_irreflexive.push_back(k.sig.relation_count() - 1);
  }
  k.sig.validate();
  return k;
}

ClassSpec make_J(int p) {
  if (p < 1) throw std::invalid_argument("J needs p >= 1");
  ClassSpec k;
  k.name = "J[" + std::to_string(p) + "]";
  std::vector<int> profile;
  for (int i = 0; i <= p; ++i) {
    k.sig.sorts.push_back("S" + std::to_string(i));
    profile.push_back(i);
  }
  k.sig.relations.push_back({"R", p + 1, profile});
  return k;
}

ClassSpec make_max_edges(int cap) {
  if (cap < 0) throw std::invalid_argument("max_edges needs a nonnegative cap");
  ClassSpec k;
  k.name = "max_edges[" + std::to_string(cap) + "]";
  k.sig = make_one_sorted("V", {{"R", 2}});
  k.constraints.symmetric_irreflexive = {0};
  k.constraints.max_tuple_orbits = {{0, cap}};
  return k;
}

}  // namespace

ClassSpec get_class(const std::string& name) {
  if (!name.empty() && name[0] == '@') return load_class_file(name.substr(1));
  auto [base, params] = parse_name(name);
  auto arity_params = [&](size_t lo, size_t hi) {
    if (params.size() < lo || params.size() > hi)
      throw std::invalid_argument("class '" + name + "': wrong parameter count");
    std::vector<int> out;
    for (const auto& p : params) out.push_back(int_param(p, name));
    return out;
  };
  if (base == "pure_sets" && params.empty()) return make_pure_sets();
  if (base == "LO" && params.empty()) return make_MO(1);
  if (base == "MO") return make_MO(arity_params(1, 1)[0]);
  if (base == "H") {
    auto p = arity_params(1, 2);
    return p.size() == 1 ? make_H(p[0]) : make_H(p[0], p[1]);
  }
  if (base == "Hstar") return make_Hstar(arity_params(1, 1)[0]);
  if (base == "society") return make_society(params, name);
  if (base == "J") return make_J(arity_params(1, 1)[0]);
  if (base == "ordered") {
    if (params.size() != 1)
      throw std::invalid_argument("class '" + name + "': ordered takes one class name");
    return order_expansion(get_class(params[0]));
  }
  if (base == "max_edges") return make_max_edges(arity_params(1, 1)[0]);
  throw std::invalid_argument("unknown class '" + name + "'");
}

OrderWitness op_witness(const std::string& name) {
  auto [base, params] = parse_name(name);
  OrderWitness w;
  if (base == "LO" || base == "MO") {
    ClassSpec k = get_class(name);
    w.m = 1;
    w.psi = QFFormula::atom("<", {{0, 0}, {1, 0}});
    Signature sig = k.sig;
    w.generate = [sig](int n) {
      Structure chain(sig, {n});
      for (int rel = 0; rel < sig.relation_count(); ++rel)
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) chain.add(rel, {i, j});
      BlockMap aas(n);
      for (int i = 0; i < n; ++i) aas[i] = {i};
      return std::make_pair(std::move(chain), std::move(aas));
    };
    return w;
  }
  if (base == "H") {
    ClassSpec k = get_class(name);
    const int r = k.sig.relations[0].arity;
    w.m = r;
    std::vector<Term> args{{0, 0}};
    for (int t = 1; t < r; ++t) args.push_back({1, t});
    w.psi = QFFormula::atom("R", std::move(args));
    Signature sig = k.sig;
    // half-hypergraph: heads a_i = i, tail blocks of r-1 fresh vertices per
    // index, edge {a_i} + block_j exactly when i < j
    w.generate = [sig, r](int n) {
      Structure s(sig, {n * r});
      BlockMap aas(n);
      auto block = [&](int j, int t) { return n + j * (r - 1) + t; };
      for (int i = 0; i < n; ++i) {
        aas[i] = {i};
        for (int t = 0; t < r - 1; ++t) aas[i].push_back(block(i, t));
      }
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Tuple edge{i};
          for (int t = 0; t < r - 1; ++t) edge.push_back(block(j, t));
          s.add_orbit(0, edge);
        }
      return std::make_pair(std::move(s), std::move(aas));
    };
    return w;
  }
  throw std::invalid_argument("no order-property witness registered for '" + name + "'");
}

bool has_op_witness(const std::string& name) {
  try {
    op_witness(name);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::vector<std::string> catalog_names() {
  return {"pure_sets", "LO",   "MO[k]",        "H[r]",       "H[r,k]",      "Hstar[r]",
          "society[Name/arity,...]", "J[p]", "ordered[class]", "max_edges[c]", "@file"};
}

ClassSpec parse_class_line(std::string_view line, const std::string& base_dir) {
  std::istringstream is{std::string(line)};
  std::string tok, name, literal, builtin;
  std::vector<std::string> forbids;
  if (!(is >> tok) || tok != "class")
    throw std::runtime_error("class line must start with 'class'");
  if (!(is >> name)) throw std::runtime_error("class line missing a name");
  if (!(is >> tok) || tok != "sig") throw std::runtime_error("expected 'sig' after the class name");
  if (!(is >> literal)) throw std::runtime_error("class line missing a signature literal");
  enum { kNone, kForbid } mode = kNone;
  while (is >> tok) {
    if (tok == "builtin") {
      if (!(is >> builtin)) throw std::runtime_error("'builtin' needs a catalog name");
      mode = kNone;
    } else if (tok == "forbid") {
      mode = kForbid;
    } else if (mode == kForbid) {
      forbids.push_back(tok);
    } else {
      throw std::runtime_error("unexpected token '" + tok + "' in class line");
    }
  }

  ClassSpec spec;
  if (!builtin.empty()) {
    spec = get_class(builtin);
    if (spec.sig != Signature::from_literal(literal))
      throw std::runtime_error("declared signature disagrees with builtin '" + builtin + "'");
  } else {
    spec.sig = Signature::from_literal(literal);
    spec.sig.validate();
  }
  spec.name = name;
  for (const auto& file : forbids) {
    std::filesystem::path p = std::filesystem::path(base_dir) / file;
    spec.constraints.forbidden.push_back(load_structure(p.string()));
  }
  return spec;
}

ClassSpec load_class_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  while (std::getline(f, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    try {
      return parse_class_line(line.substr(start),
                              std::filesystem::path(path).parent_path().string());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }
  throw std::runtime_error(path + ": no class line found");
}

std::string class_line(const ClassSpec& k) {
  std::string out = "class " + k.name + " sig " + k.sig.to_literal();
  const auto& c = k.constraints;
  bool constrained = !c.symmetric_irreflexive.empty() || !c.linear_orders.empty() ||
                     !c.unary_partitions.empty() || !c.transversal.empty() ||
                     !c.forbidden.empty() || c.max_tuple_orbits.has_value();
  if (constrained) out += " builtin " + k.name;
  return out;
}

}  // namespace fraisse
