#include "fraisse/interpretation.hpp"

#include "fraisse/structure_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fraisse {

void Interpretation::validate() const {
  from.validate();
  to.validate();
  if (!from.one_sorted() || !to.one_sorted())
    throw std::invalid_argument("interpretations are between one-sorted signatures");
  if (m < 1) throw std::invalid_argument("interpretation width must be >= 1");
  if (thetas.size() != from.relations.size())
    throw std::invalid_argument("need exactly one formula per source relation");
  for (size_t r = 0; r < thetas.size(); ++r) {
    if (thetas[r].block_count != from.relations[r].arity || thetas[r].block_width != m)
      throw std::invalid_argument("formula block shape mismatch for '" + from.relations[r].name +
                                  "'");
  }
}

bool verify_witness(const Interpretation& interp, const Structure& b, const Structure& c,
                    const BlockMap& u, std::string* why) {
  interp.validate();
  if (b.sig != interp.from) throw std::invalid_argument("source signature mismatch");
  if (c.sig != interp.to) throw std::invalid_argument("target signature mismatch");

  auto explain = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };

  const int n = b.sizes[0];
  if (static_cast<int>(u.size()) != n) return explain("block map size != |B|");
  std::set<std::vector<int>> rows;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(u[i].size()) != interp.m) return explain("block map row width != m");
    for (int v : u[i])
      if (v < 0 || v >= c.sizes[0]) return explain("block map entry out of range");
    if (!rows.insert(u[i]).second) return explain("block map not injective");
  }

  for (int r = 0; r < b.sig.relation_count(); ++r) {
    const int ar = b.sig.relations[r].arity;
    Tuple t(ar, 0);
    if (n == 0) break;
    while (true) {
      Assignment asg(ar);
      for (int j = 0; j < ar; ++j) asg[j] = u[t[j]];
      bool lhs = b.has(r, t);
      bool rhs = evaluate(interp.thetas[r], c, asg);
      if (lhs != rhs) {
        std::ostringstream os;
        os << "biconditional fails for " << b.sig.relations[r].name << " on (";
        for (int j = 0; j < ar; ++j) os << (j ? "," : "") << t[j];
        os << "): source " << (lhs ? "holds" : "does not hold") << ", formula "
           << (rhs ? "holds" : "does not hold");
        return explain(os.str());
      }
      int j = ar - 1;
      while (j >= 0) {
        if (++t[j] < n) break;
        t[j--] = 0;
      }
      if (j < 0) break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// search

namespace {

struct BudgetExhausted {};

// backtracking search for a block map witnessing the candidate formulas on a
// fixed source/target pair
struct WitnessFinder {
  const Structure& b;
  const Structure& c;
  const Interpretation& interp;
  long long* nodes_left;
  // tuples grouped by their maximum source element
  std::vector<std::vector<std::pair<int, Tuple>>> checks;
  BlockMap rows;
  std::set<std::vector<int>> used;

  WitnessFinder(const Structure& b_, const Structure& c_, const Interpretation& i_,
                long long* budget)
      : b(b_), c(c_), interp(i_), nodes_left(budget) {
    const int n = b.sizes[0];
    checks.resize(n);
    for (int r = 0; r < b.sig.relation_count(); ++r) {
      const int ar = b.sig.relations[r].arity;
      Tuple t(ar, 0);
      if (n == 0) break;
      while (true) {
        int last = 0;
        for (int v : t) last = std::max(last, v);
        checks[last].emplace_back(r, t);
        int j = ar - 1;
        while (j >= 0) {
          if (++t[j] < n) break;
          t[j--] = 0;
        }
        if (j < 0) break;
      }
    }
    rows.resize(n);
  }

  bool consistent(int upto) const {
    for (const auto& [r, t] : checks[upto]) {
      Assignment asg(t.size());
      for (size_t j = 0; j < t.size(); ++j) asg[j] = rows[t[j]];
      if (b.has(r, t) != evaluate(interp.thetas[r], c, asg)) return false;
    }
    return true;
  }

  bool extend(int i) {
    if (i == b.sizes[0]) return true;
    std::vector<int> row(interp.m, 0);
    while (true) {
      if (--*nodes_left <= 0) throw BudgetExhausted{};
      if (!used.count(row)) {
        rows[i] = row;
        used.insert(row);
        if (consistent(i) && extend(i + 1)) return true;
        used.erase(row);
      }
      int j = interp.m - 1;
      while (j >= 0) {
        if (++row[j] < c.sizes[0]) break;
        row[j--] = 0;
      }
      if (j < 0) return false;
    }
  }
};

}  // namespace

InterpSearchResult search_interpretation(const ClassSpec& k1, const ClassSpec& k2, int m,
                                         int max_nodes, int n_max, long long max_verify) {
  if (!k1.sig.one_sorted() || !k2.sig.one_sorted())
    throw std::invalid_argument("interpretation search needs one-sorted classes");
  if (m < 1 || max_nodes < 1 || n_max < 1)
    throw std::invalid_argument("search parameters must be positive");

  InterpSearchResult result;
  long long nodes_left = max_verify;

  std::vector<Structure> sources;
  for (int s = 1; s <= n_max; ++s)
    for (auto& b : members_of_size(k1, s)) sources.push_back(std::move(b));

  // targets cached by size on demand
  std::vector<std::vector<Structure>> targets(static_cast<size_t>(m) * n_max + 1);
  std::vector<bool> have(targets.size(), false);
  auto targets_of = [&](int size) -> const std::vector<Structure>& {
    if (!have[size]) {
      targets[size] = members_of_size(k2, size);
      have[size] = true;
    }
    return targets[size];
  };

  // candidate formula lists per source relation
  std::vector<std::vector<QFFormula>> pools;
  for (const auto& rel : k1.sig.relations)
    pools.push_back(enumerate_formulas(k2.sig, rel.arity, m, max_nodes));
  if (pools.empty())
    throw std::invalid_argument("source class has no relations to interpret");
  for (const auto& p : pools)
    if (p.empty()) return result;  // no candidate formulas at this budget

  std::vector<size_t> pick(pools.size(), 0);
  try {
    while (true) {
      Interpretation cand;
      cand.from = k1.sig;
      cand.to = k2.sig;
      cand.m = m;
      for (size_t r = 0; r < pools.size(); ++r) cand.thetas.push_back(pools[r][pick[r]]);

      bool all_ok = true;
      std::vector<EncodingResult> witnesses;
      for (const auto& b : sources) {
        bool found = false;
        for (int csize = 1; csize <= m * b.sizes[0] && !found; ++csize) {
          for (const auto& c : targets_of(csize)) {
            WitnessFinder finder(b, c, cand, &nodes_left);
            if (finder.extend(0)) {
              witnesses.push_back(EncodingResult{cand, b, c, finder.rows});
              found = true;
              break;
            }
          }
        }
        if (!found) {
          all_ok = false;
          break;
        }
      }
      if (all_ok) {
        result.status = InterpSearchResult::Status::Found;
        result.interp = std::move(cand);
        result.witnesses = std::move(witnesses);
        result.verify_calls = max_verify - nodes_left;
        return result;
      }

      size_t i = pools.size();
      bool advanced = false;
      while (i > 0) {
        --i;
        if (++pick[i] < pools[i].size()) {
          advanced = true;
          break;
        }
        pick[i] = 0;
      }
      if (!advanced) break;
    }
  } catch (const BudgetExhausted&) {
    result.status = InterpSearchResult::Status::BudgetExceeded;
    result.detail = "witness search budget exhausted";
    result.verify_calls = max_verify;
    return result;
  }
  result.status = InterpSearchResult::Status::Absent;
  result.detail = "no interpretation within the formula and size budgets";
  result.verify_calls = max_verify - nodes_left;
  return result;
}

// ---------------------------------------------------------------------------
// files

std::string serialize_interpretation(const Interpretation& i) {
  std::ostringstream os;
  os << "interp m=" << i.m << " from=" << i.from.to_literal() << " to=" << i.to.to_literal()
     << '\n';
  for (size_t r = 0; r < i.thetas.size(); ++r)
    os << "theta " << i.from.relations[r].name << ": " << format_formula(i.thetas[r]) << '\n';
  return os.str();
}

Interpretation parse_interpretation(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  Interpretation out;
  bool saw_header = false;
  std::map<std::string, std::string> theta_lines;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view l = line;
    while (!l.empty() && std::isspace(static_cast<unsigned char>(l.front()))) l.remove_prefix(1);
    while (!l.empty() && std::isspace(static_cast<unsigned char>(l.back()))) l.remove_suffix(1);
    if (l.empty() || l.front() == '#') continue;
    if (!saw_header) {
      std::istringstream hs{std::string(l)};
      std::string tok;
      hs >> tok;
      if (tok != "interp")
        throw std::runtime_error("line " + std::to_string(lineno) + ": expected 'interp' header");
      bool have_m = false, have_from = false, have_to = false;
      while (hs >> tok) {
        if (tok.starts_with("m=")) {
          out.m = std::stoi(tok.substr(2));
          have_m = true;
        } else if (tok.starts_with("from=")) {
          out.from = Signature::from_literal(tok.substr(5));
          have_from = true;
        } else if (tok.starts_with("to=")) {
          out.to = Signature::from_literal(tok.substr(3));
          have_to = true;
        } else {
          throw std::runtime_error("line " + std::to_string(lineno) + ": bad header token '" +
                                   tok + "'");
        }
      }
      if (!have_m || !have_from || !have_to)
        throw std::runtime_error("line " + std::to_string(lineno) + ": incomplete header");
      saw_header = true;
      continue;
    }
    if (!l.starts_with("theta "))
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected 'theta' line");
    l.remove_prefix(6);
    size_t colon = l.find(':');
    if (colon == std::string_view::npos)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected ':' in theta line");
    std::string rel(l.substr(0, colon));
    while (!rel.empty() && std::isspace(static_cast<unsigned char>(rel.back()))) rel.pop_back();
    theta_lines[rel] = std::string(l.substr(colon + 1));
  }
  if (!saw_header) throw std::runtime_error("missing 'interp' header");
  for (const auto& rel : out.from.relations) {
    auto it = theta_lines.find(rel.name);
    if (it == theta_lines.end())
      throw std::runtime_error("missing theta for relation '" + rel.name + "'");
    out.thetas.push_back(parse_formula(it->second, out.to, rel.arity, out.m));
  }
  out.validate();
  return out;
}

Interpretation load_interpretation(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  try {
    return parse_interpretation(buf.str());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_interpretation(const Interpretation& i, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << serialize_interpretation(i);
}

std::string serialize_encoding(const Structure& target, const BlockMap& map) {
  std::ostringstream os;
  os << serialize_structure(target);
  for (size_t i = 0; i < map.size(); ++i) {
    os << "map: " << i << " -> (";
    for (size_t j = 0; j < map[i].size(); ++j) {
      if (j) os << ',';
      os << map[i][j];
    }
    os << ")\n";
  }
  return os.str();
}

std::pair<Structure, BlockMap> parse_encoding(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::ostringstream structural;
  struct Entry {
    int idx;
    std::vector<int> row;
    int lineno;
  };
  std::vector<Entry> entries;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view l = line;
    while (!l.empty() && std::isspace(static_cast<unsigned char>(l.front()))) l.remove_prefix(1);
    if (!l.starts_with("map:")) {
      structural << line << '\n';
      continue;
    }
    l.remove_prefix(4);
    size_t arrow = l.find("->");
    if (arrow == std::string_view::npos)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected '->' in map line");
    int idx = std::stoi(std::string(l.substr(0, arrow)));
    std::string_view rest = l.substr(arrow + 2);
    size_t open = rest.find('('), close = rest.find(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected '(...)' in map line");
    std::vector<int> row;
    std::string body(rest.substr(open + 1, close - open - 1));
    std::istringstream bs(body);
    std::string item;
    while (std::getline(bs, item, ',')) row.push_back(std::stoi(item));
    entries.push_back({idx, std::move(row), lineno});
  }
  Structure target = parse_structure(structural.str());
  BlockMap map(entries.size());
  for (auto& e : entries) {
    if (e.idx < 0 || e.idx >= static_cast<int>(entries.size()))
      throw std::runtime_error("line " + std::to_string(e.lineno) +
                               ": map indices must cover 0..n-1");
    for (int v : e.row)
      if (v < 0 || v >= target.total_size())
        throw std::runtime_error("line " + std::to_string(e.lineno) +
                                 ": map entry out of range for the target");
    map[e.idx] = std::move(e.row);
  }
  return {std::move(target), std::move(map)};
}

}  // namespace fraisse
