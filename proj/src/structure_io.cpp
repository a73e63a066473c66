#include "fraisse/structure_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fraisse {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

int parse_int(std::string_view s, int line, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(std::string(s), &used);
    if (used != s.size()) fail(line, "bad " + what + " '" + std::string(s) + "'");
    return v;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "bad " + what + " '" + std::string(s) + "'");
  }
}

std::vector<Tuple> parse_tuples(std::string_view s, int arity, int line) {
  std::vector<Tuple> out;
  size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '(') fail(line, "expected '(' in tuple list");
    size_t close = s.find(')', i);
    if (close == std::string_view::npos) fail(line, "unterminated tuple");
    std::string_view body = s.substr(i + 1, close - i - 1);
    Tuple t;
    size_t start = 0;
    while (start <= body.size()) {
      size_t comma = body.find(',', start);
      std::string_view item =
          trim(comma == std::string_view::npos ? body.substr(start) : body.substr(start, comma - start));
      if (!item.empty()) t.push_back(parse_int(item, line, "tuple entry"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(t.size()) != arity) fail(line, "tuple length != arity");
    out.push_back(std::move(t));
    i = close + 1;
  }
  return out;
}

}  // namespace

std::string serialize_structure(const Structure& s) {
  std::ostringstream os;
  os << "sorts:";
  for (size_t i = 0; i < s.sig.sorts.size(); ++i)
    os << ' ' << s.sig.sorts[i] << '=' << s.sizes[i];
  os << '\n';
  os << "rels:";
  for (const auto& r : s.sig.relations) {
    os << ' ' << r.name << '/' << r.arity << ':';
    for (int j = 0; j < r.arity; ++j) {
      if (j) os << ',';
      os << s.sig.sorts[r.profile[j]];
    }
  }
  os << '\n';
  for (size_t r = 0; r < s.rels.size(); ++r) {
    os << s.sig.relations[r].name << ':';
    for (const auto& t : s.rels[r]) {
      os << " (";
      for (size_t j = 0; j < t.size(); ++j) {
        if (j) os << ',';
        os << t[j];
      }
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

Structure parse_structure(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  bool saw_sorts = false, saw_rels = false;
  Signature sig;
  std::vector<int> sizes;
  Structure out;

  while (std::getline(is, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (!saw_sorts) {
      if (!line.starts_with("sorts:")) fail(lineno, "expected 'sorts:' line");
      for (const auto& tok : tokens(line.substr(6))) {
        size_t eq = tok.find('=');
        if (eq == std::string::npos) fail(lineno, "expected <sort>=<size>");
        sig.sorts.push_back(tok.substr(0, eq));
        sizes.push_back(parse_int(std::string_view(tok).substr(eq + 1), lineno, "sort size"));
      }
      if (sig.sorts.empty()) fail(lineno, "need at least one sort");
      saw_sorts = true;
      continue;
    }
    if (!saw_rels) {
      if (!line.starts_with("rels:")) fail(lineno, "expected 'rels:' line");
      for (const auto& tok : tokens(line.substr(5))) {
        size_t slash = tok.find('/');
        size_t colon = tok.find(':', slash == std::string::npos ? 0 : slash);
        if (slash == std::string::npos || colon == std::string::npos)
          fail(lineno, "expected <name>/<arity>:<sorts>");
        Signature::Relation r;
        r.name = tok.substr(0, slash);
        r.arity = parse_int(std::string_view(tok).substr(slash + 1, colon - slash - 1), lineno,
                            "arity");
        std::string profile = tok.substr(colon + 1);
        size_t start = 0;
        while (start <= profile.size()) {
          size_t comma = profile.find(',', start);
          std::string sname =
              comma == std::string::npos ? profile.substr(start) : profile.substr(start, comma - start);
          if (!sname.empty()) {
            int idx = sig.sort_index(sname);
            if (idx < 0) fail(lineno, "unknown sort '" + sname + "'");
            r.profile.push_back(idx);
          }
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
        sig.relations.push_back(std::move(r));
      }
      try {
        sig.validate();
      } catch (const std::invalid_argument& e) {
        fail(lineno, e.what());
      }
      out = Structure(sig, sizes);
      saw_rels = true;
      continue;
    }

    size_t colon = line.find(':');
    if (colon == std::string_view::npos) fail(lineno, "expected '<relation>: (tuples)'");
    std::string name(trim(line.substr(0, colon)));
    int rel = sig.relation_index(name);
    if (rel < 0) fail(lineno, "unknown relation '" + name + "'");
    for (auto& t : parse_tuples(line.substr(colon + 1), sig.relations[rel].arity, lineno)) {
      for (size_t j = 0; j < t.size(); ++j)
        if (t[j] < 0 || t[j] >= sizes[sig.relations[rel].profile[j]])
          fail(lineno, "tuple entry out of range");
      out.rels[rel].insert(std::move(t));
    }
  }
  if (!saw_sorts) fail(lineno ? lineno : 1, "missing 'sorts:' line");
  if (!saw_rels) fail(lineno ? lineno : 1, "missing 'rels:' line");
  return out;
}

Structure load_structure(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  try {
    return parse_structure(buf.str());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_structure(const Structure& s, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << serialize_structure(s);
}

}  // namespace fraisse
