#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "fraisse/canonical.hpp"
#include "fraisse/catalog.hpp"
#include "fraisse/class_spec.hpp"
#include "fraisse/encodings.hpp"
#include "fraisse/generic.hpp"
#include "fraisse/hf.hpp"
#include "fraisse/interpretation.hpp"
#include "fraisse/one_sort.hpp"
#include "fraisse/structure_io.hpp"

namespace {

using namespace fraisse;

// exit codes: 0 success, 1 negative verdict, 2 usage error, 3 budget exceeded
int finish(const std::string& token, int code) {
  std::cout << "RESULT: " << token << '\n';
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

int report_encoding(const EncodingResult& enc, const std::string& out,
                    const std::string& interp_out) {
  std::cout << "source size " << enc.source.total_size() << ", target size "
            << enc.target.total_size() << ", width " << enc.interp.m << '\n';
  for (size_t r = 0; r < enc.interp.thetas.size(); ++r)
    std::cout << "theta " << enc.interp.from.relations[r].name << ": "
              << format_formula(enc.interp.thetas[r]) << '\n';
  if (!out.empty()) write_file(out, serialize_encoding(enc.target, enc.map));
  if (!interp_out.empty()) save_interpretation(enc.interp, interp_out);
  return finish("OK", 0);
}

void register_commands(CLI::App& app, int& exit_code) {
  auto bind = [&exit_code](CLI::App* cmd, std::function<int()> body) {
    cmd->callback([&exit_code, body = std::move(body)] { exit_code = body(); });
  };

  // enumerate
  {
    auto o = std::make_shared<std::tuple<std::string, int, std::string>>("", 0, "");
    auto* c = app.add_subcommand("enumerate", "List members of a class up to isomorphism");
    c->add_option("--class", std::get<0>(*o), "catalog class name")->required();
    c->add_option("--size", std::get<1>(*o), "total universe size")->required();
    c->add_option("--out", std::get<2>(*o), "directory for member files");
    bind(c, [o] {
      auto& [cls, size, out] = *o;
      auto members = members_of_size(get_class(cls), size);
      if (!out.empty()) {
        std::filesystem::create_directories(out);
        for (size_t i = 0; i < members.size(); ++i) {
          std::ostringstream name;
          name << "member_" << std::setw(3) << std::setfill('0') << i << ".str";
          auto path = (std::filesystem::path(out) / name.str()).string();
          save_structure(members[i], path);
          std::cout << "wrote " << path << '\n';
        }
      }
      for (size_t i = 0; i < members.size(); ++i)
        std::cout << "member " << i << " code " << canonical_form(members[i]).hex() << '\n';
      return finish(std::to_string(members.size()), 0);
    });
  }

  // check-member
  {
    auto o = std::make_shared<std::pair<std::string, std::string>>();
    auto* c = app.add_subcommand("check-member", "Check membership of a structure file");
    c->add_option("--class", o->first, "catalog class name")->required();
    c->add_option("--in", o->second, "structure file")->required();
    bind(c, [o] {
      bool ok = is_member(get_class(o->first), load_structure(o->second));
      return ok ? finish("MEMBER", 0) : finish("NONMEMBER", 1);
    });
  }

  // check-axiom
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, int>>("", "", 4);
    auto* c = app.add_subcommand("check-axiom", "Bounded Fraisse axiom check");
    c->add_option("--class", std::get<0>(*o), "catalog class name")->required();
    c->add_option("--axiom", std::get<1>(*o), "HP, JEP, AP, disjoint-JEP or disjoint-AP")
        ->required();
    c->add_option("--bound", std::get<2>(*o), "member size bound");
    bind(c, [o] {
      auto& [cls, ax, bound] = *o;
      AxiomReport rep = check_axiom(get_class(cls), parse_axiom(ax), bound);
      std::cout << rep.detail << '\n';
      if (rep.verdict == AxiomReport::Verdict::HoldsUpTo) return finish("HOLDS-UP-TO", 0);
      return finish("COUNTEREXAMPLE", 1);
    });
  }

  // generic
  {
    auto o = std::make_shared<std::tuple<std::string, int, int, std::string>>("", 1, 64, "");
    auto* c = app.add_subcommand("generic", "Build a bounded generic approximation");
    c->add_option("--class", std::get<0>(*o), "catalog class name")->required();
    c->add_option("--level", std::get<1>(*o), "extension property level")->required();
    c->add_option("--budget", std::get<2>(*o), "size budget");
    c->add_option("--out", std::get<3>(*o), "structure file to write");
    bind(c, [o] {
      auto& [cls, level, budget, out] = *o;
      GenericResult res = build_generic(get_class(cls), level, budget);
      std::cout << res.detail << '\n';
      if (res.status != GenericResult::Status::Ok) return finish("BUDGET", 3);
      std::cout << "size " << res.model->total_size() << '\n';
      if (!out.empty()) save_structure(*res.model, out);
      return finish("OK", 0);
    });
  }

  // verify-extension
  {
    auto o = std::make_shared<std::tuple<std::string, int, std::string>>("", 1, "");
    auto* c = app.add_subcommand("verify-extension", "Check the k-extension property");
    c->add_option("--class", std::get<0>(*o), "catalog class name")->required();
    c->add_option("--level", std::get<1>(*o), "extension property level")->required();
    c->add_option("--in", std::get<2>(*o), "structure file")->required();
    bind(c, [o] {
      auto& [cls, level, in] = *o;
      ExtensionReport rep =
          verify_extension_property(load_structure(in), get_class(cls), level);
      if (rep.holds) return finish("HOLDS", 0);
      std::cout << rep.detail << '\n';
      return finish("FAILS", 1);
    });
  }

  // ramsey
  {
    struct Opts {
      std::string cls, a, b, out;
      int colors = 2, bound = 6, budget = 24;
    };
    auto o = std::make_shared<Opts>();
    auto* c = app.add_subcommand("ramsey", "Bounded Ramsey witness search");
    c->add_option("--class", o->cls, "catalog class name")->required();
    c->add_option("--a", o->a, "structure file for A")->required();
    c->add_option("--b", o->b, "structure file for B")->required();
    c->add_option("--colors", o->colors, "number of colors");
    c->add_option("--bound", o->bound, "maximum witness size");
    c->add_option("--budget", o->budget, "coloring budget in bits");
    c->add_option("--out", o->out, "structure file for the witness");
    bind(c, [o] {
      RamseyResult res =
          ramsey_witness_search(get_class(o->cls), load_structure(o->a), load_structure(o->b),
                                o->colors, o->bound, o->budget);
      std::cout << "checked " << res.candidates_checked << ", skipped "
                << res.candidates_skipped << '\n';
      if (res.status == RamseyResult::Status::BudgetExceeded) {
        std::cout << res.detail << '\n';
        return finish("BUDGET", 3);
      }
      if (res.status == RamseyResult::Status::Absent) return finish("ABSENT", 1);
      std::cout << "witness size " << res.c->total_size() << '\n';
      if (!o->out.empty()) save_structure(*res.c, o->out);
      return finish("FOUND", 0);
    });
  }

  // verify-witness
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, std::string>>();
    auto* c = app.add_subcommand("verify-witness", "Verify an interpretation witness");
    c->add_option("--interp", std::get<0>(*o), "interpretation file")->required();
    c->add_option("--in", std::get<1>(*o), "source structure file")->required();
    c->add_option("--encoding", std::get<2>(*o), "target-plus-map encoding file")->required();
    bind(c, [o] {
      auto& [interp_path, in, enc_path] = *o;
      Interpretation interp = load_interpretation(interp_path);
      auto [target, map] = parse_encoding(read_file(enc_path));
      std::string why;
      if (verify_witness(interp, load_structure(in), target, map, &why))
        return finish("VERIFIED", 0);
      std::cout << why << '\n';
      return finish("FAILED", 1);
    });
  }

  // search-interp
  {
    struct Opts {
      std::string from, to, out;
      int m = 1, max_nodes = 2, n_max = 3;
      long long budget = 400000000;
    };
    auto o = std::make_shared<Opts>();
    auto* c = app.add_subcommand("search-interp", "Search for an interpretation between classes");
    c->add_option("--from", o->from, "source class")->required();
    c->add_option("--to", o->to, "target class")->required();
    c->add_option("--m", o->m, "block width");
    c->add_option("--max-nodes", o->max_nodes, "formula node budget");
    c->add_option("--n-max", o->n_max, "source size bound");
    c->add_option("--budget", o->budget, "witness search budget");
    c->add_option("--out", o->out, "interpretation file to write");
    bind(c, [o] {
      InterpSearchResult res = search_interpretation(get_class(o->from), get_class(o->to), o->m,
                                                     o->max_nodes, o->n_max, o->budget);
      if (res.status == InterpSearchResult::Status::BudgetExceeded) {
        std::cout << res.detail << '\n';
        return finish("BUDGET", 3);
      }
      if (res.status == InterpSearchResult::Status::Absent) {
        std::cout << res.detail << '\n';
        return finish("ABSENT", 1);
      }
      std::cout << serialize_interpretation(*res.interp);
      std::cout << "sources verified: " << res.witnesses.size() << '\n';
      if (!o->out.empty()) save_interpretation(*res.interp, o->out);
      return finish("FOUND", 0);
    });
  }

  // lift-arity
  {
    auto o = std::make_shared<std::tuple<std::string, int, std::string, std::string>>("", 3, "", "");
    auto* c = app.add_subcommand("lift-arity", "Lift a hypergraph to a higher arity");
    c->add_option("--in", std::get<0>(*o), "structure file")->required();
    c->add_option("--r2", std::get<1>(*o), "target arity")->required();
    c->add_option("--out", std::get<2>(*o), "encoding file to write");
    c->add_option("--interp-out", std::get<3>(*o), "interpretation file to write");
    bind(c, [o] {
      auto& [in, r2, out, iout] = *o;
      return report_encoding(lift_arity(load_structure(in), r2), out, iout);
    });
  }

  // remove-cliques
  {
    auto o = std::make_shared<std::tuple<std::string, int, std::string, std::string>>("", 3, "", "");
    auto* c = app.add_subcommand("remove-cliques", "Encode a hypergraph into the clique-free class");
    c->add_option("--in", std::get<0>(*o), "structure file")->required();
    c->add_option("--k", std::get<1>(*o), "excluded clique size")->required();
    c->add_option("--out", std::get<2>(*o), "encoding file to write");
    c->add_option("--interp-out", std::get<3>(*o), "interpretation file to write");
    bind(c, [o] {
      auto& [in, k, out, iout] = *o;
      return report_encoding(remove_cliques(load_structure(in), k), out, iout);
    });
  }

  // encode-society
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, std::string>>();
    auto* c = app.add_subcommand("encode-society", "Encode a society into a single hypergraph");
    c->add_option("--in", std::get<0>(*o), "structure file")->required();
    c->add_option("--out", std::get<1>(*o), "encoding file to write");
    c->add_option("--interp-out", std::get<2>(*o), "interpretation file to write");
    bind(c, [o] {
      auto& [in, out, iout] = *o;
      return report_encoding(encode_society(load_structure(in)), out, iout);
    });
  }

  // code-order
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, std::string, std::string>>();
    auto* c = app.add_subcommand("code-order", "Encode an ordered member back into the plain class");
    c->add_option("--class", std::get<0>(*o), "base class with a registered witness")->required();
    c->add_option("--in", std::get<1>(*o), "ordered structure file")->required();
    c->add_option("--out", std::get<2>(*o), "encoding file to write");
    c->add_option("--interp-out", std::get<3>(*o), "interpretation file to write");
    bind(c, [o] {
      auto& [cls, in, out, iout] = *o;
      EncodingResult enc = code_order(get_class(cls), load_structure(in), op_witness(cls));
      return report_encoding(enc, out, iout);
    });
  }

  // order-expand
  {
    auto o = std::make_shared<std::string>();
    auto* c = app.add_subcommand("order-expand", "Signature of the generic order expansion");
    c->add_option("--class", *o, "catalog class name")->required();
    bind(c, [o] {
      ClassSpec k = order_expansion(get_class(*o));
      std::cout << "name " << k.name << '\n' << "sig " << k.sig.to_literal() << '\n';
      return finish("OK", 0);
    });
  }

  // product
  {
    auto o = std::make_shared<std::pair<std::vector<std::string>, std::string>>();
    auto* c = app.add_subcommand("product", "Product of structures over disjoint signatures");
    c->add_option("--in", o->first, "structure files (repeat)")->required()->expected(-1);
    c->add_option("--out", o->second, "structure file to write");
    bind(c, [o] {
      std::vector<Structure> factors;
      for (const auto& path : o->first) factors.push_back(load_structure(path));
      Structure prod = product_structure(factors);
      std::cout << "size " << prod.total_size() << '\n';
      if (!o->second.empty()) save_structure(prod, o->second);
      else std::cout << serialize_structure(prod);
      return finish("OK", 0);
    });
  }

  // one-sort
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, bool>>("", "", false);
    auto* c = app.add_subcommand("one-sort", "One-sorted companion (or its inverse with --back)");
    c->add_option("--in", std::get<0>(*o), "input file")->required();
    c->add_option("--out", std::get<1>(*o), "output file");
    c->add_flag("--back", std::get<2>(*o), "invert a one-sort file");
    bind(c, [o] {
      auto& [in, out, back] = *o;
      std::string text;
      if (back) {
        OneSortResult r = parse_one_sort(read_file(in));
        OneSortBackResult b = one_sort_back(r.derived, r.original, r.types);
        text = serialize_structure(b.original);
      } else {
        text = serialize_one_sort(one_sort_forward(load_structure(in)));
      }
      if (!out.empty()) write_file(out, text);
      else std::cout << text;
      return finish("OK", 0);
    });
  }

  // hf-encode
  {
    auto o = std::make_shared<std::string>();
    auto* c = app.add_subcommand("hf-encode", "Hereditarily finite set encoding");
    c->add_option("--in", *o, "structure file")->required();
    bind(c, [o] {
      HFEncoding enc = hf_encode(load_structure(*o));
      std::cout << "width " << enc.block_width() << '\n';
      if (enc.source.total_size() <= 6)
        for (size_t i = 0; i < enc.encoded.size(); ++i)
          std::cout << "u(" << i << ") = " << enc.encoded[i].to_string() << '\n';
      std::string why;
      if (!hf_check(enc, &why)) {
        std::cout << why << '\n';
        return finish("FAILED", 1);
      }
      return finish("VERIFIED", 0);
    });
  }

  // chain-gap
  {
    auto o = std::make_shared<std::tuple<int, int, int>>(2, 3, 1);
    auto* c = app.add_subcommand("chain-gap", "Minimal N with C(N*m, r1) < C(N, r2)");
    c->add_option("--r1", std::get<0>(*o), "lower arity")->required();
    c->add_option("--r2", std::get<1>(*o), "higher arity")->required();
    c->add_option("--m", std::get<2>(*o), "width multiplier")->required();
    bind(c, [o] {
      auto& [r1, r2, m] = *o;
      ChainGapResult res = chain_gap(r1, r2, m);
      std::cout << "N=" << res.n << '\n';
      std::cout << "C(" << res.n * m << "," << r1 << ")=" << res.lhs << '\n';
      std::cout << "C(" << res.n << "," << r2 << ")=" << res.rhs << '\n';
      return finish(std::to_string(res.n), 0);
    });
  }

  // canon
  {
    auto o = std::make_shared<std::string>();
    auto* c = app.add_subcommand("canon", "Canonical form of a structure");
    c->add_option("--in", *o, "structure file")->required();
    bind(c, [o] { return finish(canonical_form(load_structure(*o)).hex(), 0); });
  }

  // iso
  {
    auto o = std::make_shared<std::vector<std::string>>();
    auto* c = app.add_subcommand("iso", "Isomorphism test between two structure files");
    c->add_option("--in", *o, "two structure files")->required()->expected(2);
    bind(c, [o] {
      bool same = are_isomorphic(load_structure((*o)[0]), load_structure((*o)[1]));
      return same ? finish("ISO", 0) : finish("NONISO", 1);
    });
  }

  app.require_subcommand(1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite structures, classes and encodings toolbox"};
  int exit_code = 0;
  register_commands(app, exit_code);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << "error: " << e.what() << '\n';
    std::cout << "RESULT: ERROR\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << "RESULT: ERROR\n";
    return 2;
  }
  return exit_code;
}
