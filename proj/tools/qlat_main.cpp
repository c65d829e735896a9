// Command-line front end: classification census, chain search, family
// constructors, property verification, lattice rendering, isomorphism
// testing, and the verification suites.  Exit code 0 iff all checks pass.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qlat/conglat.hpp"
#include "qlat/constructions.hpp"
#include "qlat/pipeline.hpp"
#include "qlat/quandle.hpp"
#include "qlat/quiso.hpp"

using namespace qlat;

namespace {

QuandleTable read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw CLI::ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return QuandleTable::deserialize(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out.good()) throw CLI::ValidationError("cannot write " + path);
  out << text;
}

int run_classify(int p, int tier, const std::string& out,
                 const std::string& tables_dir) {
  ClassificationReport r = classify_census(p, tier, tables_dir);
  std::string json = report_json(r);
  if (out.empty())
    std::cout << json << "\n";
  else
    write_text(out, json);
  std::cerr << "p=" << r.p << " si=" << r.si_count << " dd=" << r.dd_count
            << " sr_not_dd=" << r.sr_not_dd_count
            << (r.all_checks_passed ? " (all checks passed)" : " (CHECKS FAILED)")
            << "\n";
  return r.all_checks_passed ? 0 : 1;
}

int run_chain_search(const std::string& p_arg, int tier) {
  std::vector<int> primes;
  if (p_arg == "all")
    primes = chain_allowed_primes();
  else
    primes.push_back(std::stoi(p_arg));

  int status = 0;
  for (int p : primes) {
    ChainSearchResult r = chain_search(p, tier);
    for (const SearchCoverage& c : r.coverage)
      std::cout << "p=" << c.p << " n=" << c.n << " method=" << c.method
                << " candidates=" << c.automorphism_candidates
                << " built=" << c.quandles_built << " latin=" << c.latin_found
                << "\n";
    if (r.coverage.empty())
      std::cout << "p=" << p << " no admissible module dimension at tier "
                << tier << "\n";
    for (const QuandleTable& q : r.quandles)
      std::cout << "  survivor: size=" << q.size() << " "
                << fingerprint(q).str() << "\n";
    std::cout << "p=" << p << " tier=" << tier << " survivors="
              << r.quandles.size()
              << (r.exhaustive ? " exhaustive" : " NOT exhaustive (sampled)")
              << "\n";
  }
  return status;
}

int run_construct(const std::string& family, int p, int j,
                  const std::string& out) {
  std::vector<std::pair<std::string, QuandleTable>> built;
  if (family == "sr") {
    auto sr = build_sr_group(p);
    built.emplace_back("sr(" + std::to_string(p) + "," + std::to_string(j) + ")",
                       build_sr_quandle(sr, j, {1, 0}).q);
  } else if (family == "lss4p") {
    auto gk = build_gk(p);
    built.emplace_back("q(" + std::to_string(p) + "," + std::to_string(j) + ")",
                       build_q4p(gk, j).q);
  } else if (family == "latin16") {
    auto fam = latin_size16_family();
    if (j < 1 || j > static_cast<int>(fam.size()))
      throw CLI::ValidationError("--j must be 1.." + std::to_string(fam.size()) +
                                 " for latin16");
    built.emplace_back("latin16#" + std::to_string(j),
                       fam[static_cast<std::size_t>(j - 1)]);
  } else if (family == "q4") {
    built.emplace_back("q4", build_q4());
  } else if (family == "g3") {
    built.emplace_back("si48", build_si48().quandle);
  } else if (family == "g5") {
    built.emplace_back("si80", build_si80().quandle);
  } else {
    throw CLI::ValidationError("unknown family " + family);
  }

  const auto& [name, q] = built.front();
  std::string text = "# " + name + "\n" + q.serialize();
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  std::cerr << name << ": size=" << q.size() << " " << fingerprint(q).str()
            << "\n";
  return 0;
}

int run_verify(const std::string& file, const std::string& props) {
  QuandleTable q = read_table(file);
  std::istringstream is(props);
  std::string prop;
  bool all = true;
  while (std::getline(is, prop, ',')) {
    bool v = false;
    if (prop == "latin") {
      v = q.is_latin();
    } else if (prop == "connected") {
      v = q.is_connected();
    } else if (prop == "faithful") {
      v = q.is_faithful();
    } else if (prop == "solvable") {
      v = q.is_solvable();
    } else if (prop == "si") {
      v = congruence_lattice(q).is_subdirectly_irreducible();
    } else if (prop == "dd") {
      // A complementary congruence pair: trivial meet, total join, and the
      // two block projections jointly injective.
      auto lat = congruence_lattice(q);
      for (std::size_t a = 0; a < lat.elems.size() && !v; ++a)
        for (std::size_t b = a + 1; b < lat.elems.size() && !v; ++b) {
          const Congruence& ca = lat.elems[a];
          const Congruence& cb = lat.elems[b];
          if (ca.is_finest() || cb.is_finest()) continue;
          if (ca.is_coarsest() || cb.is_coarsest()) continue;
          if (!ca.meet(cb).is_finest()) continue;
          if (!ca.join(cb).is_coarsest()) continue;
          if (static_cast<long long>(ca.num_blocks()) * cb.num_blocks() !=
              q.size())
            continue;
          v = true;
        }
    } else {
      throw CLI::ValidationError("unknown property " + prop);
    }
    std::cout << prop << "=" << (v ? "true" : "false") << "\n";
    all = all && v;
  }
  return all ? 0 : 1;
}

int run_lattice(const std::string& file, const std::string& dot) {
  QuandleTable q = read_table(file);
  auto lat = congruence_lattice(q);
  std::cout << "congruences=" << lat.elems.size()
            << " shape=" << lat.shape_tag() << "\n";
  for (std::size_t i = 0; i < lat.elems.size(); ++i)
    std::cout << "  c" << i << ": blocks=" << lat.elems[i].num_blocks()
              << (static_cast<int>(i) == lat.bottom ? " (bottom)" : "")
              << (static_cast<int>(i) == lat.top ? " (top)" : "") << "\n";
  if (!dot.empty()) {
    std::ostringstream os;
    os << "digraph conlat {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < lat.elems.size(); ++i)
      os << "  c" << i << " [label=\"" << lat.elems[i].num_blocks()
         << " blocks\"];\n";
    for (auto [lo, hi] : lat.cover_pairs())
      os << "  c" << lo << " -> c" << hi << ";\n";
    os << "}\n";
    write_text(dot, os.str());
  }
  return 0;
}

int run_iso(const std::string& a, const std::string& b) {
  QuandleTable qa = read_table(a);
  QuandleTable qb = read_table(b);
  auto m = find_isomorphism(qa, qb);
  if (m) {
    std::cout << "isomorphic\n";
    return 0;
  }
  std::cout << "not isomorphic\n";
  return 1;
}

int run_suite(const std::string& name, int p) {
  SuiteReport r;
  if (name == "galois")
    r = galois_suite();
  else if (name == "appendix")
    r = appendix_suite();
  else if (name == "counting")
    r = counting_suite(p);
  else if (name == "inventory")
    r = inventory_suite();
  else
    throw CLI::ValidationError("unknown suite " + name);
  std::cout << r.summary();
  return r.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latin quandle classification toolkit"};
  app.require_subcommand(1);

  int p = 7, tier = 2, j = 1;
  std::string out, tables_dir, p_arg = "all", family = "sr";
  std::string file, props = "latin,connected,faithful", dot;
  std::string file_a, file_b, suite_name = "galois";

  auto* classify = app.add_subcommand(
      "classify", "census of the latin quandles of size 16p");
  classify->add_option("--p", p, "odd prime in {3,5,7,11,13}")->required();
  classify->add_option("--tier", tier, "chain search tier (1-3)");
  classify->add_option("--out", out, "write the JSON report here");
  classify->add_option("--tables-dir", tables_dir,
                       "write one .tbl file per family member");

  auto* chain = app.add_subcommand(
      "chain-search", "search for latin quandles with 3-chain lattices");
  chain->add_option("--p", p_arg, "prime or 'all'")->required();
  chain->add_option("--tier", tier, "module dimension tier (1-3)");

  auto* construct =
      app.add_subcommand("construct", "build one family member table");
  construct
      ->add_option("--family", family, "sr | lss4p | latin16 | q4 | g3 | g5")
      ->required();
  construct->add_option("--p", p, "prime parameter");
  construct->add_option("--j", j, "twist index (families with two members)");
  construct->add_option("--out", out, "write the table here (default stdout)");

  auto* verify = app.add_subcommand("verify", "check properties of a table");
  verify->add_option("--file", file, "quandle table file")->required();
  verify->add_option("--props", props,
                     "comma list: latin,connected,faithful,solvable,si,dd");

  auto* lattice =
      app.add_subcommand("lattice", "congruence lattice of a table");
  lattice->add_option("--file", file, "quandle table file")->required();
  lattice->add_option("--dot", dot, "write a DOT rendering here");

  auto* iso = app.add_subcommand("iso", "isomorphism test for two tables");
  iso->add_option("--a", file_a, "first table")->required();
  iso->add_option("--b", file_b, "second table")->required();

  auto* suite = app.add_subcommand("suite", "run a verification suite");
  suite->add_option("--name", suite_name,
                    "galois | appendix | counting | inventory")
      ->required();
  suite->add_option("--p", p, "prime for the counting suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return run_classify(p, tier, out, tables_dir);
    if (chain->parsed()) return run_chain_search(p_arg, tier);
    if (construct->parsed()) return run_construct(family, p, j, out);
    if (verify->parsed()) return run_verify(file, props);
    if (lattice->parsed()) return run_lattice(file, dot);
    if (iso->parsed()) return run_iso(file_a, file_b);
    if (suite->parsed()) return run_suite(suite_name, p);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
