// cube3: build, verify, classify, enumerate and export order-v 0/1 cubes
// whose layers form a symmetric block design of propriety 3.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cube3/ast.hpp"
#include "cube3/construct.hpp"
#include "cube3/cube.hpp"
#include "cube3/diffset.hpp"
#include "cube3/enumerate.hpp"
#include "cube3/equivalence.hpp"
#include "cube3/group.hpp"
#include "cube3/io.hpp"

namespace fs = std::filesystem;
using namespace cube3;

namespace {

uint64_t env_max_nodes() {
  const char* s = std::getenv("CUBE3_MAX_NODES");
  if (!s || !*s) return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw std::runtime_error("CUBE3_MAX_NODES: bad value");
  }
}

// The environment cap applies on top of any per-run flag.
uint64_t effective_max_nodes(uint64_t flag) {
  uint64_t env = env_max_nodes();
  if (env == 0) return flag;
  if (flag == 0) return env;
  return std::min(flag, env);
}

void echo_config(const std::string& line) {
  std::cerr << "# config: " << line << "\n";
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

std::string table_rows(int v, int k, const std::map<int, std::size_t>& counts) {
  std::string text;
  for (auto& [lam, n] : counts)
    text += std::to_string(v) + " " + std::to_string(k) + " " +
            std::to_string(lam) + " " + std::to_string(n) + "\n";
  return text;
}

fs::path table_dir(const std::string& out, int v, int k) {
  return fs::path(out) /
         ("v" + std::to_string(v) + "_k" + std::to_string(k));
}

std::string rep_name(int v, int k, int lam, std::size_t index,
                     const std::string& ext) {
  return "v" + std::to_string(v) + "_k" + std::to_string(k) + "_l" +
         std::to_string(lam) + "_" + std::to_string(index) + ext;
}

int cmd_verify(const std::string& file) {
  Cube c = load_cube_file(file);
  VerifyFailure why;
  auto p = verify(c, &why);
  if (!p) {
    std::cout << "invalid: " << why.message << "\n";
    return 1;
  }
  std::cout << p->v << " " << p->k << " " << p->lambda << "\n";
  return 0;
}

int cmd_enumerate(int v, int k, std::optional<int> lambda, int workers,
                  uint64_t max_nodes, const std::string& out) {
  EnumerationOptions opt;
  opt.v = v;
  opt.k = k;
  opt.lambda = lambda;
  opt.workers = workers;
  opt.max_nodes = effective_max_nodes(max_nodes);
  EnumerationReport rep = enumerate_cubes(opt);
  std::map<int, std::size_t> counts;
  for (auto& [lam, reps] : rep.classes) counts[lam] = reps.size();
  std::string table = table_rows(v, k, counts);
  std::cout << table;
  if (!out.empty()) {
    fs::path dir = table_dir(out, v, k);
    fs::create_directories(dir);
    for (auto& [lam, reps] : rep.classes)
      for (std::size_t i = 0; i < reps.size(); ++i)
        save_cube_file(reps[i],
                       (dir / rep_name(v, k, lam, i + 1, ".cube")).string());
    write_text_file((dir / "report.txt").string(), table);
  }
  if (!rep.complete) {
    std::cerr << "incomplete: node budget exhausted after " << rep.nodes
              << " nodes\n";
    return 1;
  }
  return 0;
}

int cmd_ds3_search(const std::string& spec, int k, int mult_order, int workers,
                   uint64_t max_nodes, const std::string& out) {
  FiniteGroup g = make_group(spec);
  Ds3SearchOptions opt;
  opt.k = k;
  opt.workers = workers;
  opt.max_nodes = effective_max_nodes(max_nodes);
  if (mult_order > 0) {
    for (auto& phi : automorphisms(g)) {
      if (permutation_order(phi) == mult_order) {
        opt.multiplier = phi;
        break;
      }
    }
    if (!opt.multiplier)
      throw std::runtime_error("no automorphism of order " +
                               std::to_string(mult_order) + " in " + spec);
  }
  Ds3SearchResult res = search_ds3(g, opt);
  std::map<int, std::size_t> counts;
  for (auto& [lam, reps] : res.classes) counts[lam] = reps.size();
  std::string table = table_rows(res.v, res.k, counts);
  std::cout << table;
  if (!out.empty()) {
    fs::path dir = table_dir(out, res.v, res.k);
    fs::create_directories(dir);
    // One representative set per class, first one seen in the transversal.
    std::set<CanonicalForm> seen;
    std::map<int, std::size_t> used;
    for (auto& d : res.sets) {
      Cube c = dev(g, d);
      if (!seen.insert(canonical_form(c)).second) continue;
      auto p = check_ds3(g, d);
      if (!p) continue;
      int lam = p->lambda;
      std::size_t index = ++used[lam];
      write_text_file((dir / rep_name(res.v, res.k, lam, index, ".ds3")).string(),
                      to_ds3_text(spec, d));
    }
    write_text_file((dir / "report.txt").string(), table);
  }
  if (!res.complete) {
    std::cerr << "incomplete: node budget exhausted after " << res.nodes
              << " nodes\n";
    return 1;
  }
  return 0;
}

int cmd_ds3_check(const std::string& file) {
  Ds3File f = parse_ds3_text(read_text_file(file));
  FiniteGroup g = make_group(f.group_spec);
  auto p = check_ds3(g, f.set);
  if (!p) {
    std::cout << "not a difference set of propriety 3\n";
    return 1;
  }
  std::cout << p->v << " " << p->k << " " << p->lambda << "\n";
  return 0;
}

int cmd_ds3_dev(const std::string& file, const std::string& out) {
  Ds3File f = parse_ds3_text(read_text_file(file));
  FiniteGroup g = make_group(f.group_spec);
  write_output(out, to_cube_text(dev(g, f.set)));
  return 0;
}

int cmd_canon(const std::string& file) {
  std::cout << canonical_form(load_cube_file(file)).hex() << "\n";
  return 0;
}

int cmd_equiv(const std::string& a, const std::string& b) {
  bool eq = equivalent(load_cube_file(a), load_cube_file(b));
  std::cout << (eq ? "equivalent" : "inequivalent") << "\n";
  return eq ? 0 : 1;
}

int cmd_atop(const std::string& file, bool paratopy) {
  Cube c = load_cube_file(file);
  std::cout << (paratopy ? paratopy_stabilizer_order(c) : autotopy_order(c))
            << "\n";
  return 0;
}

int cmd_export(const std::string& format, const std::string& file,
               const std::string& out) {
  Cube c = load_cube_file(file);
  if (format == "gap")
    write_output(out, to_gap_text(c));
  else
    write_output(out, to_pov_text(c));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric block designs of propriety 3 on v*v*v cubes"};
  app.require_subcommand(1);

  std::string file, file2, out, group_spec, format, design_file, latin_file,
      hadamard_file, rainbow_file, mode;
  int v = 0, k = 0, workers = 1, mult_order = 0, diag = 0, q = 0;
  std::optional<int> lambda;
  uint64_t max_nodes = 0;
  bool paratopy = false, with_diagonal = false;

  auto* c_verify = app.add_subcommand("verify", "check the design conditions");
  c_verify->add_option("file", file, "cube file")->required();

  auto* c_enum =
      app.add_subcommand("enumerate", "classify all cubes up to equivalence");
  c_enum->add_option("--v", v, "cube order (at most 8)")->required();
  c_enum->add_option("--k", k, "layer sum")->required();
  int lambda_raw = -1;
  c_enum->add_option("--lambda", lambda_raw, "keep only this lambda");
  c_enum->add_option("--workers", workers, "worker threads");
  c_enum->add_option("--max-nodes", max_nodes, "abort after this many nodes");
  c_enum->add_option("--out", out, "write representatives under this directory");

  auto* c_search = app.add_subcommand(
      "ds3-search", "classify difference sets of propriety 3");
  c_search->add_option("--group", group_spec, "group spec or Cayley-table file")
      ->required();
  c_search->add_option("--k", k, "set size")->required();
  c_search->add_option("--multiplier-order", mult_order,
                       "restrict to sets fixed by a multiplier of this order");
  c_search->add_option("--workers", workers, "worker threads");
  c_search->add_option("--max-nodes", max_nodes, "abort after this many nodes");
  c_search->add_option("--out", out, "write representative sets here");

  auto* c_check =
      app.add_subcommand("ds3-check", "test a difference-set file");
  c_check->add_option("file", file, "difference-set file")->required();

  auto* c_dev = app.add_subcommand("ds3-dev", "development cube of a set");
  c_dev->add_option("file", file, "difference-set file")->required();
  c_dev->add_option("--out", out, "output cube file (default stdout)");

  auto* c_con = app.add_subcommand("construct", "construction theorems");
  c_con->require_subcommand(1);
  auto* c_dl = c_con->add_subcommand("design-latin",
                                     "symmetric design times Latin square");
  c_dl->add_option("--design", design_file, "incidence matrix file")
      ->required();
  c_dl->add_option("--latin", latin_file, "Latin square file")->required();
  auto* c_prod = c_con->add_subcommand(
      "product", "three-layer sum of a diagonalized design");
  c_prod->add_option("--design", design_file, "incidence matrix file")
      ->required();
  c_prod->add_option("--diag", diag, "constant diagonal value")
      ->required()
      ->check(CLI::Range(0, 1));
  auto* c_tour = c_con->add_subcommand(
      "tournament", "doubly regular tournament construction");
  c_tour->add_option("--q", q, "prime field size, 3 mod 4")->required();
  c_tour->add_option("--diag", diag, "diagonal shift, 0 or 1")
      ->required()
      ->check(CLI::Range(0, 1));
  auto* c_blow = c_con->add_subcommand(
      "blowup", "Hadamard blow-up along a layer-rainbow cube");
  c_blow->add_option("--hadamard", hadamard_file, "Hadamard matrix file")
      ->required();
  c_blow->add_option("--rainbow", rainbow_file, "layer-rainbow cube file")
      ->required();
  c_blow->add_option("--mode", mode, "normalized or regular")
      ->required()
      ->check(CLI::IsMember({"normalized", "regular"}));
  auto* c_triv =
      c_con->add_subcommand("trivial", "exactly-two-coordinates-equal cube");
  c_triv->add_option("--v", v, "cube order")->required();
  c_triv->add_flag("--with-diagonal", with_diagonal, "include x=y=z cells");
  for (auto* sub : {c_dl, c_prod, c_tour, c_blow, c_triv})
    sub->add_option("--out", out, "output cube file (default stdout)");

  auto* c_canon = app.add_subcommand("canon", "canonical form as hex");
  c_canon->add_option("file", file, "cube file")->required();

  auto* c_equiv = app.add_subcommand("equiv", "test two cubes for equivalence");
  c_equiv->add_option("a", file, "first cube file")->required();
  c_equiv->add_option("b", file2, "second cube file")->required();

  auto* c_atop = app.add_subcommand("atop", "autotopy group order");
  c_atop->add_option("file", file, "cube file")->required();
  c_atop->add_flag("--paratopy", paratopy,
                   "full stabilizer including axis permutations");

  auto* c_exp = app.add_subcommand("export", "write gap or pov text");
  c_exp->add_option("--format", format, "gap or pov")
      ->required()
      ->check(CLI::IsMember({"gap", "pov"}));
  c_exp->add_option("file", file, "cube file")->required();
  c_exp->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (lambda_raw >= 0) lambda = lambda_raw;

  try {
    if (app.got_subcommand(c_verify)) {
      echo_config("verify file=" + file);
      return cmd_verify(file);
    }
    if (app.got_subcommand(c_enum)) {
      std::ostringstream cfg;
      cfg << "enumerate v=" << v << " k=" << k << " lambda="
          << (lambda ? std::to_string(*lambda) : std::string("all"))
          << " workers=" << workers
          << " max_nodes=" << effective_max_nodes(max_nodes)
          << " out=" << (out.empty() ? "-" : out);
      echo_config(cfg.str());
      return cmd_enumerate(v, k, lambda, workers, max_nodes, out);
    }
    if (app.got_subcommand(c_search)) {
      std::ostringstream cfg;
      cfg << "ds3-search group=" << group_spec << " k=" << k
          << " multiplier_order=" << mult_order << " workers=" << workers
          << " max_nodes=" << effective_max_nodes(max_nodes)
          << " out=" << (out.empty() ? "-" : out);
      echo_config(cfg.str());
      return cmd_ds3_search(group_spec, k, mult_order, workers, max_nodes,
                            out);
    }
    if (app.got_subcommand(c_check)) {
      echo_config("ds3-check file=" + file);
      return cmd_ds3_check(file);
    }
    if (app.got_subcommand(c_dev)) {
      echo_config("ds3-dev file=" + file + " out=" + (out.empty() ? "-" : out));
      return cmd_ds3_dev(file, out);
    }
    if (app.got_subcommand(c_con)) {
      std::string target = " out=" + (out.empty() ? "-" : out);
      if (c_con->got_subcommand(c_dl)) {
        echo_config("construct design-latin design=" + design_file +
                    " latin=" + latin_file + target);
        IntMatrix a = parse_incidence_text(read_text_file(design_file));
        LatinSquare l = parse_latin_text(read_text_file(latin_file));
        write_output(out, to_cube_text(design_times_latin(a, l)));
      } else if (c_con->got_subcommand(c_prod)) {
        echo_config("construct product design=" + design_file +
                    " diag=" + std::to_string(diag) + target);
        IntMatrix a = parse_incidence_text(read_text_file(design_file));
        write_output(out,
                     to_cube_text(product_construction(diagonalize(a, diag),
                                                       diag)));
      } else if (c_con->got_subcommand(c_tour)) {
        echo_config("construct tournament q=" + std::to_string(q) +
                    " diag=" + std::to_string(diag) + target);
        write_output(out, to_cube_text(tournament_construction(
                              paley_tournament(q), diag)));
      } else if (c_con->got_subcommand(c_blow)) {
        echo_config("construct blowup hadamard=" + hadamard_file +
                    " rainbow=" + rainbow_file + " mode=" + mode + target);
        HadamardMatrix h = parse_hadamard_text(read_text_file(hadamard_file));
        LayerRainbowCube l = parse_rainbow_text(read_text_file(rainbow_file));
        BlowupMode m = mode == "normalized" ? BlowupMode::normalized
                                            : BlowupMode::regular;
        write_output(out, to_cube_text(hadamard_blowup(h, l, m)));
      } else {
        echo_config("construct trivial v=" + std::to_string(v) +
                    " with_diagonal=" + (with_diagonal ? "1" : "0") + target);
        write_output(out, to_cube_text(trivial_relation_cube(v, with_diagonal)));
      }
      return 0;
    }
    if (app.got_subcommand(c_canon)) {
      echo_config("canon file=" + file);
      return cmd_canon(file);
    }
    if (app.got_subcommand(c_equiv)) {
      echo_config("equiv a=" + file + " b=" + file2);
      return cmd_equiv(file, file2);
    }
    if (app.got_subcommand(c_atop)) {
      echo_config("atop file=" + file +
                  " paratopy=" + (paratopy ? "1" : "0"));
      return cmd_atop(file, paratopy);
    }
    if (app.got_subcommand(c_exp)) {
      echo_config("export format=" + format + " file=" + file +
                  " out=" + (out.empty() ? "-" : out));
      return cmd_export(format, file, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
