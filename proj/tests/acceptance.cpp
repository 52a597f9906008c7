// Acceptance gate: one independently runnable criterion per published
// result family. Run as `acceptance --criterion N` (N in 1..9); with no
// arguments all criteria run in order. Each criterion prints exactly one
// "criterion N: PASS|FAIL" line on stdout and exits nonzero on failure;
// mismatch details go to stderr.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cube3/ast.hpp"
#include "cube3/construct.hpp"
#include "cube3/cube.hpp"
#include "cube3/diffset.hpp"
#include "cube3/enumerate.hpp"
#include "cube3/equivalence.hpp"
#include "cube3/group.hpp"

using namespace cube3;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    std::fprintf(stderr, "  FAILED: %s\n", what.c_str());
    ++failures;
  }
}

using ClassCounts = std::map<int, int>;  // lambda -> class count

std::string show(const ClassCounts& m) {
  std::ostringstream ss;
  ss << "{";
  bool first = true;
  for (auto [lam, n] : m) {
    if (!first) ss << ", ";
    first = false;
    ss << lam << ":" << n;
  }
  ss << "}";
  return ss.str();
}

ClassCounts counts_of(const std::map<int, std::vector<Cube>>& classes) {
  ClassCounts m;
  for (const auto& [lam, reps] : classes)
    if (!reps.empty()) m[lam] = static_cast<int>(reps.size());
  return m;
}

void expect_counts(const std::string& what, const ClassCounts& got,
                   const ClassCounts& want) {
  expect(got == want, what + ": got " + show(got) + " want " + show(want));
}

bool params_are(const Cube& c, int v, int k, int lam, const std::string& what) {
  auto p = verify(c);
  bool ok = p && p->v == v && p->k == k && p->lambda == lam;
  expect(ok, what + ": expected (" + std::to_string(v) + "," +
                 std::to_string(k) + "," + std::to_string(lam) + ")");
  return ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------- criterion 1

void criterion1() {
  // full classification by order and layer sum
  const std::vector<std::pair<std::pair<int, int>, ClassCounts>> table = {
      {{3, 2}, {{0, 2}}},  {{3, 3}, {{0, 1}, {1, 1}}},
      {{3, 4}, {{1, 1}}},  {{4, 2}, {{0, 8}}},
      {{4, 3}, {{0, 4}}},  {{4, 4}, {{0, 2}}},
      {{4, 5}, {}},        {{4, 6}, {{2, 117}}},
      {{4, 7}, {{2, 4}, {3, 2}}},
      {{4, 8}, {{4, 19}}}, {{5, 2}, {{0, 23}}},
      {{5, 3}, {{0, 251}}},
      {{5, 4}, {{0, 40}}}, {{6, 2}, {{0, 157}}},
  };
  for (const auto& [vk, want] : table) {
    EnumerationOptions opt;
    opt.v = vk.first;
    opt.k = vk.second;
    opt.workers = 8;
    EnumerationReport rep = enumerate_cubes(opt);
    std::string tag =
        "enumerate v=" + std::to_string(opt.v) + " k=" + std::to_string(opt.k);
    expect(rep.complete, tag + ": incomplete");
    expect_counts(tag, counts_of(rep.classes), want);
    if (opt.v == 4 && opt.k == 8) {
      int self = 0;
      for (const Cube& c : rep.classes[4])
        self += equivalent(c, complement(c));
      expect(self == 9, "v=4 k=8: self-complementary classes got " +
                            std::to_string(self) + " want 9");
    }
  }
}

// ---------------------------------------------------------------- criterion 2

void criterion2() {
  const std::vector<std::pair<int, ClassCounts>> c3 = {
      {2, {{0, 1}}}, {3, {{0, 1}, {1, 1}}}, {4, {{1, 1}}}};
  const std::vector<std::pair<int, ClassCounts>> c5 = {
      {2, {{0, 1}}},
      {3, {{0, 2}}},
      {4, {{0, 1}}},
      {5, {{0, 1}, {1, 1}}},
      {6, {{1, 4}}},
      {7, {{1, 1}, {2, 6}}},
      {8, {{2, 2}}},
      {9, {{2, 2}, {3, 2}, {4, 1}}},
      {10, {{3, 6}, {4, 15}}},
      {11, {{4, 14}, {5, 7}}},
      {12, {{5, 5}, {6, 1}}},
  };
  std::vector<std::pair<int, ClassCounts>> c7 = {
      {2, {{0, 2}}},
      {3, {{0, 7}}},
      {4, {{0, 10}}},
      {5, {{0, 9}}},
      {6, {{0, 4}, {1, 5}}},
      {7, {{0, 2}, {1, 26}}},
      {8, {{1, 104}, {2, 1}}},
      {9, {{1, 158}, {2, 11}}},
      {10, {{1, 24}, {2, 152}, {3, 1}}},
  };
  if (std::getenv("CUBE3_STRETCH")) {
    c7.push_back({11, {{2, 1258}, {3, 11}}});
    c7.push_back({12, {{2, 659}, {3, 542}, {4, 1}}});
    c7.push_back({13, {{2, 5}, {3, 3875}, {4, 56}}});
    c7.push_back({14, {{3, 1943}, {4, 2021}, {5, 17}}});
  }
  const std::vector<
      std::pair<std::string, const std::vector<std::pair<int, ClassCounts>>*>>
      groups = {{"C3", &c3}, {"C5", &c5}, {"C7", &c7}};
  for (const auto& [spec, rows] : groups) {
    auto g = make_group(spec);
    for (const auto& [k, want] : *rows) {
      Ds3SearchOptions opt;
      opt.k = k;
      opt.workers = 8;
      Ds3SearchResult res = search_ds3(g, opt);
      std::string tag = spec + " k=" + std::to_string(k);
      expect(res.complete, tag + ": incomplete");
      expect_counts(tag, counts_of(res.classes), want);
    }
  }
}

// ---------------------------------------------------------------- criterion 3

struct GroupPairRow {
  int k;
  ClassCounts first, second, total;
};

void check_group_pair(const std::string& spec1, const std::string& spec2,
                      const std::vector<GroupPairRow>& rows) {
  auto g1 = make_group(spec1);
  auto g2 = make_group(spec2);
  for (const GroupPairRow& row : rows) {
    Ds3SearchOptions opt;
    opt.k = row.k;
    opt.workers = 8;
    Ds3SearchResult r1 = search_ds3(g1, opt);
    Ds3SearchResult r2 = search_ds3(g2, opt);
    std::string tag = "k=" + std::to_string(row.k);
    expect(r1.complete && r2.complete, tag + ": incomplete");
    expect_counts(spec1 + " " + tag, counts_of(r1.classes), row.first);
    expect_counts(spec2 + " " + tag, counts_of(r2.classes), row.second);
    ClassCounts uni;
    std::set<int> lambdas;
    for (const auto& [lam, reps] : r1.classes)
      if (!reps.empty()) lambdas.insert(lam);
    for (const auto& [lam, reps] : r2.classes)
      if (!reps.empty()) lambdas.insert(lam);
    for (int lam : lambdas) {
      std::vector<Cube> both;
      if (auto it = r1.classes.find(lam); it != r1.classes.end())
        both.insert(both.end(), it->second.begin(), it->second.end());
      if (auto it = r2.classes.find(lam); it != r2.classes.end())
        both.insert(both.end(), it->second.begin(), it->second.end());
      uni[lam] = static_cast<int>(filter_classes(both).size());
    }
    expect_counts(spec1 + "+" + spec2 + " " + tag, uni, row.total);
  }
}

void criterion3() {
  check_group_pair("C4", "C2xC2",
                   {
                       {2, {{0, 1}}, {{0, 1}}, {{0, 2}}},
                       {3, {{0, 1}}, {{0, 1}}, {{0, 2}}},
                       {4, {}, {{0, 1}}, {{0, 1}}},
                       {5, {}, {}, {}},
                       {6, {{2, 5}}, {{2, 6}}, {{2, 7}}},
                       {7, {{2, 1}}, {{2, 1}}, {{2, 1}}},
                       {8, {}, {{4, 1}}, {{4, 1}}},
                   });
  check_group_pair(
      "C6", "S3",
      {
          {2, {{0, 3}}, {{0, 2}}, {{0, 4}}},
          {3, {{0, 7}}, {{0, 4}}, {{0, 9}}},
          {4, {{0, 5}}, {{0, 4}}, {{0, 9}}},
          {5, {{0, 2}}, {{0, 1}}, {{0, 3}}},
          {6, {}, {}, {}},
          {7, {}, {}, {}},
          {8, {{2, 10}}, {{2, 3}}, {{2, 13}}},
          {9, {{2, 158}}, {{2, 42}}, {{2, 200}}},
          {10, {{2, 71}}, {{2, 12}}, {{2, 83}}},
          {11, {{2, 2}, {4, 3}}, {}, {{2, 2}, {4, 3}}},
          {12, {{4, 283}}, {{4, 42}}, {{4, 322}}},
          {13, {{4, 91}}, {{4, 13}}, {{4, 99}}},
          {14, {{4, 9}, {6, 58}}, {{4, 1}, {6, 10}}, {{4, 9}, {6, 66}}},
          {15, {{6, 147}}, {{6, 29}}, {{6, 160}}},
          {16, {{6, 109}, {8, 10}}, {{6, 7}, {8, 6}}, {{6, 116}, {8, 14}}},
          {17, {{8, 180}}, {{8, 17}}, {{8, 193}}},
          {18, {{8, 264}, {10, 4}}, {{8, 30}, {10, 2}}, {{8, 292}, {10, 4}}},
      });
}

// ---------------------------------------------------------------- criterion 4

GroupAutomorphism find_multiplier(const FiniteGroup& g, int order) {
  for (const GroupAutomorphism& a : automorphisms(g))
    if (permutation_order(a) == order) return a;
  throw std::runtime_error("no automorphism of order " + std::to_string(order));
}

void criterion4() {
  struct Row {
    int k;
    ClassCounts ord2, ord3, total;
  };
  const std::vector<Row> rows = {
      {15, {}, {{3, 5}, {4, 63}, {6, 2}}, {{3, 5}, {4, 63}, {6, 2}}},
      {16, {{6, 1}}, {{4, 58}, {5, 4}, {6, 1}}, {{4, 58}, {5, 4}, {6, 2}}},
      {17, {{6, 1}}, {}, {{6, 1}}},
  };
  auto g = make_group("C7");
  GroupAutomorphism m2 = find_multiplier(g, 2);
  GroupAutomorphism m3 = find_multiplier(g, 3);
  for (const Row& row : rows) {
    Ds3SearchOptions opt;
    opt.k = row.k;
    opt.workers = 8;
    opt.multiplier = m2;
    Ds3SearchResult r2 = search_ds3(g, opt);
    opt.multiplier = m3;
    Ds3SearchResult r3 = search_ds3(g, opt);
    std::string tag = "C7 k=" + std::to_string(row.k);
    expect(r2.complete && r3.complete, tag + ": incomplete");
    expect_counts(tag + " order-2 multiplier", counts_of(r2.classes), row.ord2);
    expect_counts(tag + " order-3 multiplier", counts_of(r3.classes), row.ord3);
    ClassCounts uni;
    std::set<int> lambdas;
    for (const auto& [lam, reps] : r2.classes)
      if (!reps.empty()) lambdas.insert(lam);
    for (const auto& [lam, reps] : r3.classes)
      if (!reps.empty()) lambdas.insert(lam);
    for (int lam : lambdas) {
      std::vector<Cube> both;
      for (const Ds3SearchResult* r : {&r2, &r3})
        if (auto it = r->classes.find(lam); it != r->classes.end())
          both.insert(both.end(), it->second.begin(), it->second.end());
      uni[lam] = static_cast<int>(filter_classes(both).size());
    }
    expect_counts(tag + " union", uni, row.total);
  }
}

// ---------------------------------------------------------------- criterion 5

IntMatrix fano_matrix() {
  IntMatrix m(7);
  for (int r = 0; r < 7; ++r)
    for (int d : {0, 1, 3}) m.at(r, (r + d) % 7) = 1;
  return m;
}

LatinSquare cyclic_latin(int n) {
  LatinSquare l(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) l.at(r, c) = (r + c) % n;
  return l;
}

void criterion5() {
  IntMatrix fano = fano_matrix();
  params_are(design_times_latin(fano, cyclic_latin(7)), 7, 21, 7,
             "design-latin fano");
  params_are(product_construction(diagonalize(fano, 0), 0), 7, 21, 9,
             "product diag 0");
  params_are(product_construction(diagonalize(fano, 1), 1), 7, 29, 17,
             "product diag 1");
  Tournament t7 = paley_tournament(7);
  expect(t7.t == 2, "paley tournament q=7 is doubly regular");
  params_are(tournament_construction(t7, 0), 7, 33, 21, "tournament diag 0");
  params_are(tournament_construction(t7, 1), 7, 16, 4, "tournament diag 1");

  LayerRainbowCube rb = layer_rainbow_product(cyclic_latin(2), cyclic_latin(2));
  params_are(hadamard_blowup(sylvester(4), rb, BlowupMode::normalized), 8, 24,
             8, "normalized blow-up");
  HadamardMatrix hr(4);
  for (int i = 0; i < 4; ++i) hr.at(i, i) = -1;
  params_are(hadamard_blowup(hr, rb, BlowupMode::regular), 8, 28, 12,
             "regular blow-up");

  for (int v = 2; v <= 10; ++v) {
    params_are(trivial_relation_cube(v), v, 3 * (v - 1), v,
               "trivial v=" + std::to_string(v));
    params_are(trivial_relation_cube(v, true), v, 3 * v - 2, v + 2,
               "trivial+diagonal v=" + std::to_string(v));
  }

  for (auto [q, k, lam] : {std::tuple{7, 21, 7}, std::tuple{11, 55, 22}}) {
    auto g = make_group("C" + std::to_string(q));
    PairSet d = paley_lift(g, paley_difference_set(q));
    std::string tag = "paley lift q=" + std::to_string(q);
    expect(check_ds3(g, d).has_value(), tag + " accepted");
    params_are(dev(g, d), q, k, lam, tag + " development");
  }

  auto q16 = make_group("Q16");
  std::vector<int> base = q16_difference_set();
  expect(check_ordinary(q16, base).has_value(),
         "q16 base set is a (16,6,2) set");
  for (auto [mode, k, lam] : {std::tuple{HadamardLift::Squares, 136, 72},
                              std::tuple{HadamardLift::OffDiagonal, 120, 56},
                              std::tuple{HadamardLift::Mixed, 120, 56}}) {
    PairSet d = hadamard_lift(q16, base, mode);
    std::string tag = "hadamard lift mode " + std::to_string(int(mode));
    expect(check_ds3(q16, d).has_value(), tag + " accepted");
    params_are(dev(q16, d), 16, k, lam, tag + " development");
  }
}

// ---------------------------------------------------------------- criterion 6

void criterion6() {
  auto g = make_group("C7");
  const PairSet d1 = {{0, 0}, {1, 2}, {3, 6}};
  const PairSet d2 = {{0, 0}, {1, 3}, {2, 6}};
  const PairSet d3 = {{0, 1}, {0, 2}, {0, 4}, {1, 0}, {1, 1}, {1, 3}, {2, 0},
                      {2, 2}, {2, 6}, {3, 1}, {3, 5}, {3, 6}, {4, 0}, {4, 4},
                      {4, 5}, {5, 3}, {5, 4}, {5, 6}, {6, 2}, {6, 3}, {6, 5}};
  const PairSet d4 = {{0, 1}, {0, 2}, {0, 4}, {1, 0}, {1, 2}, {1, 4}, {2, 0},
                      {2, 1}, {2, 4}, {3, 3}, {3, 5}, {3, 6}, {4, 0}, {4, 1},
                      {4, 2}, {5, 3}, {5, 5}, {5, 6}, {6, 3}, {6, 5}, {6, 6}};
  expect(check_ds3(g, d1).has_value(), "d1 accepted");
  expect(check_ds3(g, d2).has_value(), "d2 accepted");
  params_are(dev(g, d1), 7, 3, 0, "dev(d1)");
  params_are(dev(g, d2), 7, 3, 0, "dev(d2)");
  expect(is_projection_cube(dev(g, d1)), "dev(d1) is a projection cube");
  expect(!is_projection_cube(dev(g, d2)), "dev(d2) is not a projection cube");

  expect(check_ds3(g, d3).has_value(), "d3 accepted");
  expect(check_ds3(g, d4).has_value(), "d4 accepted");
  params_are(dev(g, d3), 7, 21, 7, "dev(d3)");
  params_are(dev(g, d4), 7, 21, 7, "dev(d4)");
  auto p3 = propriety2_params(dev(g, d3));
  expect(p3 && p3->v == 7 && p3->k == 3 && p3->lambda == 1,
         "dev(d3) has propriety 2 with (7,3,1)");
  expect(!propriety2_params(dev(g, d4)), "dev(d4) has no propriety 2");
}

// ---------------------------------------------------------------- criterion 7

void criterion7() {
  auto g = make_group("Q16");
  Cube c = difference_cube(g, q16_difference_set());
  params_are(c, 16, 96, 32, "q16 difference cube");
  long long at = autotopy_order(c);
  expect(at == 1024,
         "q16 difference cube autotopy order got " + std::to_string(at));
}

// ---------------------------------------------------------------- criterion 8

std::map<int, std::set<CanonicalForm>> oracle_classes(int v, int k) {
  std::vector<uint64_t> masks;
  for (uint64_t m = 0; m < (uint64_t(1) << (v * v)); ++m)
    if (__builtin_popcountll(m) == k) masks.push_back(m);
  std::map<int, std::set<CanonicalForm>> out;
  std::vector<uint64_t> layers(v);
  for (uint64_t m0 : masks)
    for (uint64_t m1 : masks)
      for (uint64_t m2 : masks) {
        layers = {m0, m1, m2};
        Cube c(v);
        for (int z = 0; z < v; ++z)
          for (int x = 0; x < v; ++x)
            for (int y = 0; y < v; ++y)
              if (layers[z] >> (x * v + y) & 1) c.set(x, y, z, true);
        auto p = verify(c);
        if (p) out[p->lambda].insert(canonical_form(c));
      }
  return out;
}

std::vector<Paratopy> all_paratopies(int v) {
  std::vector<std::vector<int>> perms;
  std::vector<int> ident(v);
  for (int i = 0; i < v; ++i) ident[i] = i;
  std::vector<int> p = ident;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int axisMaps[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<Paratopy> out;
  for (const auto& p0 : perms)
    for (const auto& p1 : perms)
      for (const auto& p2 : perms)
        for (const auto& am : axisMaps) {
          Paratopy t(v);
          t.perm[0] = p0;
          t.perm[1] = p1;
          t.perm[2] = p2;
          t.axis_map = {am[0], am[1], am[2]};
          out.push_back(t);
        }
  return out;
}

void criterion8() {
  // pruned enumeration against a generate-filter oracle
  for (int k = 0; k <= 4; ++k) {
    auto oracle = oracle_classes(3, k);
    EnumerationOptions opt;
    opt.v = 3;
    opt.k = k;
    opt.workers = 8;
    EnumerationReport rep = enumerate_cubes(opt);
    std::string tag = "v=3 k=" + std::to_string(k);
    ClassCounts want;
    for (const auto& [lam, forms] : oracle)
      want[lam] = static_cast<int>(forms.size());
    expect_counts(tag + " oracle", counts_of(rep.classes), want);
    for (const auto& [lam, reps] : rep.classes) {
      std::set<CanonicalForm> got;
      for (const Cube& c : reps) got.insert(canonical_form(c));
      expect(got == oracle[lam],
             tag + " lambda=" + std::to_string(lam) +
                 ": representative classes differ from the oracle");
    }
  }

  // canonical equivalence against brute force over all 1296 paratopies
  std::vector<Paratopy> all = all_paratopies(3);
  std::mt19937 rng(20260814);
  std::uniform_real_distribution<double> du(0.2, 0.8);
  auto random_cube = [&](double density) {
    Cube c(3);
    std::bernoulli_distribution bit(density);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
          if (bit(rng)) c.set(x, y, z, true);
    return c;
  };
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Cube a = random_cube(du(rng));
    Cube b;
    if (trial % 2 == 0) {
      b = apply(all[rng() % all.size()], a);  // constructed positive
    } else {
      b = random_cube(du(rng));
    }
    bool brute = false;
    for (const Paratopy& p : all)
      if (apply(p, a) == b) {
        brute = true;
        break;
      }
    bool canon = canonical_form(a) == canonical_form(b);
    if (brute) ++positives;
    expect(brute == canon, "trial " + std::to_string(trial) +
                               ": canonical and brute-force equivalence "
                               "disagree");
  }
  expect(positives >= 100, "expected at least the constructed positives");
}

// ---------------------------------------------------------------- criterion 9

SteinerSystem fano_steiner() {
  SteinerSystem s;
  s.v = 7;
  for (int i = 0; i < 7; ++i) s.lines.push_back({i, (i + 1) % 7, (i + 3) % 7});
  return s;
}

SteinerSystem ag23_steiner() {
  SteinerSystem s;
  s.v = 9;
  for (int p = 0; p < 9; ++p)
    for (int q = p + 1; q < 9; ++q) {
      int rx = (6 - p / 3 - q / 3) % 3, ry = (6 - p % 3 - q % 3) % 3;
      int r = rx * 3 + ry;
      if (r > q) s.lines.push_back({p, q, r});
    }
  return s;
}

SteinerSystem pg23_steiner() {
  SteinerSystem s;
  s.v = 13;
  for (int i = 0; i < 13; ++i)
    s.lines.push_back({i, (i + 1) % 13, (i + 3) % 13, (i + 9) % 13});
  return s;
}

void check_bounds_and_complement(int v, int k) {
  EnumerationOptions opt;
  opt.v = v;
  opt.k = k;
  opt.workers = 8;
  EnumerationReport rep = enumerate_cubes(opt);
  std::string tag = "v=" + std::to_string(v) + " k=" + std::to_string(k);
  for (const auto& [lam, reps] : rep.classes) {
    LambdaBounds b = lambda_bounds(v, k);
    expect(b.lower <= lam && lam <= b.upper,
           tag + " lambda=" + std::to_string(lam) + " outside bounds [" +
               std::to_string(b.lower) + "," + std::to_string(b.upper) + "]");
    expect(lambda_admissible(v, k, lam),
           tag + " lambda=" + std::to_string(lam) + " not admissible");
    for (const Cube& c : reps) {
      auto p = verify(complement(c));
      expect(p && p->k == v * v - k && p->lambda == v * v - 2 * k + lam,
             tag + ": complement parameters wrong");
    }
  }
}

void check_strength(int v) {
  Cube plain = trivial_relation_cube(v);
  Cube diag = trivial_relation_cube(v, true);
  for (int t = 3; t <= v; ++t) {
    std::vector<int> pick(t);
    for (int i = 0; i < t; ++i) pick[i] = i;
    while (true) {
      for (int axis = 0; axis < 3; ++axis) {
        auto common = [&](const Cube& c) {
          int n = 0;
          for (int i = 0; i < v; ++i)
            for (int j = 0; j < v; ++j) {
              bool all = true;
              for (int idx = 0; idx < t && all; ++idx) {
                int l = pick[idx];
                int x = axis == 0 ? l : i;
                int y = axis == 1 ? l : (axis == 0 ? i : j);
                int z = axis == 2 ? l : j;
                all = c.get(x, y, z);
              }
              n += all;
            }
          return n;
        };
        expect(common(plain) == v - t,
               "strength v=" + std::to_string(v) + " t=" + std::to_string(t));
        expect(common(diag) == v,
               "strength+diagonal v=" + std::to_string(v) +
                   " t=" + std::to_string(t));
      }
      // next t-subset of {0..v-1}
      int i = t - 1;
      while (i >= 0 && pick[i] == v - t + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
}

bool ternary_identity_holds(const TripleScheme& s) {
  int m = s.rel.m, v = s.rel.v;
  std::vector<IntCube> adj;
  for (int i = 0; i <= m; ++i) adj.push_back(adjacency_cube(s.rel, i));
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j)
      for (int k = 0; k <= m; ++k) {
        IntCube lhs = ternary_product(adj[i], adj[j], adj[k]);
        IntCube rhs(v);
        for (int l = 0; l <= m; ++l) {
          int c = s.numbers.pval(i, j, k, l);
          if (!c) continue;
          for (std::size_t t = 0; t < rhs.a.size(); ++t)
            rhs.a[t] += static_cast<long long>(c) * adj[l].a[t];
        }
        if (!(lhs == rhs)) return false;
      }
  return true;
}

void check_scheme(const TripleScheme& s, const std::string& tag) {
  expect(ternary_identity_holds(s), tag + ": ternary identity");
  // every admissible nonempty index set: predicted (k,lambda) vs direct
  std::vector<int> extra = {0};
  for (int i = 4; i <= s.rel.m; ++i) extra.push_back(i);
  for (unsigned mask = 0; mask < (1u << extra.size()); ++mask)
    for (bool with123 : {false, true}) {
      std::vector<int> idx;
      if (with123) idx = {1, 2, 3};
      for (std::size_t i = 0; i < extra.size(); ++i)
        if (mask >> i & 1) idx.push_back(extra[i]);
      if (idx.empty()) continue;
      AstCubeResult r = ast_cube(s, idx);
      auto p = verify(r.cube);
      std::string what = tag + " index set of size " + std::to_string(idx.size());
      expect(p && p->v == r.predicted.v && p->k == r.predicted.k &&
                 p->lambda == r.predicted.lambda,
             what + ": formula disagrees with direct verification");
    }
}

void criterion9() {
  for (int k = 0; k <= 9; ++k) check_bounds_and_complement(3, k);
  for (int k = 0; k <= 6; ++k) check_bounds_and_complement(4, k);
  for (int v = 3; v <= 10; ++v) check_strength(v);
  for (int v = 2; v <= 9; ++v)
    check_scheme(trivial_ast(v), "trivial scheme v=" + std::to_string(v));
  check_scheme(steiner_ast(fano_steiner()), "steiner v=7");
  check_scheme(steiner_ast(ag23_steiner()), "steiner v=9");
  check_scheme(steiner_ast(pg23_steiner()), "steiner v=13");
}

// -----------------------------------------------------------------------------

struct Criterion {
  int id;
  void (*fn)();
  double budget;  // seconds, 0 = no stated budget
};

const Criterion kCriteria[] = {
    {1, criterion1, 600}, {2, criterion2, 1800}, {3, criterion3, 1800},
    {4, criterion4, 600}, {5, criterion5, 60},   {6, criterion6, 0},
    {7, criterion7, 600}, {8, criterion8, 0},    {9, criterion9, 0},
};

bool run_criterion(const Criterion& c) {
  failures = 0;
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.fn();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "  FAILED: unexpected exception: %s\n", e.what());
    ++failures;
  }
  double secs = seconds_since(t0);
  if (c.budget > 0 && secs > c.budget) {
    std::fprintf(stderr, "  FAILED: took %.1f s, budget %.0f s\n", secs,
                 c.budget);
    ++failures;
  }
  std::fprintf(stderr, "criterion %d finished in %.1f s\n", c.id, secs);
  std::printf("criterion %d: %s\n", c.id, failures ? "FAIL" : "PASS");
  std::fflush(stdout);
  return failures == 0;
}

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
      which = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  bool ok = true;
  for (const Criterion& c : kCriteria) {
    if (which && c.id != which) continue;
    ok = run_criterion(c) && ok;
  }
  if (which && (which < 1 || which > 9)) {
    std::fprintf(stderr, "no such criterion: %d\n", which);
    return 2;
  }
  return ok ? 0 : 1;
}
