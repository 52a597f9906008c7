#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "cube3/cube.hpp"
#include "cube3/diffset.hpp"
#include "cube3/equivalence.hpp"
#include "cube3/group.hpp"

using namespace cube3;

namespace {

const PairSet kD1 = {{0, 0}, {1, 2}, {3, 6}};
const PairSet kD2 = {{0, 0}, {1, 3}, {2, 6}};
const PairSet kD3 = {{0, 1}, {0, 2}, {0, 4}, {1, 0}, {1, 1}, {1, 3}, {2, 0},
                     {2, 2}, {2, 6}, {3, 1}, {3, 5}, {3, 6}, {4, 0}, {4, 4},
                     {4, 5}, {5, 3}, {5, 4}, {5, 6}, {6, 2}, {6, 3}, {6, 5}};
const PairSet kD4 = {{0, 1}, {0, 2}, {0, 4}, {1, 0}, {1, 2}, {1, 4}, {2, 0},
                     {2, 1}, {2, 4}, {3, 3}, {3, 5}, {3, 6}, {4, 0}, {4, 1},
                     {4, 2}, {5, 3}, {5, 5}, {5, 6}, {6, 3}, {6, 5}, {6, 6}};

}  // namespace

TEST_CASE("ordinary difference sets") {
  FiniteGroup c7 = make_group("C7");
  auto p = check_ordinary(c7, {1, 2, 4});
  REQUIRE(p);
  CHECK(p->v == 7);
  CHECK(p->k == 3);
  CHECK(p->lambda == 1);

  FiniteGroup c5 = make_group("C5");
  auto q = check_ordinary(c5, {0});
  REQUIRE(q);
  CHECK(q->k == 1);
  CHECK(q->lambda == 0);

  CHECK_FALSE(check_ordinary(c7, {1, 2, 3}));

  FiniteGroup q16 = make_group("Q16");
  auto r = check_ordinary(q16, q16_difference_set());
  REQUIRE(r);
  CHECK(r->v == 16);
  CHECK(r->k == 6);
  CHECK(r->lambda == 2);
}

TEST_CASE("cross differences are constant k - lambda") {
  FiniteGroup c7 = make_group("C7");
  for (auto d : {std::vector<int>{1, 2, 4}, std::vector<int>{0, 1, 3}}) {
    auto counts = cross_difference_count(c7, d);
    for (int g = 1; g < 7; ++g) {
      CHECK(counts[g][0] == 2);
      CHECK(counts[g][1] == 2);
    }
  }
  // full set: empty complement
  std::vector<int> all = {0, 1, 2, 3, 4, 5, 6};
  for (auto& row : cross_difference_count(c7, all)) {
    CHECK(row[0] == 0);
    CHECK(row[1] == 0);
  }
}

TEST_CASE("propriety-3 difference sets over C7") {
  FiniteGroup c7 = make_group("C7");
  for (auto* d : {&kD1, &kD2}) {
    auto p = check_ds3(c7, *d);
    REQUIRE(p);
    CHECK(p->v == 7);
    CHECK(p->k == 3);
    CHECK(p->lambda == 0);
  }
  for (auto* d : {&kD3, &kD4}) {
    auto p = check_ds3(c7, *d);
    REQUIRE(p);
    CHECK(p->k == 21);
    CHECK(p->lambda == 7);
  }
  // full square develops to the all-ones cube
  PairSet full;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) full.emplace_back(x, y);
  FiniteGroup c3 = make_group("C3");
  auto p = check_ds3(c3, full);
  REQUIRE(p);
  CHECK(p->k == 9);
  CHECK(p->lambda == 9);
  CHECK(dev(c3, full) == complement(Cube(3)));

  CHECK_THROWS(check_ds3(c7, PairSet{{0, 0}, {0, 0}}));
}

TEST_CASE("developments: projections and propriety") {
  FiniteGroup c7 = make_group("C7");
  Cube d1 = dev(c7, kD1);
  auto p1 = verify(d1);
  REQUIRE(p1);
  CHECK(p1->k == 3);
  CHECK(p1->lambda == 0);
  CHECK(is_projection_cube(d1));
  for (auto& pr : projections(d1)) {
    auto dp = symmetric_design_params(pr);
    REQUIRE(dp);
    CHECK(dp->k == 3);
    CHECK(dp->lambda == 1);
  }
  CHECK_FALSE(is_projection_cube(dev(c7, kD2)));

  auto p3 = propriety2_params(dev(c7, kD3));
  REQUIRE(p3);
  CHECK(p3->v == 7);
  CHECK(p3->k == 3);
  CHECK(p3->lambda == 1);
  CHECK_FALSE(propriety2_params(dev(c7, kD4)));
}

TEST_CASE("difference cubes") {
  FiniteGroup c7 = make_group("C7");
  Cube dc = difference_cube(c7, {1, 2, 4});
  auto p2 = propriety2_params(dc);
  REQUIRE(p2);
  CHECK(p2->lambda == 1);
  auto p3 = verify(dc);
  REQUIRE(p3);
  CHECK(p3->k == 21);
  CHECK(p3->lambda == 7);

  FiniteGroup c3 = make_group("C3");
  Cube d3 = difference_cube(c3, {0});
  auto q = propriety2_params(d3);
  REQUIRE(q);
  CHECK(q->k == 1);
  CHECK(q->lambda == 0);

  CHECK_THROWS(difference_cube(c7, {1, 2, 3}));
}

TEST_CASE("translate lemma") {
  FiniteGroup c7 = make_group("C7");
  CHECK(translate(c7, kD1, 0, 0) == kD1);
  Cube base = dev(c7, kD1);
  CHECK(equivalent(base, dev(c7, translate(c7, kD1, 3, 5))));
  auto p0 = check_ds3(c7, kD4);
  REQUIRE(p0);
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      auto p = check_ds3(c7, translate(c7, kD4, a, b));
      REQUIRE(p);
      CHECK(p->k == p0->k);
      CHECK(p->lambda == p0->lambda);
    }
}

TEST_CASE("multipliers of D1") {
  FiniteGroup c7 = make_group("C7");
  auto mult = multipliers(c7, kD1);
  // identity is always a multiplier with witness (0,0)
  bool has_identity = false;
  for (auto& m : mult) {
    bool is_id = true;
    for (int x = 0; x < 7; ++x) is_id = is_id && m.phi[x] == x;
    if (is_id) {
      has_identity = true;
      CHECK(m.a == 0);
      CHECK(m.b == 0);
    }
    // each multiplier's translated image really equals phi(D): oracle over
    // all 49 witnesses confirmed by re-deriving the witness
    PairSet img;
    for (auto& [x, y] : kD1) img.emplace_back(m.phi[x], m.phi[y]);
    std::sort(img.begin(), img.end());
    CHECK(img == translate(c7, kD1, m.a, m.b));
  }
  CHECK(has_identity);
  // x -> 2x is a multiplier of D1
  bool has_double = false;
  for (auto& m : mult) has_double = has_double || m.phi[1] == 2;
  CHECK(has_double);
  // multiplier set is closed under composition (subgroup of Aut(G))
  std::set<GroupAutomorphism> phis;
  for (auto& m : mult) phis.insert(m.phi);
  for (auto& f : mult)
    for (auto& g : mult) {
      GroupAutomorphism fg(7);
      for (int x = 0; x < 7; ++x) fg[x] = f.phi[g.phi[x]];
      CHECK(phis.count(fg) == 1);
    }
}

TEST_CASE("left/right difference asymmetry over S3") {
  // Witness set whose acceptance flips if condition 1 uses right instead
  // of left differences.
  FiniteGroup s3 = make_group("S3");
  PairSet d = {{3, 0}, {2, 1}};
  auto counts_ok = [&](bool left_first) {
    std::vector<int> c1(6, 0);
    for (auto& [x, y] : d)
      for (auto& [x2, y2] : d) {
        int gx = left_first ? s3.left_diff(x, x2) : s3.right_diff(x, x2);
        int gy = left_first ? s3.left_diff(y, y2) : s3.right_diff(y, y2);
        if (gx == gy && gx != 0) ++c1[gx];
      }
    std::set<int> distinct(c1.begin() + 1, c1.end());
    return distinct.size() == 1;
  };
  CHECK(counts_ok(true) != counts_ok(false));
}

TEST_CASE("paley difference sets and lifts") {
  FiniteGroup c7 = make_group("C7");
  CHECK(paley_difference_set(7) == std::vector<int>{1, 2, 4});
  PairSet lift7 = paley_lift(c7, paley_difference_set(7));
  auto p = check_ds3(c7, lift7);
  REQUIRE(p);
  CHECK(p->k == 21);
  CHECK(p->lambda == 7);
  REQUIRE(verify(dev(c7, lift7)));

  FiniteGroup c11 = make_group("C11");
  PairSet lift11 = paley_lift(c11, paley_difference_set(11));
  auto q = check_ds3(c11, lift11);
  REQUIRE(q);
  CHECK(q->k == 55);
  CHECK(q->lambda == 22);
  auto vq = verify(dev(c11, lift11));
  REQUIRE(vq);
  CHECK(vq->k == 55);
  CHECK(vq->lambda == 22);

  CHECK_THROWS(paley_lift(c7, {1, 2, 3}));  // not a difference set
}

TEST_CASE("hadamard lifts of the Q16 set") {
  FiniteGroup q16 = make_group("Q16");
  auto d = q16_difference_set();
  struct Row {
    HadamardLift variant;
    int k, lambda;
  };
  for (auto [variant, k, lambda] :
       {Row{HadamardLift::Squares, 136, 72},
        Row{HadamardLift::OffDiagonal, 120, 56},
        Row{HadamardLift::Mixed, 120, 56}}) {
    PairSet lift = hadamard_lift(q16, d, variant);
    auto p = check_ds3(q16, lift);
    REQUIRE(p);
    CHECK(p->v == 16);
    CHECK(p->k == k);
    CHECK(p->lambda == lambda);
    auto vp = verify(dev(q16, lift));
    REQUIRE(vp);
    CHECK(vp->k == k);
    CHECK(vp->lambda == lambda);
  }
}

TEST_CASE("multiplier-induced autotopies stabilize the development") {
  FiniteGroup c7 = make_group("C7");
  Cube base = dev(c7, kD1);
  for (auto& m : multipliers(c7, kD1)) {
    Paratopy g = Paratopy::identity(7);
    for (int x = 0; x < 7; ++x) {
      g.perm[0][x] = c7.op(c7.inv(m.a), m.phi[x]);
      g.perm[1][x] = c7.op(c7.inv(m.b), m.phi[x]);
      g.perm[2][x] = m.phi[x];
    }
    CHECK(apply(g, base) == base);
  }
}

TEST_CASE("search over C3: free and brute-forced") {
  FiniteGroup c3 = make_group("C3");
  // oracle: all k-subsets of the 9 pairs, checked and deduplicated
  for (int k = 2; k <= 4; ++k) {
    std::map<int, std::vector<Cube>> oracle;
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) pairs.emplace_back(x, y);
    for (unsigned mask = 0; mask < 512u; ++mask) {
      if (std::popcount(mask) != k) continue;
      PairSet d;
      for (int i = 0; i < 9; ++i)
        if (mask >> i & 1) d.push_back(pairs[i]);
      auto p = check_ds3(c3, d);
      if (!p) continue;
      Cube c = canonical_cube(dev(c3, d));
      auto& reps = oracle[p->lambda];
      if (std::find(reps.begin(), reps.end(), c) == reps.end())
        reps.push_back(c);
    }
    Ds3SearchOptions opt;
    opt.k = k;
    auto res = search_ds3(c3, opt);
    REQUIRE(res.classes.size() == oracle.size());
    for (auto& [lam, reps] : oracle)
      CHECK(res.classes.at(lam).size() == reps.size());
  }
  // published counts: (3,2,0)=1, (3,3,0)=1, (3,3,1)=1, (3,4,1)=1
  Ds3SearchOptions o2, o3, o4;
  o2.k = 2;
  o3.k = 3;
  o4.k = 4;
  auto r2 = search_ds3(c3, o2);
  CHECK(r2.classes.at(0).size() == 1);
  CHECK(r2.classes.size() == 1);
  auto r3 = search_ds3(c3, o3);
  CHECK(r3.classes.at(0).size() == 1);
  CHECK(r3.classes.at(1).size() == 1);
  auto r4 = search_ds3(c3, o4);
  CHECK(r4.classes.at(1).size() == 1);
  CHECK(r4.classes.size() == 1);
}

TEST_CASE("search with a multiplier: C7 k=18 order 3") {
  FiniteGroup c7 = make_group("C7");
  Ds3SearchOptions opt;
  opt.k = 18;
  for (auto& phi : automorphisms(c7))
    if (permutation_order(phi) == 3) {
      opt.multiplier = phi;
      break;
    }
  REQUIRE(opt.multiplier);
  auto res = search_ds3(c7, opt);
  CHECK(res.classes.at(5).size() == 24);
  CHECK(res.classes.at(6).size() == 5);
  CHECK(res.classes.at(7).size() == 36);
  CHECK(res.classes.size() == 3);
}

TEST_CASE("q16 difference cube stabilizer data") {
  FiniteGroup q16 = make_group("Q16");
  Cube dc = difference_cube(q16, q16_difference_set());
  auto p2 = propriety2_params(dc);
  REQUIRE(p2);
  CHECK(p2->k == 6);
  CHECK(p2->lambda == 2);
  auto p3 = verify(dc);
  REQUIRE(p3);
  CHECK(p3->k == 96);
  CHECK(p3->lambda == 32);
}
