#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cube3/construct.hpp"
#include "cube3/cube.hpp"
#include "cube3/diffset.hpp"
#include "cube3/equivalence.hpp"
#include "cube3/group.hpp"

#include "util.hpp"

using namespace cube3;
using namespace testutil;

namespace {

// All 6*(v!)^3 paratopies of order v.
std::vector<Paratopy> all_paratopies(int v) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(v);
  for (int i = 0; i < v; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::array<int, 3>> axes;
  std::array<int, 3> ax{0, 1, 2};
  do {
    axes.push_back(ax);
  } while (std::next_permutation(ax.begin(), ax.end()));
  std::vector<Paratopy> out;
  for (auto& a : perms)
    for (auto& b : perms)
      for (auto& c : perms)
        for (auto& m : axes) {
          Paratopy g = Paratopy::identity(v);
          g.perm = {a, b, c};
          g.axis_map = m;
          out.push_back(g);
        }
  return out;
}

}  // namespace

TEST_CASE("paratopy action is a group action") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    Cube c = random_cube(4, 0.3, rng);
    Paratopy g = random_paratopy(4, rng);
    Paratopy h = random_paratopy(4, rng);
    CHECK(apply(compose(g, h), c) == apply(g, apply(h, c)));
    CHECK(apply(inverse(g), apply(g, c)) == c);
    CHECK(apply(Paratopy::identity(4), c) == c);
  }
}

TEST_CASE("encoded graph shape and stabilizer orders") {
  // identity cube v=2: 3 axis + 6 coordinate + 2 cell vertices, 6+6 edges
  canon::ColoredGraph g = encode_graph(identity_cube(2), false);
  CHECK(g.n == 11);
  CHECK(g.edge_count() == 12);

  CHECK(paratopy_stabilizer_order(Cube(2)) == 48);  // (2!)^3 * 6
  CHECK(autotopy_order(Cube(3)) == 216);            // (3!)^3
  CHECK(autotopy_order(identity_cube(3)) == 6);     // diagonal S3
}

TEST_CASE("canonical form is a paratopy invariant") {
  std::mt19937 rng(5);
  Cube c = dev(make_group("C7"), {{0, 0}, {1, 2}, {3, 6}});
  CanonicalForm cf = canonical_form(c);
  CHECK_FALSE(cf.hex().empty());
  for (int trial = 0; trial < 100; ++trial) {
    Cube img = apply(random_paratopy(7, rng), c);
    CHECK(canonical_form(img) == cf);
  }
  // idempotence: re-canonicalizing the canonical cube changes nothing
  Cube cc = canonical_cube(c);
  CHECK(canonical_cube(cc) == cc);
  CHECK(canonical_form(cc) == cf);
}

TEST_CASE("the two order-5 latin cubes are inequivalent") {
  LatinSquare l1 = cyclic_latin(5);
  LatinSquare l2 = latin_from_rows(
      {"12345", "21534", "34152", "45213", "53421"});
  REQUIRE(is_latin_square(l2));
  Cube a = latin_to_cube(l1);
  Cube b = latin_to_cube(l2);
  REQUIRE(verify(a));
  REQUIRE(verify(b));
  CHECK(canonical_form(a) != canonical_form(b));
  CHECK_FALSE(equivalent(a, b));
}

TEST_CASE("every (v,1,0)-cube is equivalent to the identity cube") {
  std::mt19937 rng(9);
  for (int v = 2; v <= 4; ++v) {
    CanonicalForm idf = canonical_form(identity_cube(v));
    for (int trial = 0; trial < 10; ++trial) {
      Cube img = apply(random_paratopy(v, rng), identity_cube(v));
      CHECK(canonical_form(img) == idf);
    }
  }
}

TEST_CASE("equivalent: basic decisions") {
  std::mt19937 rng(13);
  Cube a = random_cube(3, 0.5, rng);
  CHECK(equivalent(a, complement(complement(a))));

  Paratopy swap12 = Paratopy::identity(3);
  swap12.axis_map = {1, 0, 2};
  CHECK(equivalent(a, apply(swap12, a)));

  CHECK_THROWS(equivalent(Cube(2), Cube(3)));
}

TEST_CASE("brute-force agreement at v=3") {
  std::mt19937 rng(17);
  auto paratopies = all_paratopies(3);
  REQUIRE(paratopies.size() == 6 * 6 * 6 * 6);
  int positives = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Cube a = random_cube(3, 0.4, rng);
    Cube b = trial % 2 == 0 ? apply(random_paratopy(3, rng), a)
                            : random_cube(3, 0.4, rng);
    bool brute = false;
    for (auto& g : paratopies)
      if (apply(g, a) == b) {
        brute = true;
        break;
      }
    CHECK(equivalent(a, b) == brute);
    positives += brute;
  }
  CHECK(positives >= 20);
}

TEST_CASE("autotopy and stabilizer order relation") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Cube c = random_cube(3, 0.4, rng);
    uint64_t at = autotopy_order(c);
    uint64_t st = paratopy_stabilizer_order(c);
    CHECK(st % at == 0);
    CHECK(st / at >= 1);
    CHECK(st / at <= 6);
  }
}

TEST_CASE("filter_classes") {
  std::mt19937 rng(29);
  Cube a = random_cube(4, 0.35, rng);
  Cube b = complement(a);  // different support size, so inequivalent
  REQUIRE(a.ones() != b.ones());
  std::vector<Cube> in = {a, apply(random_paratopy(4, rng), a), b,
                          apply(random_paratopy(4, rng), b), a};
  auto reps = filter_classes(in);
  CHECK(reps.size() == 2);
  // set semantics: input order does not change the class count
  std::reverse(in.begin(), in.end());
  CHECK(filter_classes(in).size() == 2);

  // all isotopy images of one cube collapse to one class
  std::vector<Cube> orbit;
  for (int trial = 0; trial < 8; ++trial)
    orbit.push_back(apply(random_paratopy(4, rng), a));
  CHECK(filter_classes(orbit).size() == 1);
}

TEST_CASE("normalize_identity") {
  Paratopy e = normalize_identity(identity_cube(4));
  CHECK(apply(e, identity_cube(4)) == identity_cube(4));

  // cyclic shift of x-symbols: the normalizer undoes it
  Cube shifted(4);
  for (int i = 0; i < 4; ++i) shifted.set((i + 1) % 4, i, i, true);
  Paratopy g = normalize_identity(shifted);
  CHECK(apply(g, shifted) == identity_cube(4));

  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    Cube img = apply(random_paratopy(5, rng), identity_cube(5));
    Paratopy h = normalize_identity(img);
    CHECK(apply(h, img) == identity_cube(5));
  }

  CHECK_THROWS(normalize_identity(trivial_relation_cube(3)));
}

TEST_CASE("fingerprint is invariant and discriminating") {
  std::mt19937 rng(37);
  Cube c = random_cube(4, 0.4, rng);
  auto fp = fingerprint(c);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(fingerprint(apply(random_paratopy(4, rng), c)) == fp);
  CHECK(fingerprint(complement(c)) != fp);
}
