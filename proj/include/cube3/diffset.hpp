#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cube3/cube.hpp"
#include "cube3/group.hpp"

namespace cube3 {

// Set of ordered element pairs over a group, the raw data of a difference
// set of propriety 3.
using PairSet = std::vector<std::pair<int, int>>;

// Ordinary (v,k,lambda) difference set test: every g != 0 has exactly
// lambda right-difference representations x*y^-1 from D, and the same
// count of left-difference representations x^-1*y. Absent when the counts
// are not constant; diagnostic via `why`.
std::optional<DesignParams> check_ordinary(const FiniteGroup& g,
                                           const std::vector<int>& d,
                                           std::string* why = nullptr);

// Per-g counts of mixed pairs with left difference x^-1*y = g:
// [g][0] over x in D, y outside; [g][1] over x outside, y in D. For a
// (v,k,lambda) difference set both columns are constant k-lambda off 0.
std::vector<std::array<int, 2>> cross_difference_count(const FiniteGroup& g,
                                                       const std::vector<int>& d);

// Difference set of propriety 3: D holds ordered pairs over G, and for
// every g != 0 three counts over ordered pairs (x,y),(x',y') from D are a
// common constant lambda:
//   1. x^-1*x' = y^-1*y' = g   (left differences in both coordinates)
//   2. x*x'^-1 = g and y = y'  (right difference in the first coordinate)
//   3. x = x' and y*y'^-1 = g  (right difference in the second coordinate)
// Returns (v,|D|,lambda); absent otherwise. Throws on duplicate or
// out-of-range pairs.
std::optional<DesignParams> check_ds3(const FiniteGroup& g, const PairSet& d,
                                      std::string* why = nullptr);

// Development dev D = {(x*w, y*w, w) | (x,y) in D, w in G} as a cube.
// Requires check_ds3 to accept; the result then verifies with the same
// parameters. Throws otherwise.
Cube dev(const FiniteGroup& g, const PairSet& d);

// Cube A(x,y,z) = [x*y*z in D] of an ordinary difference set. Every layer
// is an incidence matrix of a symmetric (v,k,lambda) design, so the cube
// verifies as (v, vk, vlambda). Throws unless check_ordinary accepts.
Cube difference_cube(const FiniteGroup& g, const std::vector<int>& d);

// Left translate (a,b)+D = {(a*x, b*y)}, returned sorted. Preserves
// check_ds3 parameters; developments of translates are equivalent cubes.
PairSet translate(const FiniteGroup& g, const PairSet& d, int a, int b);

// Automorphism phi with phi(D) = (a,b)+D; (a,b) is a translation witness.
struct Multiplier {
  GroupAutomorphism phi;
  int a = 0;
  int b = 0;
};

// All multipliers of a difference set of propriety 3. Closed under
// composition; each induces an autotopy of dev(D) via
// x -> a^-1*phi(x), y -> b^-1*phi(y), z -> phi(z).
std::vector<Multiplier> multipliers(const FiniteGroup& g, const PairSet& d);

// The (16,6,2) difference set {1, a^6, b, b^3, ab^3, a^3b^3} in Q16 under
// the element encoding a^i b^j -> i + 8j used by make_group("Q16").
std::vector<int> q16_difference_set();

// Nonzero quadratic residues mod q as a difference set in Cq; requires q
// prime, q = 3 (mod 4). Parameters (q, (q-1)/2, (q-3)/4).
std::vector<int> paley_difference_set(int q);

// Lift of a (4n-1, 2n-1, n-1) difference set: D^2 together with the
// off-diagonal Cartesian square of the complement. The result is a
// difference set of propriety 3 with parameters ((4n-1)(2n-1), (4n-1)(n-1)).
// Throws unless the input parameters have that shape.
PairSet paley_lift(const FiniteGroup& g, const std::vector<int>& d);

// Lifts of a (4n^2, 2n^2-n, n^2-n) difference set. Squares takes
// D^2 u complement^2 giving (4n^2, 2n^2(4n^2+1), 2n^2(2n^2+1));
// OffDiagonal removes both diagonals and Mixed crosses D with its
// complement both ways, giving (4n^2, 2n^2(4n^2-1), 2n^2(2n^2-1)).
enum class HadamardLift { Squares, OffDiagonal, Mixed };

PairSet hadamard_lift(const FiniteGroup& g, const std::vector<int>& d,
                      HadamardLift variant);

struct Ds3SearchOptions {
  int k = 0;
  int workers = 1;
  // Restrict candidates to unions of orbits of (phi,phi) on G x G.
  std::optional<GroupAutomorphism> multiplier;
  uint64_t max_nodes = 0;  // 0 = unlimited
};

struct Ds3SearchResult {
  int v = 0;
  int k = 0;
  // lambda -> canonical representatives of the equivalence classes of
  // dev(D) over all valid D (all classes, each exactly once).
  std::map<int, std::vector<Cube>> classes;
  // The valid sets the pruned search visited: a transversal hitting every
  // class at least once, not the full list of valid sets.
  std::vector<PairSet> sets;
  uint64_t nodes = 0;
  bool complete = true;
};

// Exhaustive classification of difference sets of propriety 3 of size k.
// Free search normalizes to sets containing (0,0) by the translate lemma;
// with a multiplier the candidate space is unions of its pair orbits and
// no normalization applies. Dedup is always by cube canonical form.
Ds3SearchResult search_ds3(const FiniteGroup& g, const Ds3SearchOptions& opt);

}  // namespace cube3
