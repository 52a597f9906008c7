#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cube3/cube.hpp"
#include "cube3/graph_canon.hpp"

namespace cube3 {

// An element of the cube symmetry group: three coordinate permutations plus
// an axis permutation. Acting on a cube, the support cell (c0,c1,c2) moves
// to the cell whose coordinate on axis axis_map[i] is perm[i][c_i].
struct Paratopy {
  int v = 0;
  std::array<std::vector<int>, 3> perm;
  std::array<int, 3> axis_map{0, 1, 2};

  static Paratopy identity(int v);
};

Cube apply(const Paratopy& g, const Cube& c);
Paratopy compose(const Paratopy& g, const Paratopy& f);  // apply f, then g
Paratopy inverse(const Paratopy& g);

// Colored incidence graph of the cube: one vertex per axis, one per
// coordinate value of each axis, one per 1-cell joined to its three
// coordinate vertices. With fix_axes the three axis vertices get distinct
// colors, so automorphisms correspond to autotopies; otherwise to the full
// stabilizer including axis permutations.
canon::ColoredGraph encode_graph(const Cube& c, bool fix_axes);

// Canonical form: byte string equal exactly for equivalent cubes.
struct CanonicalForm {
  std::vector<uint8_t> bytes;
  std::string hex() const;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const Cube& c);

// The canonically relabeled cube itself (support re-read under the
// canonical labeling); equivalent cubes map to the same cube.
Cube canonical_cube(const Cube& c);

bool equivalent(const Cube& a, const Cube& b);  // throws on order mismatch

// Order of the autotopy group (coordinate permutations fixing the cube,
// axes kept in place).
uint64_t autotopy_order(const Cube& c);

// Order of the full paratopy stabilizer (axis permutations allowed).
uint64_t paratopy_stabilizer_order(const Cube& c);

// Cheap paratopy-invariant used to pre-filter canonical form computations.
std::vector<int64_t> fingerprint(const Cube& c);

// One representative per equivalence class, sorted by canonical form.
std::vector<Cube> filter_classes(const std::vector<Cube>& cubes);

// For a cube with parameters (v,1,0), a paratopy carrying it to the
// diagonal cube A(x,y,z) = [x==y==z]. Throws if parameters differ.
Paratopy normalize_identity(const Cube& c);

Cube identity_cube(int v);

}  // namespace cube3
