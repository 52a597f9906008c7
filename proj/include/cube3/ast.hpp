#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cube3/cube.hpp"

namespace cube3 {

// Labeling of Omega^3 by relation indices 0..m.
struct TripleLabeling {
  int v = 0;
  int m = 0;
  std::vector<int> rel;
  TripleLabeling() = default;
  TripleLabeling(int v_, int m_)
      : v(v_), m(m_), rel(static_cast<std::size_t>(v_) * v_ * v_, 0) {}
  int& at(int x, int y, int z) {
    return rel[(static_cast<std::size_t>(x) * v + y) * v + z];
  }
  int at(int x, int y, int z) const {
    return rel[(static_cast<std::size_t>(x) * v + y) * v + z];
  }
};

// First violated scheme condition, 1..4, with a witness triple.
struct AstViolation {
  int condition = 0;
  std::array<int, 3> witness{};
  std::string message;
};

struct IntersectionNumbers {
  int m = 0;
  std::vector<int> p;                  // (m+1)^4 entries p[i][j][k][l]
  std::array<std::vector<int>, 3> n;   // per-axis counts over distinct pairs
  int pval(int i, int j, int k, int l) const {
    int s = m + 1;
    return p[((static_cast<std::size_t>(i) * s + j) * s + k) * s + l];
  }
};

struct TripleScheme {
  TripleLabeling rel;
  IntersectionNumbers numbers;
  bool symmetric = false;
};

// Checks the four scheme conditions: the fixed diagonal relations, closure
// of the relation set under coordinate permutations, per-axis count
// constancy, and intersection-number constancy. Returns the scheme with
// full p and n tables, or reports the first violation through `why`.
std::optional<TripleScheme> validate_ast(const TripleLabeling& rel,
                                         AstViolation* why = nullptr);

// Dense v*v*v integer array for the ternary product algebra.
struct IntCube {
  int v = 0;
  std::vector<long long> a;
  IntCube() = default;
  explicit IntCube(int v_)
      : v(v_), a(static_cast<std::size_t>(v_) * v_ * v_, 0) {}
  long long& at(int x, int y, int z) {
    return a[(static_cast<std::size_t>(x) * v + y) * v + z];
  }
  long long at(int x, int y, int z) const {
    return a[(static_cast<std::size_t>(x) * v + y) * v + z];
  }
  friend bool operator==(const IntCube&, const IntCube&) = default;
};

// D(x,y,z) = sum over w of A(w,y,z) B(x,w,z) C(x,y,w).
IntCube ternary_product(const IntCube& a, const IntCube& b, const IntCube& c);

// 0/1 adjacency array of relation i.
IntCube adjacency_cube(const TripleLabeling& rel, int i);

struct AstCubeResult {
  Cube cube;
  DesignParams predicted;
};

// Indicator cube of the union of relations in I, for a symmetric scheme
// and I nonempty with either {1,2,3} inside I or disjoint from it:
//   k = sum_{i,j in I} sum_k (p_ijk^0 + (v-1) p_ijk^3)
//   lambda = sum_{i,j in I} sum_{k,l} p_ijk^l n_l    (axis-3 counts)
AstCubeResult ast_cube(const TripleScheme& s, const std::vector<int>& idx);

struct SteinerSystem {
  int v = 0;
  std::vector<std::vector<int>> lines;
};

// Common line size k when every point pair lies on exactly one line.
std::optional<int> steiner_block_size(const SteinerSystem& s);

// m=5 scheme of an S(2,k,v): distinct triples are in relation 4 when
// collinear and 5 otherwise.
TripleScheme steiner_ast(const SteinerSystem& s);

// m=4 scheme with relation 4 holding all distinct-coordinate triples.
TripleScheme trivial_ast(int v);

}  // namespace cube3
