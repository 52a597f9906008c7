#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cube3/cube.hpp"

namespace cube3 {

// v*v*v array over {+1,-1}, indexed like Cube (x-major).
struct PmOneArray {
  int v = 0;
  std::vector<int8_t> a;
  PmOneArray() = default;
  explicit PmOneArray(int v_)
      : v(v_), a(static_cast<std::size_t>(v_) * v_ * v_, 1) {}
  int8_t& at(int x, int y, int z) {
    return a[(static_cast<std::size_t>(x) * v + y) * v + z];
  }
  int8_t at(int x, int y, int z) const {
    return a[(static_cast<std::size_t>(x) * v + y) * v + z];
  }
};

// An array is (alpha,beta)-nice when every layer sums to alpha and every
// pair of distinct parallel layers has scalar product beta.
struct NiceParams {
  int alpha = 0;
  int beta = 0;
};
std::optional<NiceParams> nice_params(const PmOneArray& c);

// (J - C)/2 of an (alpha,beta)-nice array: a cube with
// k = (v^2-alpha)/2 and lambda = (v^2-2*alpha+beta)/4.
Cube nice_to_cube(const PmOneArray& c);

struct HadamardMatrix {
  int n = 0;
  std::vector<int8_t> a;
  HadamardMatrix() = default;
  explicit HadamardMatrix(int n_)
      : n(n_), a(static_cast<std::size_t>(n_) * n_, 1) {}
  int8_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  int8_t at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * n + c];
  }
};

bool is_hadamard(const HadamardMatrix& h);
bool is_normalized(const HadamardMatrix& h);  // first row all ones
// Common row and column sum when H is regular (sign included).
std::optional<int> is_regular(const HadamardMatrix& h);
// Column negations making row 0 positive, then row negations making
// column 0 positive.
HadamardMatrix normalize(const HadamardMatrix& h);
HadamardMatrix sylvester(int m);  // m a power of two

// v*v*v array over symbols {1..v^2}; every one of the 3v layers contains
// each symbol exactly once.
struct LayerRainbowCube {
  int v = 0;
  std::vector<int> a;
  LayerRainbowCube() = default;
  explicit LayerRainbowCube(int v_)
      : v(v_), a(static_cast<std::size_t>(v_) * v_ * v_, 1) {}
  int& at(int x, int y, int z) {
    return a[(static_cast<std::size_t>(x) * v + y) * v + z];
  }
  int at(int x, int y, int z) const {
    return a[(static_cast<std::size_t>(x) * v + y) * v + z];
  }
};

bool is_layer_rainbow(const LayerRainbowCube& l);
// L(x,y,z) = v*(L1(x,y)-1) + L2(y,z) over 1-based symbols.
LayerRainbowCube layer_rainbow_product(const LatinSquare& l1,
                                       const LatinSquare& l2);

// Doubly regular tournament: symmetric (4t-1, 2t-1, t-1) design with
// A + A^T = J - I.
struct Tournament {
  IntMatrix a;
  int t = 0;
};
std::optional<Tournament> as_tournament(const IntMatrix& a);
Tournament paley_tournament(int q);  // q prime, q = 3 (mod 4)

// B(x,y,z) = A(x, L(y,z)): a (v, v*k, v*lambda)-cube.
Cube design_times_latin(const IntMatrix& a, const LatinSquare& l);

// Column permutation of a design matrix with constant diagonal i,
// through bipartite matching.
IntMatrix diagonalize(const IntMatrix& a, int i);

// B(x,y,z) = A(x,y)+A(y,z)+A(x,z) mod 2 for an i-diagonal design matrix:
//   K0 = k(3v+4l-6k),       L0 = k(v-4l-2)+2l(2l+1),
//   K1 = k(3v+4l-2k)-4vl,   L1 = k(v-4l+2)+2l(2l-1).
Cube product_construction(const IntMatrix& a, int i);

// B_i(x,y,z) = A_i(x,y)+A_i(y,z)+A_i(z,x) mod 2 with A_1 = A_0 + I:
//   K0 = (2t-1)(4t+3), L0 = (2t-1)(2t+3),
//   K1 = 2(4t^2-5t+2), L1 = 4(t-1)^2.   Requires t >= 2.
Cube tournament_construction(const Tournament& t, int i);

enum class BlowupMode { normalized, regular };

// Substitute M_l(x,y,z) = H(l,x)H(l,y)H(l,z) for symbol l of L with the
// coordinate split w = v^2*(w1-1) + w2, then convert the nice array:
//   normalized: (v^3, v^4(v^2-1)/2, v^4(v^2-2)/4)
//   regular:    (v^3, v^3(v^3-1)/2, v^3(v^3-2)/4)
Cube hadamard_blowup(const HadamardMatrix& h, const LayerRainbowCube& l,
                     BlowupMode mode);

// A(x,y,z) = [exactly two coordinates coincide]: a (v, 3(v-1), v)-cube;
// with the diagonal included, a (v, 3v-2, v+2)-cube.
Cube trivial_relation_cube(int v, bool with_diagonal = false);

// Partition an order-v^3 cube into v^2 x v^2 x v^2 blocks A_ijk with
// i,j,k in {1..v} and test A_ijl = A_jli = A_lij for distinct i,j,l and
// A_iij = A_jji, A_iji = A_jij, A_ijj = A_jii for all i,j.
bool is_block_symmetric(const Cube& c, int v);

}  // namespace cube3
