#include "cube3/construct.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cube3/group.hpp"

namespace cube3 {

std::optional<NiceParams> nice_params(const PmOneArray& c) {
  const int v = c.v;
  if (v < 1) return std::nullopt;
  for (int8_t e : c.a)
    if (e != 1 && e != -1) return std::nullopt;
  auto cell = [&](int axis, int layer, int i, int j) {
    switch (axis) {
      case 0: return c.at(layer, i, j);
      case 1: return c.at(i, layer, j);
      default: return c.at(i, j, layer);
    }
  };
  bool haveAlpha = false, haveBeta = false;
  int alpha = 0, beta = 0;
  for (int axis = 0; axis < 3; ++axis)
    for (int l1 = 0; l1 < v; ++l1) {
      int s = 0;
      for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) s += cell(axis, l1, i, j);
      if (!haveAlpha) {
        alpha = s;
        haveAlpha = true;
      } else if (s != alpha) {
        return std::nullopt;
      }
      for (int l2 = l1 + 1; l2 < v; ++l2) {
        int d = 0;
        for (int i = 0; i < v; ++i)
          for (int j = 0; j < v; ++j)
            d += cell(axis, l1, i, j) * cell(axis, l2, i, j);
        if (!haveBeta) {
          beta = d;
          haveBeta = true;
        } else if (d != beta) {
          return std::nullopt;
        }
      }
    }
  if (haveBeta && beta < 0) return std::nullopt;
  return NiceParams{alpha, beta};
}

Cube nice_to_cube(const PmOneArray& c) {
  auto np = nice_params(c);
  if (!np)
    throw std::invalid_argument("nice_to_cube: array is not (alpha,beta)-nice");
  const int v = c.v;
  int kNum = v * v - np->alpha;
  int lNum = v * v - 2 * np->alpha + np->beta;
  if (kNum % 2 != 0 || lNum % 4 != 0)
    throw std::invalid_argument("nice_to_cube: parameters are not integral");
  Cube b(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        if (c.at(x, y, z) == -1) b.set(x, y, z, true);
  return b;
}

bool is_hadamard(const HadamardMatrix& h) {
  const int n = h.n;
  if (n < 1 || static_cast<int>(h.a.size()) != n * n) return false;
  for (int8_t e : h.a)
    if (e != 1 && e != -1) return false;
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = r1 + 1; r2 < n; ++r2) {
      int d = 0;
      for (int c = 0; c < n; ++c) d += h.at(r1, c) * h.at(r2, c);
      if (d != 0) return false;
    }
  return true;
}

bool is_normalized(const HadamardMatrix& h) {
  for (int c = 0; c < h.n; ++c)
    if (h.at(0, c) != 1) return false;
  return true;
}

std::optional<int> is_regular(const HadamardMatrix& h) {
  const int n = h.n;
  if (n < 1) return std::nullopt;
  int s = 0;
  for (int c = 0; c < n; ++c) s += h.at(0, c);
  for (int r = 0; r < n; ++r) {
    int rs = 0, cs = 0;
    for (int c = 0; c < n; ++c) {
      rs += h.at(r, c);
      cs += h.at(c, r);
    }
    if (rs != s || cs != s) return std::nullopt;
  }
  return s;
}

HadamardMatrix normalize(const HadamardMatrix& h) {
  HadamardMatrix out = h;
  for (int c = 0; c < out.n; ++c)
    if (out.at(0, c) == -1)
      for (int r = 0; r < out.n; ++r) out.at(r, c) = -out.at(r, c);
  for (int r = 0; r < out.n; ++r)
    if (out.at(r, 0) == -1)
      for (int c = 0; c < out.n; ++c) out.at(r, c) = -out.at(r, c);
  return out;
}

HadamardMatrix sylvester(int m) {
  if (m < 1 || (m & (m - 1)) != 0)
    throw std::invalid_argument("sylvester: order must be a power of two");
  HadamardMatrix h(1);
  while (h.n < m) {
    HadamardMatrix d(2 * h.n);
    for (int r = 0; r < h.n; ++r)
      for (int c = 0; c < h.n; ++c) {
        d.at(r, c) = h.at(r, c);
        d.at(r, c + h.n) = h.at(r, c);
        d.at(r + h.n, c) = h.at(r, c);
        d.at(r + h.n, c + h.n) = static_cast<int8_t>(-h.at(r, c));
      }
    h = std::move(d);
  }
  return h;
}

bool is_layer_rainbow(const LayerRainbowCube& l) {
  const int v = l.v;
  if (v < 1 || static_cast<int>(l.a.size()) != v * v * v) return false;
  for (int e : l.a)
    if (e < 1 || e > v * v) return false;
  auto cell = [&](int axis, int layer, int i, int j) {
    switch (axis) {
      case 0: return l.at(layer, i, j);
      case 1: return l.at(i, layer, j);
      default: return l.at(i, j, layer);
    }
  };
  std::vector<char> seen(v * v);
  for (int axis = 0; axis < 3; ++axis)
    for (int layer = 0; layer < v; ++layer) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) {
          int s = cell(axis, layer, i, j) - 1;
          if (seen[s]) return false;
          seen[s] = 1;
        }
    }
  return true;
}

LayerRainbowCube layer_rainbow_product(const LatinSquare& l1,
                                       const LatinSquare& l2) {
  if (l1.n != l2.n)
    throw std::invalid_argument("layer_rainbow_product: order mismatch");
  if (!is_latin_square(l1) || !is_latin_square(l2))
    throw std::invalid_argument("layer_rainbow_product: not a Latin square");
  const int v = l1.n;
  LayerRainbowCube l(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        l.at(x, y, z) = v * l1.at(x, y) + l2.at(y, z) + 1;
  return l;
}

std::optional<Tournament> as_tournament(const IntMatrix& a) {
  const int n = a.n;
  if (n < 3 || n % 4 != 3) return std::nullopt;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (a.at(r, c) != 0 && a.at(r, c) != 1) return std::nullopt;
      int want = r == c ? 0 : 1;
      if (a.at(r, c) + a.at(c, r) != want) return std::nullopt;
    }
  auto dp = symmetric_design_params(a);
  int t = (n + 1) / 4;
  if (!dp || dp->k != 2 * t - 1 || dp->lambda != t - 1) return std::nullopt;
  return Tournament{a, t};
}

Tournament paley_tournament(int q) {
  if (q % 4 != 3) throw std::invalid_argument("paley_tournament: q != 3 mod 4");
  PrimeField f = prime_field(q);  // validates primality
  IntMatrix a(q);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      a.at(x, y) = x != y && f.is_qr(f.sub(y, x)) ? 1 : 0;
  auto t = as_tournament(a);
  if (!t) throw std::invalid_argument("paley_tournament: validation failed");
  return *t;
}

Cube design_times_latin(const IntMatrix& a, const LatinSquare& l) {
  if (a.n != l.n)
    throw std::invalid_argument("design_times_latin: order mismatch");
  if (!symmetric_design_params(a))
    throw std::invalid_argument("design_times_latin: not a symmetric design");
  if (!is_latin_square(l))
    throw std::invalid_argument("design_times_latin: not a Latin square");
  const int v = a.n;
  Cube b(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        if (a.at(x, l.at(y, z))) b.set(x, y, z, true);
  return b;
}

IntMatrix diagonalize(const IntMatrix& a, int i) {
  if (i != 0 && i != 1) throw std::invalid_argument("diagonalize: i not 0/1");
  auto dp = symmetric_design_params(a);
  if (!dp) throw std::invalid_argument("diagonalize: not a symmetric design");
  const int n = a.n;
  // match row x to a column c with A(x,c) == i by augmenting paths
  std::vector<int> matchCol(n, -1), matchRow(n, -1);
  std::vector<char> vis(n);
  auto augment = [&](auto&& self, int x) -> bool {
    for (int c = 0; c < n; ++c) {
      if (a.at(x, c) != i || vis[c]) continue;
      vis[c] = 1;
      if (matchCol[c] < 0 || self(self, matchCol[c])) {
        matchCol[c] = x;
        matchRow[x] = c;
        return true;
      }
    }
    return false;
  };
  for (int x = 0; x < n; ++x) {
    std::fill(vis.begin(), vis.end(), 0);
    if (!augment(augment, x))
      throw std::invalid_argument("diagonalize: no perfect matching");
  }
  IntMatrix out(n);
  for (int x = 0; x < n; ++x)
    for (int j = 0; j < n; ++j) out.at(x, j) = a.at(x, matchRow[j]);
  return out;
}

Cube product_construction(const IntMatrix& a, int i) {
  if (i != 0 && i != 1)
    throw std::invalid_argument("product_construction: i not 0/1");
  if (!symmetric_design_params(a))
    throw std::invalid_argument("product_construction: not a symmetric design");
  const int v = a.n;
  for (int x = 0; x < v; ++x)
    if (a.at(x, x) != i)
      throw std::invalid_argument("product_construction: diagonal not " +
                                  std::to_string(i));
  Cube b(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        if ((a.at(x, y) + a.at(y, z) + a.at(x, z)) % 2) b.set(x, y, z, true);
  return b;
}

Cube tournament_construction(const Tournament& t, int i) {
  if (i != 0 && i != 1)
    throw std::invalid_argument("tournament_construction: i not 0/1");
  if (t.t < 2)
    throw std::invalid_argument("tournament_construction: requires t >= 2");
  const int v = 4 * t.t - 1;
  if (t.a.n != v || !as_tournament(t.a))
    throw std::invalid_argument("tournament_construction: invalid tournament");
  IntMatrix ai = t.a;
  if (i == 1)
    for (int x = 0; x < v; ++x) ai.at(x, x) += 1;
  Cube b(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        if ((ai.at(x, y) + ai.at(y, z) + ai.at(z, x)) % 2) b.set(x, y, z, true);
  return b;
}

Cube hadamard_blowup(const HadamardMatrix& h, const LayerRainbowCube& l,
                     BlowupMode mode) {
  const int v = l.v;
  if (!is_layer_rainbow(l))
    throw std::invalid_argument("hadamard_blowup: not a layer-rainbow cube");
  if (h.n != v * v)
    throw std::invalid_argument("hadamard_blowup: H order must be v^2");
  if (!is_hadamard(h))
    throw std::invalid_argument("hadamard_blowup: not a Hadamard matrix");
  HadamardMatrix hh = h;
  if (mode == BlowupMode::normalized) {
    hh = normalize(hh);
  } else {
    auto s = is_regular(hh);
    if (!s) throw std::invalid_argument("hadamard_blowup: H not regular");
    if (*s < 0)
      for (int8_t& e : hh.a) e = static_cast<int8_t>(-e);
  }
  const int n = v * v * v;
  PmOneArray c(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        int row = l.at(x / (v * v), y / (v * v), z / (v * v)) - 1;
        c.at(x, y, z) = static_cast<int8_t>(hh.at(row, x % (v * v)) *
                                            hh.at(row, y % (v * v)) *
                                            hh.at(row, z % (v * v)));
      }
  auto np = nice_params(c);
  int wantAlpha = mode == BlowupMode::normalized ? v * v * v * v : v * v * v;
  if (!np || np->alpha != wantAlpha || np->beta != 0)
    throw std::invalid_argument("hadamard_blowup: substitution not nice");
  return nice_to_cube(c);
}

Cube trivial_relation_cube(int v, bool with_diagonal) {
  if (v < 2) throw std::invalid_argument("trivial_relation_cube: v < 2");
  Cube c(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z) {
        bool two = (x == y && y != z) || (x == z && z != y) || (y == z && x != y);
        bool diag = x == y && y == z;
        if (two || (with_diagonal && diag)) c.set(x, y, z, true);
      }
  return c;
}

bool is_block_symmetric(const Cube& c, int v) {
  if (v < 1 || c.order() != v * v * v)
    throw std::invalid_argument("is_block_symmetric: order must be v^3");
  const int w = v * v;
  auto blockEq = [&](int i1, int j1, int k1, int i2, int j2, int k2) {
    for (int a = 0; a < w; ++a)
      for (int b = 0; b < w; ++b)
        for (int d = 0; d < w; ++d)
          if (c.get(i1 * w + a, j1 * w + b, k1 * w + d) !=
              c.get(i2 * w + a, j2 * w + b, k2 * w + d))
            return false;
    return true;
  };
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j) {
      if (i != j) {
        if (!blockEq(i, i, j, j, j, i)) return false;
        if (!blockEq(i, j, i, j, i, j)) return false;
        if (!blockEq(i, j, j, j, i, i)) return false;
      }
      for (int k = 0; k < v; ++k)
        if (i != j && j != k && i != k) {
          if (!blockEq(i, j, k, j, k, i)) return false;
          if (!blockEq(i, j, k, k, i, j)) return false;
        }
    }
  return true;
}

}  // namespace cube3
