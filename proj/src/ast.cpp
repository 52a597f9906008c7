#include "cube3/ast.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cube3 {
namespace {

constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

int diagonal_label(int x, int y, int z) {
  if (x == y && y == z) return 0;
  if (y == z) return 1;
  if (x == z) return 2;
  if (x == y) return 3;
  return -1;  // distinct coordinates
}

void fail(AstViolation* why, int cond, std::array<int, 3> w,
          std::string msg) {
  if (why) *why = AstViolation{cond, w, std::move(msg)};
}

}  // namespace

std::optional<TripleScheme> validate_ast(const TripleLabeling& rel,
                                         AstViolation* why) {
  const int v = rel.v, m = rel.m;
  if (v < 2 || m < 4 ||
      rel.rel.size() != static_cast<std::size_t>(v) * v * v) {
    fail(why, 1, {0, 0, 0}, "labeling shape invalid");
    return std::nullopt;
  }

  // condition I: the four diagonal relations are fixed
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z) {
        int r = rel.at(x, y, z);
        if (r < 0 || r > m) {
          fail(why, 1, {x, y, z}, "label out of range");
          return std::nullopt;
        }
        int d = diagonal_label(x, y, z);
        if (d >= 0 ? r != d : r < 4) {
          fail(why, 1, {x, y, z}, "diagonal relation mismatch");
          return std::nullopt;
        }
      }

  // condition II: coordinate permutations map relations onto relations
  std::array<std::vector<int>, 6> img;
  for (int s = 0; s < 6; ++s) {
    img[s].assign(m + 1, -1);
    for (int x = 0; x < v; ++x)
      for (int y = 0; y < v; ++y)
        for (int z = 0; z < v; ++z) {
          int t[3] = {x, y, z};
          int i = rel.at(x, y, z);
          int j = rel.at(t[kPerms[s][0]], t[kPerms[s][1]], t[kPerms[s][2]]);
          if (img[s][i] < 0)
            img[s][i] = j;
          else if (img[s][i] != j) {
            fail(why, 2, {x, y, z}, "permuted relation is not a relation");
            return std::nullopt;
          }
        }
  }

  // condition III: per-axis counts over distinct pairs
  IntersectionNumbers num;
  num.m = m;
  for (int axis = 0; axis < 3; ++axis) {
    num.n[axis].assign(m + 1, 0);
    bool have = false;
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b) {
        if (a == b) continue;
        std::vector<int> cnt(m + 1, 0);
        for (int w = 0; w < v; ++w) {
          int x = axis == 0 ? w : a;
          int y = axis == 1 ? w : (axis == 0 ? a : b);
          int z = axis == 2 ? w : b;
          ++cnt[rel.at(x, y, z)];
        }
        if (!have) {
          num.n[axis] = cnt;
          have = true;
        } else if (cnt != num.n[axis]) {
          fail(why, 3,
               {axis == 0 ? -1 : a, axis == 1 ? -1 : (axis == 0 ? a : b),
                axis == 2 ? -1 : b},
               "axis count depends on the pair");
          return std::nullopt;
        }
      }
  }

  // condition IV: intersection numbers
  const int s1 = m + 1;
  const std::size_t cube = static_cast<std::size_t>(s1) * s1 * s1;
  std::vector<std::vector<int>> ref(m + 1);
  std::vector<int> tmp(cube);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z) {
        int l = rel.at(x, y, z);
        std::fill(tmp.begin(), tmp.end(), 0);
        for (int w = 0; w < v; ++w) {
          int i = rel.at(w, y, z);
          int j = rel.at(x, w, z);
          int k = rel.at(x, y, w);
          ++tmp[(static_cast<std::size_t>(i) * s1 + j) * s1 + k];
        }
        if (ref[l].empty())
          ref[l] = tmp;
        else if (ref[l] != tmp) {
          fail(why, 4, {x, y, z}, "intersection number depends on the triple");
          return std::nullopt;
        }
      }

  num.p.assign(cube * s1, 0);
  for (int l = 0; l <= m; ++l) {
    if (ref[l].empty()) continue;
    for (std::size_t ijk = 0; ijk < cube; ++ijk)
      num.p[ijk * s1 + l] = ref[l][ijk];
  }

  TripleScheme out;
  out.rel = rel;
  out.numbers = std::move(num);
  out.symmetric = true;
  for (int s = 0; s < 6 && out.symmetric; ++s)
    for (int i = 4; i <= m && out.symmetric; ++i)
      if (img[s][i] >= 0 && img[s][i] != i) out.symmetric = false;
  return out;
}

IntCube ternary_product(const IntCube& a, const IntCube& b,
                        const IntCube& c) {
  if (a.v != b.v || a.v != c.v)
    throw std::invalid_argument("ternary_product: order mismatch");
  const int v = a.v;
  IntCube d(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z) {
        long long s = 0;
        for (int w = 0; w < v; ++w)
          s += a.at(w, y, z) * b.at(x, w, z) * c.at(x, y, w);
        d.at(x, y, z) = s;
      }
  return d;
}

IntCube adjacency_cube(const TripleLabeling& rel, int i) {
  IntCube a(rel.v);
  for (int x = 0; x < rel.v; ++x)
    for (int y = 0; y < rel.v; ++y)
      for (int z = 0; z < rel.v; ++z)
        if (rel.at(x, y, z) == i) a.at(x, y, z) = 1;
  return a;
}

AstCubeResult ast_cube(const TripleScheme& s, const std::vector<int>& idx) {
  if (!s.symmetric) throw std::invalid_argument("ast_cube: scheme not symmetric");
  const int v = s.rel.v, m = s.rel.m;
  std::set<int> I(idx.begin(), idx.end());
  if (I.empty()) throw std::invalid_argument("ast_cube: empty index set");
  for (int i : I)
    if (i < 0 || i > m) throw std::invalid_argument("ast_cube: bad index");
  bool all123 = I.count(1) && I.count(2) && I.count(3);
  bool any123 = I.count(1) || I.count(2) || I.count(3);
  if (any123 && !all123)
    throw std::invalid_argument(
        "ast_cube: index set must contain all of 1,2,3 or none");

  Cube c(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        if (I.count(s.rel.at(x, y, z))) c.set(x, y, z, true);

  long long k = 0, lam = 0;
  const auto& n3 = s.numbers.n[2];
  for (int i : I)
    for (int j : I)
      for (int kk = 0; kk <= m; ++kk) {
        k += s.numbers.pval(i, j, kk, 0) +
             static_cast<long long>(v - 1) * s.numbers.pval(i, j, kk, 3);
        for (int l = 0; l <= m; ++l)
          lam += static_cast<long long>(s.numbers.pval(i, j, kk, l)) * n3[l];
      }
  return AstCubeResult{std::move(c),
                       DesignParams{v, static_cast<int>(k),
                                    static_cast<int>(lam)}};
}

std::optional<int> steiner_block_size(const SteinerSystem& s) {
  const int v = s.v;
  if (v < 2 || s.lines.empty()) return std::nullopt;
  int k = static_cast<int>(s.lines.front().size());
  if (k < 2) return std::nullopt;
  std::vector<int> pair(static_cast<std::size_t>(v) * v, 0);
  for (const auto& line : s.lines) {
    if (static_cast<int>(line.size()) != k) return std::nullopt;
    std::set<int> uniq(line.begin(), line.end());
    if (static_cast<int>(uniq.size()) != k) return std::nullopt;
    for (int p : line)
      if (p < 0 || p >= v) return std::nullopt;
    for (std::size_t a = 0; a < line.size(); ++a)
      for (std::size_t b = a + 1; b < line.size(); ++b) {
        ++pair[static_cast<std::size_t>(line[a]) * v + line[b]];
        ++pair[static_cast<std::size_t>(line[b]) * v + line[a]];
      }
  }
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b)
      if (a != b && pair[static_cast<std::size_t>(a) * v + b] != 1)
        return std::nullopt;
  return k;
}

TripleScheme steiner_ast(const SteinerSystem& s) {
  if (!steiner_block_size(s))
    throw std::invalid_argument("steiner_ast: not an S(2,k,v)");
  const int v = s.v;
  std::vector<int> lineOf(static_cast<std::size_t>(v) * v, -1);
  for (std::size_t id = 0; id < s.lines.size(); ++id)
    for (std::size_t a = 0; a < s.lines[id].size(); ++a)
      for (std::size_t b = 0; b < s.lines[id].size(); ++b)
        if (a != b)
          lineOf[static_cast<std::size_t>(s.lines[id][a]) * v +
                 s.lines[id][b]] = static_cast<int>(id);
  std::vector<std::set<int>> pts(s.lines.size());
  for (std::size_t id = 0; id < s.lines.size(); ++id)
    pts[id] = std::set<int>(s.lines[id].begin(), s.lines[id].end());

  TripleLabeling rel(v, 5);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z) {
        int d = diagonal_label(x, y, z);
        if (d >= 0) {
          rel.at(x, y, z) = d;
        } else {
          int id = lineOf[static_cast<std::size_t>(x) * v + y];
          rel.at(x, y, z) = pts[id].count(z) ? 4 : 5;
        }
      }
  auto out = validate_ast(rel);
  if (!out) throw std::logic_error("steiner_ast: validation failed");
  return *out;
}

TripleScheme trivial_ast(int v) {
  if (v < 2) throw std::invalid_argument("trivial_ast: v < 2");
  TripleLabeling rel(v, 4);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z) {
        int d = diagonal_label(x, y, z);
        rel.at(x, y, z) = d >= 0 ? d : 4;
      }
  auto out = validate_ast(rel);
  if (!out) throw std::logic_error("trivial_ast: validation failed");
  return *out;
}

}  // namespace cube3
