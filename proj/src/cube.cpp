#include "cube3/cube.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cube3 {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

long long popcount_words(const std::vector<uint64_t>& w) {
  long long n = 0;
  for (uint64_t x : w) n += std::popcount(x);
  return n;
}

long long and_popcount(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  long long n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & b[i]);
  return n;
}

}  // namespace

Cube::Cube(int v) : v_(v) {
  if (v < 1) throw std::invalid_argument("cube order must be positive");
  bits_.assign(word_count(static_cast<std::size_t>(v) * v * v), 0);
}

long long Cube::ones() const { return popcount_words(bits_); }

std::vector<uint64_t> Cube::layer(int axis, int index) const {
  if (axis < 0 || axis > 2 || index < 0 || index >= v_)
    throw std::invalid_argument("layer: axis/index out of range");
  std::vector<uint64_t> w(word_count(static_cast<std::size_t>(v_) * v_), 0);
  auto put = [&](int a, int b) {
    std::size_t i = static_cast<std::size_t>(a) * v_ + b;
    w[i >> 6] |= uint64_t{1} << (i & 63);
  };
  for (int a = 0; a < v_; ++a)
    for (int b = 0; b < v_; ++b) {
      bool bit = axis == 0   ? get(index, a, b)
                 : axis == 1 ? get(a, index, b)
                             : get(a, b, index);
      if (bit) put(a, b);
    }
  return w;
}

std::vector<std::array<int, 3>> Cube::support() const {
  std::vector<std::array<int, 3>> s;
  s.reserve(static_cast<std::size_t>(ones()));
  for (int x = 0; x < v_; ++x)
    for (int y = 0; y < v_; ++y)
      for (int z = 0; z < v_; ++z)
        if (get(x, y, z)) s.push_back({x, y, z});
  return s;
}

std::optional<DesignParams> verify(const Cube& c, VerifyFailure* why) {
  const int v = c.order();
  auto fail = [&](int axis, int l1, int l2, const std::string& msg) -> std::optional<DesignParams> {
    if (why) *why = {axis + 1, l1 + 1, l2 + 1, msg};
    return std::nullopt;
  };

  std::array<std::vector<std::vector<uint64_t>>, 3> layers;
  for (int axis = 0; axis < 3; ++axis) {
    layers[axis].reserve(v);
    for (int i = 0; i < v; ++i) layers[axis].push_back(c.layer(axis, i));
  }

  const long long k = popcount_words(layers[0][0]);
  for (int axis = 0; axis < 3; ++axis)
    for (int i = 0; i < v; ++i)
      if (popcount_words(layers[axis][i]) != k)
        return fail(axis, i, -1,
                    "layer sum differs from k=" + std::to_string(k));

  long long lambda = v > 1 ? and_popcount(layers[0][0], layers[0][1]) : 0;
  for (int axis = 0; axis < 3; ++axis)
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j)
        if (and_popcount(layers[axis][i], layers[axis][j]) != lambda)
          return fail(axis, i, j,
                      "parallel layer pair dot differs from lambda=" + std::to_string(lambda));

  return DesignParams{v, static_cast<int>(k), static_cast<int>(lambda)};
}

Cube complement(const Cube& c) {
  const int v = c.order();
  Cube r(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z) r.set(x, y, z, !c.get(x, y, z));
  return r;
}

LambdaBounds lambda_bounds(int v, int k) {
  if (v < 1 || k < 0 || static_cast<long long>(k) > static_cast<long long>(v) * v)
    throw std::invalid_argument("lambda_bounds: bad (v,k)");
  const long long vv = v, kk = k;
  if (k == 0) return {0, 0};
  if (kk == vv * vv) return {k, k};
  if (v == 1) return {0, 0};  // k in {0, v^2} already handled

  // lower: lambda * v(v-1) >= k(k-v), strict when v(v-1) | k(k-v) but v !| k;
  // for v !| k additionally lambda(v-1) >= k(fl+ce-1) - v*fl*ce.
  long long lower = 0;
  {
    long long num = kk * (kk - vv), den = vv * (vv - 1);
    if (num > 0) {
      long long q = (num + den - 1) / den;
      if (num % den == 0 && kk % vv != 0) q += 1;
      lower = std::max(lower, q);
    }
    if (kk % vv != 0) {
      long long fl = kk / vv, ce = fl + 1;
      long long num2 = kk * (fl + ce - 1) - vv * fl * ce;
      if (num2 > 0) lower = std::max(lower, (num2 + vv - 2) / (vv - 1));
    }
  }

  // upper: lambda <= k, lambda = k only for k in {0, v^2}; for k > 1 also
  // lambda(v-1) <= k(k-1) - 1.
  long long upper;
  if (k == 1) {
    upper = 0;
  } else {
    upper = kk - 1;
    if (v > 1) upper = std::min(upper, (kk * (kk - 1) - 1) / (vv - 1));
  }
  return {static_cast<int>(lower), static_cast<int>(upper)};
}

bool lambda_admissible(int v, int k, int lambda) {
  LambdaBounds b = lambda_bounds(v, k);
  if (lambda < b.lower || lambda > b.upper) return false;
  if (lambda == k && !(k == 0 || static_cast<long long>(k) == static_cast<long long>(v) * v))
    return false;
  if (lambda == 0 && k > v) return false;
  return true;
}

std::array<std::vector<int>, 3> row_sum_profile(const Cube& c) {
  const int v = c.order();
  std::array<std::vector<int>, 3> p;
  for (auto& row : p) row.assign(static_cast<std::size_t>(v) * v, 0);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        if (c.get(x, y, z)) {
          p[0][static_cast<std::size_t>(y) * v + z] += 1;  // rows along x
          p[1][static_cast<std::size_t>(x) * v + z] += 1;  // rows along y
          p[2][static_cast<std::size_t>(x) * v + y] += 1;  // rows along z
        }
  return p;
}

std::array<IntMatrix, 3> projections(const Cube& c) {
  const int v = c.order();
  std::array<IntMatrix, 3> m{IntMatrix(v), IntMatrix(v), IntMatrix(v)};
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        if (c.get(x, y, z)) {
          m[0].at(x, y) += 1;
          m[1].at(x, z) += 1;
          m[2].at(y, z) += 1;
        }
  return m;
}

std::optional<DesignParams> symmetric_design_params(const IntMatrix& m) {
  const int v = m.n;
  if (v < 1) return std::nullopt;
  for (int e : m.a)
    if (e != 0 && e != 1) return std::nullopt;
  long long k = 0;
  for (int c = 0; c < v; ++c) k += m.at(0, c);
  for (int r = 0; r < v; ++r) {
    long long s = 0;
    for (int c = 0; c < v; ++c) s += m.at(r, c);
    if (s != k) return std::nullopt;
  }
  for (int c = 0; c < v; ++c) {
    long long s = 0;
    for (int r = 0; r < v; ++r) s += m.at(r, c);
    if (s != k) return std::nullopt;
  }
  long long lambda = 0;
  if (v > 1) {
    for (int c = 0; c < v; ++c) lambda += m.at(0, c) * m.at(1, c);
  }
  for (int r1 = 0; r1 < v; ++r1)
    for (int r2 = r1 + 1; r2 < v; ++r2) {
      long long s = 0;
      for (int c = 0; c < v; ++c) s += m.at(r1, c) * m.at(r2, c);
      if (s != lambda) return std::nullopt;
    }
  for (int c1 = 0; c1 < v; ++c1)
    for (int c2 = c1 + 1; c2 < v; ++c2) {
      long long s = 0;
      for (int r = 0; r < v; ++r) s += m.at(r, c1) * m.at(r, c2);
      if (s != lambda) return std::nullopt;
    }
  return DesignParams{v, static_cast<int>(k), static_cast<int>(lambda)};
}

bool is_projection_cube(const Cube& c) {
  auto pr = projections(c);
  std::optional<DesignParams> common;
  for (const auto& m : pr) {
    auto p = symmetric_design_params(m);
    if (!p) return false;
    if (common && !(*common == *p)) return false;
    common = p;
  }
  return common.has_value();
}

std::optional<DesignParams> propriety2_params(const Cube& c) {
  const int v = c.order();
  std::optional<DesignParams> common;
  for (int axis = 0; axis < 3; ++axis)
    for (int i = 0; i < v; ++i) {
      IntMatrix m(v);
      for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b)
          m.at(a, b) = axis == 0   ? c.get(i, a, b)
                       : axis == 1 ? c.get(a, i, b)
                                   : c.get(a, b, i);
      auto p = symmetric_design_params(m);
      if (!p) return std::nullopt;
      if (common && !(*common == *p)) return std::nullopt;
      common = p;
    }
  return common;
}

bool is_latin_square(const LatinSquare& l) {
  const int n = l.n;
  if (n < 1 || l.a.size() != static_cast<std::size_t>(n) * n) return false;
  for (int e : l.a)
    if (e < 0 || e >= n) return false;
  std::vector<char> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
      if (seen[l.at(r, c)]) return false;
      seen[l.at(r, c)] = 1;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r) {
      if (seen[l.at(r, c)]) return false;
      seen[l.at(r, c)] = 1;
    }
  }
  return true;
}

Cube latin_to_cube(const LatinSquare& l) {
  if (!is_latin_square(l)) throw std::invalid_argument("latin_to_cube: not a Latin square");
  Cube c(l.n);
  for (int x = 0; x < l.n; ++x)
    for (int y = 0; y < l.n; ++y) c.set(x, y, l.at(x, y), true);
  return c;
}

std::optional<LatinSquare> cube_to_latin(const Cube& c) {
  const int v = c.order();
  LatinSquare l(v);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y) {
      int sym = -1;
      for (int z = 0; z < v; ++z)
        if (c.get(x, y, z)) {
          if (sym >= 0) return std::nullopt;
          sym = z;
        }
      if (sym < 0) return std::nullopt;
      l.at(x, y) = sym;
    }
  if (!is_latin_square(l)) return std::nullopt;
  return l;
}

std::string to_cube_text(const Cube& c) {
  const int v = c.order();
  std::string out = std::to_string(v);
  out += '\n';
  for (int z = 0; z < v; ++z) {
    if (z > 0) out += '\n';
    for (int x = 0; x < v; ++x) {
      for (int y = 0; y < v; ++y) out += c.get(x, y, z) ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

Cube parse_cube_text(const std::string& text) {
  auto bad = [](const std::string& msg) -> Cube { throw std::runtime_error("cube format: " + msg); };
  if (text.empty() || text.back() != '\n') return bad("missing final newline");
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] == '\n') {
      lines.push_back(text.substr(start, i - start));
      start = i + 1;
    }

  if (lines.empty()) return bad("empty file");
  const std::string& vs = lines[0];
  if (vs.empty() || vs.size() > 9) return bad("bad order line");
  if (vs[0] == '0') return bad("bad order line");
  for (char ch : vs)
    if (ch < '0' || ch > '9') return bad("bad order line");
  const int v = std::stoi(vs);

  const std::size_t expect = 1 + static_cast<std::size_t>(v) * v + (v - 1);
  if (lines.size() != expect) return bad("wrong line count");

  Cube c(v);
  std::size_t li = 1;
  for (int z = 0; z < v; ++z) {
    if (z > 0) {
      if (!lines[li].empty()) return bad("expected blank line between blocks");
      ++li;
    }
    for (int x = 0; x < v; ++x, ++li) {
      const std::string& row = lines[li];
      if (row.size() != static_cast<std::size_t>(v)) return bad("wrong row length");
      for (int y = 0; y < v; ++y) {
        if (row[y] != '0' && row[y] != '1') return bad("row characters must be 0/1");
        if (row[y] == '1') c.set(x, y, z, true);
      }
    }
  }
  return c;
}

Cube load_cube_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cube_text(ss.str());
}

void save_cube_file(const Cube& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_cube_text(c);
}

}  // namespace cube3
