#include "cube3/equivalence.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace cube3 {

Paratopy Paratopy::identity(int v) {
  Paratopy g;
  g.v = v;
  for (auto& p : g.perm) {
    p.resize(v);
    for (int i = 0; i < v; ++i) p[i] = i;
  }
  return g;
}

Cube apply(const Paratopy& g, const Cube& c) {
  if (g.v != c.order()) throw std::invalid_argument("paratopy order mismatch");
  Cube r(c.order());
  for (const auto& cell : c.support()) {
    std::array<int, 3> out{};
    for (int i = 0; i < 3; ++i) out[g.axis_map[i]] = g.perm[i][cell[i]];
    r.set(out[0], out[1], out[2], true);
  }
  return r;
}

Paratopy compose(const Paratopy& g, const Paratopy& f) {
  if (g.v != f.v) throw std::invalid_argument("paratopy order mismatch");
  Paratopy h;
  h.v = g.v;
  for (int i = 0; i < 3; ++i) {
    int mid = f.axis_map[i];
    h.axis_map[i] = g.axis_map[mid];
    h.perm[i].resize(h.v);
    for (int x = 0; x < h.v; ++x) h.perm[i][x] = g.perm[mid][f.perm[i][x]];
  }
  return h;
}

Paratopy inverse(const Paratopy& g) {
  Paratopy h;
  h.v = g.v;
  for (int i = 0; i < 3; ++i) {
    int j = g.axis_map[i];  // axis i moves to axis j; the inverse moves j back
    h.axis_map[j] = i;
    h.perm[j].resize(h.v);
    for (int x = 0; x < h.v; ++x) h.perm[j][g.perm[i][x]] = x;
  }
  return h;
}

canon::ColoredGraph encode_graph(const Cube& c, bool fix_axes) {
  const int v = c.order();
  auto cells = c.support();
  canon::ColoredGraph g(3 + 3 * v + static_cast<int>(cells.size()));
  for (int a = 0; a < 3; ++a) g.color[a] = fix_axes ? a : 0;
  const int coord_color = fix_axes ? 3 : 1;
  const int cell_color = fix_axes ? 4 : 2;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < v; ++i) {
      int u = 3 + a * v + i;
      g.color[u] = coord_color;
      g.add_edge(a, u);
    }
  for (std::size_t t = 0; t < cells.size(); ++t) {
    int u = 3 + 3 * v + static_cast<int>(t);
    g.color[u] = cell_color;
    for (int a = 0; a < 3; ++a) g.add_edge(u, 3 + a * v + cells[t][a]);
  }
  return g;
}

namespace {

// Reconstructs the cube carried to canonical position by the labeling of
// encode_graph(c, false).
Cube reread_canonical(const Cube& c, const std::vector<int>& labeling) {
  const int v = c.order();
  // canonical order of the three axes = order of their positions
  std::array<int, 3> axes{0, 1, 2};
  std::sort(axes.begin(), axes.end(), [&](int a, int b) { return labeling[a] < labeling[b]; });
  std::array<int, 3> axis_to_slot{};  // original axis -> canonical axis
  for (int s = 0; s < 3; ++s) axis_to_slot[axes[s]] = s;

  // canonical value of coordinate i on axis a = rank of its position among
  // the coordinates of that axis
  std::array<std::vector<int>, 3> value;
  for (int a = 0; a < 3; ++a) {
    std::vector<int> ord(v);
    for (int i = 0; i < v; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(),
              [&](int i, int j) { return labeling[3 + a * v + i] < labeling[3 + a * v + j]; });
    value[a].resize(v);
    for (int r = 0; r < v; ++r) value[a][ord[r]] = r;
  }

  Cube out(v);
  for (const auto& cell : c.support()) {
    std::array<int, 3> t{};
    for (int a = 0; a < 3; ++a) t[axis_to_slot[a]] = value[a][cell[a]];
    out.set(t[0], t[1], t[2], true);
  }
  return out;
}

std::vector<uint8_t> cube_bytes(const Cube& c) {
  const int v = c.order();
  std::vector<uint8_t> b;
  for (int i = 3; i >= 0; --i) b.push_back(static_cast<uint8_t>(static_cast<uint32_t>(v) >> (8 * i)));
  uint8_t acc = 0;
  int nb = 0;
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z) {
        acc = static_cast<uint8_t>((acc << 1) | (c.get(x, y, z) ? 1 : 0));
        if (++nb == 8) {
          b.push_back(acc);
          acc = 0;
          nb = 0;
        }
      }
  if (nb > 0) b.push_back(static_cast<uint8_t>(acc << (8 - nb)));
  return b;
}

}  // namespace

Cube canonical_cube(const Cube& c) {
  auto g = encode_graph(c, false);
  auto res = canon::canonical_labeling(g);
  return reread_canonical(c, res.labeling);
}

CanonicalForm canonical_form(const Cube& c) {
  return CanonicalForm{cube_bytes(canonical_cube(c))};
}

std::string CanonicalForm::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

bool equivalent(const Cube& a, const Cube& b) {
  if (a.order() != b.order()) throw std::invalid_argument("equivalent: order mismatch");
  if (a.ones() != b.ones()) return false;
  if (fingerprint(a) != fingerprint(b)) return false;
  return canonical_form(a) == canonical_form(b);
}

uint64_t autotopy_order(const Cube& c) {
  auto g = encode_graph(c, true);
  auto res = canon::canonical_labeling(g);
  return canon::permutation_group_order(g.n, res.generators);
}

uint64_t paratopy_stabilizer_order(const Cube& c) {
  auto g = encode_graph(c, false);
  auto res = canon::canonical_labeling(g);
  return canon::permutation_group_order(g.n, res.generators);
}

std::vector<int64_t> fingerprint(const Cube& c) {
  const int v = c.order();
  std::vector<int64_t> fp;
  fp.push_back(v);
  fp.push_back(c.ones());

  auto profiles = row_sum_profile(c);
  std::array<std::vector<int>, 3> sorted_profiles;
  for (int a = 0; a < 3; ++a) {
    sorted_profiles[a] = profiles[a];
    std::sort(sorted_profiles[a].begin(), sorted_profiles[a].end());
  }
  std::sort(sorted_profiles.begin(), sorted_profiles.end());

  std::array<std::vector<int64_t>, 3> dots;
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<std::vector<uint64_t>> layers;
    layers.reserve(v);
    for (int i = 0; i < v; ++i) layers.push_back(c.layer(axis, i));
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j) {
        int64_t d = 0;
        for (std::size_t w = 0; w < layers[i].size(); ++w)
          d += __builtin_popcountll(layers[i][w] & layers[j][w]);
        dots[axis].push_back(d);
      }
    std::sort(dots[axis].begin(), dots[axis].end());
  }
  std::sort(dots.begin(), dots.end());

  for (const auto& p : sorted_profiles)
    for (int x : p) fp.push_back(x);
  for (const auto& d : dots)
    for (int64_t x : d) fp.push_back(x);
  return fp;
}

std::vector<Cube> filter_classes(const std::vector<Cube>& cubes) {
  struct Entry {
    Cube cube;
    std::optional<CanonicalForm> canon;
  };
  std::map<std::vector<int64_t>, std::vector<Entry>> buckets;
  for (const Cube& c : cubes) {
    auto& bucket = buckets[fingerprint(c)];
    if (bucket.empty()) {
      bucket.push_back({c, std::nullopt});
      continue;
    }
    CanonicalForm cf = canonical_form(c);
    bool dup = false;
    for (auto& e : bucket) {
      if (!e.canon) e.canon = canonical_form(e.cube);
      if (*e.canon == cf) {
        dup = true;
        break;
      }
    }
    if (!dup) bucket.push_back({c, cf});
  }
  std::vector<std::pair<CanonicalForm, Cube>> reps;
  for (auto& [fp, bucket] : buckets)
    for (auto& e : bucket) {
      if (!e.canon) e.canon = canonical_form(e.cube);
      reps.emplace_back(*e.canon, e.cube);
    }
  std::sort(reps.begin(), reps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Cube> out;
  out.reserve(reps.size());
  for (auto& [cf, c] : reps) out.push_back(c);
  return out;
}

Cube identity_cube(int v) {
  Cube c(v);
  for (int i = 0; i < v; ++i) c.set(i, i, i, true);
  return c;
}

Paratopy normalize_identity(const Cube& c) {
  auto params = verify(c);
  if (!params || params->k != 1 || params->lambda != 0)
    throw std::invalid_argument("normalize_identity: cube is not a (v,1,0) design");
  const int v = c.order();
  Paratopy g = Paratopy::identity(v);
  for (int z = 0; z < v; ++z) {
    for (int x = 0; x < v; ++x)
      for (int y = 0; y < v; ++y)
        if (c.get(x, y, z)) {
          g.perm[0][x] = z;
          g.perm[1][y] = z;
        }
  }
  return g;
}

}  // namespace cube3
