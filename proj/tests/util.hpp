#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "cube3/cube.hpp"
#include "cube3/equivalence.hpp"

namespace testutil {

inline cube3::LatinSquare cyclic_latin(int n) {
  cube3::LatinSquare l(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) l.at(r, c) = (r + c) % n;
  return l;
}

inline cube3::IntMatrix matrix_from_rows(const std::vector<std::string>& rows) {
  cube3::IntMatrix m(static_cast<int>(rows.size()));
  for (int r = 0; r < m.n; ++r)
    for (int c = 0; c < m.n; ++c) m.at(r, c) = rows[r][c] - '0';
  return m;
}

inline cube3::LatinSquare latin_from_rows(const std::vector<std::string>& rows) {
  cube3::LatinSquare l(static_cast<int>(rows.size()));
  for (int r = 0; r < l.n; ++r)
    for (int c = 0; c < l.n; ++c) l.at(r, c) = rows[r][c] - '1';
  return l;
}

// Circulant Fano incidence matrix, first row 1101000.
inline cube3::IntMatrix fano_incidence() {
  cube3::IntMatrix m(7);
  for (int r = 0; r < 7; ++r)
    for (int d : {0, 1, 3}) m.at(r, (r + d) % 7) = 1;
  return m;
}

inline cube3::Paratopy random_paratopy(int v, std::mt19937& rng) {
  cube3::Paratopy g = cube3::Paratopy::identity(v);
  for (int i = 0; i < 3; ++i)
    std::shuffle(g.perm[i].begin(), g.perm[i].end(), rng);
  std::shuffle(g.axis_map.begin(), g.axis_map.end(), rng);
  return g;
}

inline cube3::Cube random_cube(int v, double density, std::mt19937& rng) {
  cube3::Cube c(v);
  std::bernoulli_distribution bit(density);
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        if (bit(rng)) c.set(x, y, z, true);
  return c;
}

}  // namespace testutil
