#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cube3/cube.hpp"

namespace cube3 {

// Exhaustive classification of all v*v*v 0/1 cubes with k ones per layer
// and a common pairwise layer intersection, one representative per
// equivalence class. Layers are v*v bit patterns packed as uint64
// (bit x*v+y), which limits the search to v <= 8.

struct EnumerationOptions {
  int v = 0;
  int k = 0;
  std::optional<int> lambda;  // keep only classes with this lambda
  int workers = 1;
  uint64_t max_nodes = 0;  // 0 = unlimited search nodes
};

struct EnumerationReport {
  int v = 0;
  int k = 0;
  std::map<int, std::vector<Cube>> classes;  // lambda -> canonical reps
  uint64_t nodes = 0;
  double seconds = 0.0;
  bool complete = true;  // false when max_nodes aborted the search

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [lam, reps] : classes) t += reps.size();
    return t;
  }
};

EnumerationReport enumerate_cubes(const EnumerationOptions& opt);

// All layers that can follow `partial` (a list of z-layers, each with k
// ones): the new layer keeps every partial x-row and y-column sum within k
// and completable by the remaining layers, and once two layers have pinned
// lambda, meets every z-layer intersection exactly and keeps partial x/y
// layer intersections within lambda. Layers are returned in increasing
// mask order. No symmetry reduction is applied here.
std::vector<uint64_t> extend_partial(const std::vector<uint64_t>& partial,
                                     int v, int k);

}  // namespace cube3
