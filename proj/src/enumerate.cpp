#include "cube3/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstring>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "cube3/equivalence.hpp"
#include "cube3/graph_canon.hpp"

namespace cube3 {
namespace {

constexpr uint64_t kNodeBatch = 4096;

// Colored graph of a stack of z-layers. Two interchangeable axis hubs keep
// row and column vertices apart except for a global transpose, the slot
// vertices are mutually interchangeable, and every 1-cell joins its row,
// column and slot. Certificates are equal exactly for stacks related by
// row/column permutations, transposition and slot permutation — the
// subgroup of cube equivalences that maps layer prefixes to layer prefixes.
canon::ColoredGraph partial_graph(int v, const std::vector<uint64_t>& layers) {
  int d = static_cast<int>(layers.size());
  int cells = 0;
  for (uint64_t m : layers) cells += std::popcount(m);
  canon::ColoredGraph g(2 + 2 * v + d + cells);
  g.color[0] = g.color[1] = 0;
  for (int i = 0; i < v; ++i) {
    g.color[2 + i] = 1;
    g.color[2 + v + i] = 1;
    g.add_edge(0, 2 + i);
    g.add_edge(1, 2 + v + i);
  }
  for (int s = 0; s < d; ++s) g.color[2 + 2 * v + s] = 2;
  int next = 2 + 2 * v + d;
  for (int s = 0; s < d; ++s)
    for (int x = 0; x < v; ++x)
      for (int y = 0; y < v; ++y)
        if (layers[s] >> (x * v + y) & 1) {
          g.color[next] = 3;
          g.add_edge(next, 2 + x);
          g.add_edge(next, 2 + v + y);
          g.add_edge(next, 2 + 2 * v + s);
          ++next;
        }
  return g;
}

std::vector<uint8_t> partial_cert(int v, const std::vector<uint64_t>& layers) {
  return canon::canonical_labeling(partial_graph(v, layers)).certificate;
}

// Depth-first construction of layer stacks. Layers are built row by row
// from row v-1 down to row 0, so completed masks appear in increasing
// numeric order; the tail layers (slots 3..v) are required to be
// nondecreasing, which every cube can reach through a slot permutation.
struct CubeSearch {
  int v = 0, k = 0;
  int lamFilter = -1;
  uint64_t maxNodes = 0;
  std::atomic<uint64_t>* totalNodes = nullptr;
  std::atomic<bool>* stop = nullptr;

  uint64_t mask[9];
  uint16_t rows[9][8];
  int remBelow[9][9];  // remBelow[d][x]: ones of layer d in rows < x
  int rowsum[8], colsum[8];
  int rowLo[9];  // lowest admissible row/column sum after layer d
  int16_t xdot[8][8], ydot[8][8];
  int dots[9];  // intersection of the layer being built with layer i
  int lambda = -1;

  uint16_t cur[8];
  int8_t colacc[8];
  int8_t yacc[8][8];

  bool collecting = false;
  std::vector<uint64_t>* collectOut = nullptr;

  std::set<std::vector<uint8_t>> seen2;
  std::vector<std::pair<int, Cube>> out;
  uint64_t pending = 0;
  bool abortedLocal = false;

  void init(int v_, int k_) {
    v = v_;
    k = k_;
    lambda = -1;
    std::memset(mask, 0, sizeof mask);
    std::memset(rows, 0, sizeof rows);
    std::memset(remBelow, 0, sizeof remBelow);
    std::memset(rowsum, 0, sizeof rowsum);
    std::memset(colsum, 0, sizeof colsum);
    std::memset(xdot, 0, sizeof xdot);
    std::memset(ydot, 0, sizeof ydot);
    std::memset(dots, 0, sizeof dots);
    std::memset(cur, 0, sizeof cur);
    std::memset(colacc, 0, sizeof colacc);
    std::memset(yacc, 0, sizeof yacc);
    for (int d = 0; d <= v; ++d) rowLo[d] = k - (v - d) * v;
    seen2.clear();
    out.clear();
    abortedLocal = false;
  }

  void flush_nodes() {
    if (!totalNodes || pending == 0) return;
    uint64_t t = totalNodes->fetch_add(pending) + pending;
    pending = 0;
    if (stop && stop->load(std::memory_order_relaxed)) abortedLocal = true;
    if (maxNodes && t >= maxNodes) {
      if (stop) stop->store(true, std::memory_order_relaxed);
      abortedLocal = true;
    }
  }

  bool count_node() {
    if (abortedLocal) return false;
    if (++pending >= kNodeBatch) flush_nodes();
    return !abortedLocal;
  }

  // Fold a completed layer into the cumulative state (slot d).
  void commit(int d, uint64_t m) {
    mask[d] = m;
    for (int x = 0; x < v; ++x) {
      rows[d][x] = static_cast<uint16_t>(m >> (x * v)) & ((1u << v) - 1);
      rowsum[x] += std::popcount(static_cast<unsigned>(rows[d][x]));
    }
    remBelow[d][0] = 0;
    for (int x = 0; x < v; ++x)
      remBelow[d][x + 1] =
          remBelow[d][x] + std::popcount(static_cast<unsigned>(rows[d][x]));
    uint16_t colm[8] = {};
    for (int x = 0; x < v; ++x)
      for (unsigned b = rows[d][x]; b; b &= b - 1)
        colm[std::countr_zero(b)] |= static_cast<uint16_t>(1u << x);
    for (int y = 0; y < v; ++y)
      colsum[y] += std::popcount(static_cast<unsigned>(colm[y]));
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j) {
        xdot[i][j] += std::popcount(static_cast<unsigned>(rows[d][i] & rows[d][j]));
        ydot[i][j] += std::popcount(static_cast<unsigned>(colm[i] & colm[j]));
      }
  }

  void uncommit(int d) {
    uint16_t colm[8] = {};
    for (int x = 0; x < v; ++x)
      for (unsigned b = rows[d][x]; b; b &= b - 1)
        colm[std::countr_zero(b)] |= static_cast<uint16_t>(1u << x);
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j) {
        xdot[i][j] -= std::popcount(static_cast<unsigned>(rows[d][i] & rows[d][j]));
        ydot[i][j] -= std::popcount(static_cast<unsigned>(colm[i] & colm[j]));
      }
    for (int y = 0; y < v; ++y)
      colsum[y] -= std::popcount(static_cast<unsigned>(colm[y]));
    for (int x = 0; x < v; ++x)
      rowsum[x] -= std::popcount(static_cast<unsigned>(rows[d][x]));
  }

  void emit() {
    Cube c(v);
    for (int z = 1; z <= v; ++z)
      for (int x = 0; x < v; ++x)
        for (unsigned b = rows[z][x]; b; b &= b - 1)
          c.set(x, std::countr_zero(b), z - 1, true);
    if (auto pr = verify(c)) out.emplace_back(pr->lambda, canonical_cube(c));
  }

  void finish_layer(int d) {
    // column deficits: the remaining layers add at most v per column
    for (int y = 0; y < v; ++y)
      if (colsum[y] + colacc[y] < rowLo[d]) return;

    uint64_t m = 0;
    for (int x = 0; x < v; ++x) m |= static_cast<uint64_t>(cur[x]) << (x * v);
    if (collecting) {
      collectOut->push_back(m);
      return;
    }

    int lamOld = lambda;
    if (d == 2) {
      lambda = dots[1];
      if (!lambda_admissible(v, k, lambda) ||
          (lamFilter >= 0 && lambda != lamFilter)) {
        lambda = lamOld;
        return;
      }
    }

    int dotsSave[9];
    int8_t colaccSave[8];
    int8_t yaccSave[8][8];
    std::memcpy(dotsSave, dots, sizeof dots);
    std::memcpy(colaccSave, colacc, sizeof colacc);
    std::memcpy(yaccSave, yacc, sizeof yacc);
    commit(d, m);
    std::memset(dots, 0, sizeof dots);
    std::memset(colacc, 0, sizeof colacc);
    std::memset(yacc, 0, sizeof yacc);

    bool ok = true;
    if (d == 2)  // the first two layers predate the pinned lambda
      for (int i = 0; i < v && ok; ++i)
        for (int j = i + 1; j < v && ok; ++j)
          if (xdot[i][j] > lambda || ydot[i][j] > lambda) ok = false;
    if (ok && d < v) {
      int grow = (v - d) * v;
      for (int i = 0; i < v && ok; ++i)
        for (int j = i + 1; j < v && ok; ++j)
          if (xdot[i][j] + grow < lambda || ydot[i][j] + grow < lambda)
            ok = false;
    }
    if (ok && d == 2 && d < v)
      ok = seen2.insert(partial_cert(v, {mask[1], mask[2]})).second;
    if (ok) {
      if (d == v)
        emit();
      else
        place(d + 1, v - 1, k, d + 1 >= 4);
    }

    std::memcpy(dots, dotsSave, sizeof dots);
    std::memcpy(colacc, colaccSave, sizeof colacc);
    std::memcpy(yacc, yaccSave, sizeof yacc);
    uncommit(d);
    for (int x = 0; x < v; ++x) cur[x] = rows[d][x];
    lambda = lamOld;
  }

  void place(int d, int x, int need, bool tight) {
    if (abortedLocal) return;
    if (x < 0) {
      finish_layer(d);
      return;
    }
    const int lim = 1 << v;
    const int maxbits = x * v;
    const bool pinned = lambda >= 0;
    const int start = tight ? rows[d - 1][x] : 0;
    for (int r = start; r < lim; ++r) {
      unsigned ur = static_cast<unsigned>(r);
      int pc = std::popcount(ur);
      if (pc > need || need - pc > maxbits) continue;
      if (!count_node()) return;
      int rs = rowsum[x] + pc;
      if (rs > k || rs < rowLo[d]) continue;

      bool ok = true;
      for (unsigned b = ur; b && ok; b &= b - 1)
        if (colsum[std::countr_zero(b)] + colacc[std::countr_zero(b)] + 1 > k)
          ok = false;
      if (!ok) continue;

      int add[9];
      for (int i = 1; i < d && ok; ++i) {
        int a = std::popcount(ur & rows[i][x]);
        int nd = dots[i] + a;
        if (pinned &&
            (nd > lambda || nd + std::min(remBelow[i][x], need - pc) < lambda))
          ok = false;
        add[i] = a;
      }
      if (!ok) continue;

      if (pinned) {
        for (int j = x + 1; j < v && ok; ++j)
          if (xdot[x][j] + std::popcount(ur & cur[j]) > lambda) ok = false;
        for (unsigned b = ur; b && ok; b &= b - 1) {
          int y1 = std::countr_zero(b);
          for (unsigned b2 = b & (b - 1); b2 && ok; b2 &= b2 - 1) {
            int y2 = std::countr_zero(b2);
            if (ydot[y1][y2] + yacc[y1][y2] + 1 > lambda) ok = false;
          }
        }
        if (!ok) continue;
      }

      cur[x] = static_cast<uint16_t>(r);
      for (unsigned b = ur; b; b &= b - 1) ++colacc[std::countr_zero(b)];
      for (unsigned b = ur; b; b &= b - 1) {
        int y1 = std::countr_zero(b);
        for (unsigned b2 = b & (b - 1); b2; b2 &= b2 - 1)
          ++yacc[y1][std::countr_zero(b2)];
      }
      for (int i = 1; i < d; ++i) dots[i] += add[i];

      place(d, x - 1, need - pc, tight && r == start);

      for (int i = 1; i < d; ++i) dots[i] -= add[i];
      for (unsigned b = ur; b; b &= b - 1) {
        int y1 = std::countr_zero(b);
        for (unsigned b2 = b & (b - 1); b2; b2 &= b2 - 1)
          --yacc[y1][std::countr_zero(b2)];
      }
      for (unsigned b = ur; b; b &= b - 1) --colacc[std::countr_zero(b)];
      cur[x] = 0;
      if (abortedLocal) return;
    }
  }
};

}  // namespace

EnumerationReport enumerate_cubes(const EnumerationOptions& opt) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  const int v = opt.v, k = opt.k;
  if (v < 1 || v > 8)
    throw std::invalid_argument("enumerate_cubes: order must be in [1,8]");
  if (k < 0 || k > v * v)
    throw std::invalid_argument("enumerate_cubes: k out of range");

  EnumerationReport rep;
  rep.v = v;
  rep.k = k;
  auto done = [&]() {
    rep.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return rep;
  };

  if (v == 1) {
    Cube c(1);
    if (k == 1) c.set(0, 0, 0, true);
    int lam = verify(c)->lambda;
    if (!opt.lambda || *opt.lambda == lam) rep.classes[lam].push_back(c);
    return done();
  }
  const int lamFilter = opt.lambda ? *opt.lambda : -1;
  if (lamFilter >= 0 && !lambda_admissible(v, k, lamFilter)) return done();

  std::atomic<uint64_t> nodes{0};
  std::atomic<bool> stop{false};

  // stage 1: all feasible first layers, one representative per symmetry
  // class of single-layer stacks
  std::vector<uint64_t> firsts;
  {
    CubeSearch s;
    s.init(v, k);
    s.totalNodes = &nodes;
    s.stop = &stop;
    s.maxNodes = opt.max_nodes;
    std::vector<uint64_t> all;
    s.collecting = true;
    s.collectOut = &all;
    s.place(1, v - 1, k, false);
    s.flush_nodes();
    std::set<std::vector<uint8_t>> seen;
    for (uint64_t m : all)
      if (seen.insert(partial_cert(v, {m})).second) firsts.push_back(m);
  }

  // stage 2: per first-layer task, all second layers with per-task prefix
  // rejection, then nondecreasing tails and a final full verification
  std::vector<std::vector<std::pair<int, Cube>>> found(firsts.size());
  std::atomic<std::size_t> next{0};
  std::mutex errMu;
  std::exception_ptr err;
  auto work = [&]() {
    try {
      CubeSearch s;
      for (;;) {
        std::size_t t = next.fetch_add(1);
        if (t >= firsts.size()) break;
        if (stop.load(std::memory_order_relaxed)) break;
        s.init(v, k);
        s.lamFilter = lamFilter;
        s.totalNodes = &nodes;
        s.stop = &stop;
        s.maxNodes = opt.max_nodes;
        s.commit(1, firsts[t]);
        s.place(2, v - 1, k, false);
        s.flush_nodes();
        found[t] = std::move(s.out);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(errMu);
      if (!err) err = std::current_exception();
      stop.store(true, std::memory_order_relaxed);
    }
  };
  int nw = std::clamp<int>(opt.workers, 1, std::max<int>(1, firsts.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < nw; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);

  std::map<int, std::set<Cube>> byLam;
  for (const auto& perTask : found)
    for (const auto& [lam, cube] : perTask) byLam[lam].insert(cube);
  for (auto& [lam, reps] : byLam)
    rep.classes.emplace(lam, std::vector<Cube>(reps.begin(), reps.end()));
  rep.nodes = nodes.load();
  rep.complete = !stop.load();
  return done();
}

std::vector<uint64_t> extend_partial(const std::vector<uint64_t>& partial,
                                     int v, int k) {
  if (v < 1 || v > 8)
    throw std::invalid_argument("extend_partial: order must be in [1,8]");
  if (k < 0 || k > v * v)
    throw std::invalid_argument("extend_partial: k out of range");
  const int vbits = v * v;
  const uint64_t full = vbits == 64 ? ~uint64_t{0} : (uint64_t{1} << vbits) - 1;
  for (uint64_t m : partial) {
    if (m & ~full)
      throw std::invalid_argument("extend_partial: layer exceeds order");
    if (std::popcount(m) != k)
      throw std::invalid_argument("extend_partial: layer must carry k ones");
  }
  const int d = static_cast<int>(partial.size());
  if (d >= v) return {};

  CubeSearch s;
  s.init(v, k);
  for (int i = 0; i < d; ++i) s.commit(i + 1, partial[i]);
  if (d >= 2) {
    int lam = std::popcount(partial[0] & partial[1]);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (std::popcount(partial[i] & partial[j]) != lam) return {};
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j)
        if (s.xdot[i][j] > lam || s.ydot[i][j] > lam) return {};
    s.lambda = lam;
  }
  std::vector<uint64_t> outMasks;
  s.collecting = true;
  s.collectOut = &outMasks;
  s.place(d + 1, v - 1, k, false);
  return outMasks;
}

}  // namespace cube3
