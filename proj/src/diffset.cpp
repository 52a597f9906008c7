#include "cube3/diffset.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "cube3/equivalence.hpp"

namespace cube3 {

namespace {

int pair_code(int v, int x, int y) { return x * v + y; }

std::vector<int> sorted_codes(const FiniteGroup& g, const PairSet& d) {
  std::vector<int> codes;
  codes.reserve(d.size());
  for (auto [x, y] : d) {
    if (x < 0 || x >= g.n || y < 0 || y >= g.n)
      throw std::invalid_argument("pair out of range");
    codes.push_back(pair_code(g.n, x, y));
  }
  std::sort(codes.begin(), codes.end());
  if (std::adjacent_find(codes.begin(), codes.end()) != codes.end())
    throw std::invalid_argument("duplicate pair");
  return codes;
}

PairSet codes_to_pairs(int v, const std::vector<int>& codes) {
  PairSet d;
  d.reserve(codes.size());
  for (int c : codes) d.emplace_back(c / v, c % v);
  return d;
}

std::vector<char> member_mask(const FiniteGroup& g, const std::vector<int>& d) {
  std::vector<char> in(g.n, 0);
  for (int x : d) {
    if (x < 0 || x >= g.n) throw std::invalid_argument("element out of range");
    if (in[x]) throw std::invalid_argument("duplicate element");
    in[x] = 1;
  }
  return in;
}

}  // namespace

std::optional<DesignParams> check_ordinary(const FiniteGroup& g,
                                           const std::vector<int>& d,
                                           std::string* why) {
  member_mask(g, d);
  std::vector<int> right(g.n, 0), left(g.n, 0);
  for (int x : d)
    for (int y : d) {
      if (x == y) continue;
      ++right[g.right_diff(x, y)];
      ++left[g.left_diff(x, y)];
    }
  int lam = g.n > 1 ? right[1] : 0;
  for (int e = 1; e < g.n; ++e) {
    if (right[e] != lam) {
      if (why)
        *why = "right difference count at " + g.names[e] + " is " +
               std::to_string(right[e]) + ", elsewhere " + std::to_string(lam);
      return std::nullopt;
    }
    if (left[e] != lam) {
      if (why)
        *why = "left difference count at " + g.names[e] + " is " +
               std::to_string(left[e]) + ", right counts are " +
               std::to_string(lam);
      return std::nullopt;
    }
  }
  return DesignParams{g.n, static_cast<int>(d.size()), lam};
}

std::vector<std::array<int, 2>> cross_difference_count(const FiniteGroup& g,
                                                       const std::vector<int>& d) {
  auto in = member_mask(g, d);
  std::vector<std::array<int, 2>> out(g.n, {0, 0});
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y) {
      if (in[x] == in[y]) continue;
      int e = g.left_diff(x, y);
      if (in[x])
        ++out[e][0];
      else
        ++out[e][1];
    }
  return out;
}

std::optional<DesignParams> check_ds3(const FiniteGroup& g, const PairSet& d,
                                      std::string* why) {
  auto codes = sorted_codes(g, d);
  int v = g.n;
  std::vector<int> c1(v, 0), c2(v, 0), c3(v, 0);
  for (std::size_t i = 0; i < codes.size(); ++i)
    for (std::size_t j = 0; j < codes.size(); ++j) {
      if (i == j) continue;
      int x = codes[i] / v, y = codes[i] % v;
      int x2 = codes[j] / v, y2 = codes[j] % v;
      int l = g.left_diff(x, x2);
      if (l == g.left_diff(y, y2)) ++c1[l];
      if (y == y2) ++c2[g.right_diff(x, x2)];
      if (x == x2) ++c3[g.right_diff(y, y2)];
    }
  int lam = v > 1 ? c1[1] : 0;
  for (int e = 1; e < v; ++e) {
    int got = -1, cond = 0;
    if (c1[e] != lam) {
      got = c1[e];
      cond = 1;
    } else if (c2[e] != lam) {
      got = c2[e];
      cond = 2;
    } else if (c3[e] != lam) {
      got = c3[e];
      cond = 3;
    }
    if (cond) {
      if (why)
        *why = "condition " + std::to_string(cond) + " count at " + g.names[e] +
               " is " + std::to_string(got) + ", expected " + std::to_string(lam);
      return std::nullopt;
    }
  }
  return DesignParams{v, static_cast<int>(codes.size()), lam};
}

Cube dev(const FiniteGroup& g, const PairSet& d) {
  std::string why;
  if (!check_ds3(g, d, &why))
    throw std::invalid_argument("dev: not a difference set of propriety 3: " + why);
  Cube c(g.n);
  for (auto [x, y] : d)
    for (int w = 0; w < g.n; ++w) c.set(g.op(x, w), g.op(y, w), w, true);
  return c;
}

Cube difference_cube(const FiniteGroup& g, const std::vector<int>& d) {
  std::string why;
  if (!check_ordinary(g, d, &why))
    throw std::invalid_argument("difference_cube: not a difference set: " + why);
  auto in = member_mask(g, d);
  Cube c(g.n);
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y) {
      int xy = g.op(x, y);
      for (int z = 0; z < g.n; ++z)
        if (in[g.op(xy, z)]) c.set(x, y, z, true);
    }
  return c;
}

PairSet translate(const FiniteGroup& g, const PairSet& d, int a, int b) {
  if (a < 0 || a >= g.n || b < 0 || b >= g.n)
    throw std::invalid_argument("translate: element out of range");
  PairSet out;
  out.reserve(d.size());
  for (auto [x, y] : d) out.emplace_back(g.op(a, x), g.op(b, y));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Multiplier> multipliers(const FiniteGroup& g, const PairSet& d) {
  std::string why;
  if (!check_ds3(g, d, &why))
    throw std::invalid_argument("multipliers: not a difference set of propriety 3: " + why);
  std::vector<Multiplier> out;
  for (const auto& phi : automorphisms(g, std::max(16, g.n))) {
    PairSet img;
    img.reserve(d.size());
    for (auto [x, y] : d) img.emplace_back(phi[x], phi[y]);
    std::sort(img.begin(), img.end());
    bool found = false;
    for (int a = 0; a < g.n && !found; ++a)
      for (int b = 0; b < g.n && !found; ++b)
        if (translate(g, d, a, b) == img) {
          out.push_back({phi, a, b});
          found = true;
        }
  }
  return out;
}

std::vector<int> q16_difference_set() { return {0, 6, 8, 12, 13, 15}; }

std::vector<int> paley_difference_set(int q) {
  if (q % 4 != 3)
    throw std::invalid_argument("paley_difference_set: q must be 3 mod 4");
  return prime_field(q).qr;
}

PairSet paley_lift(const FiniteGroup& g, const std::vector<int>& d) {
  std::string why;
  auto p = check_ordinary(g, d, &why);
  if (!p) throw std::invalid_argument("paley_lift: not a difference set: " + why);
  int v = g.n;
  if (v % 4 != 3 || p->k != (v - 1) / 2 || p->lambda != (v - 3) / 4)
    throw std::invalid_argument("paley_lift: parameters not of shape (4n-1, 2n-1, n-1)");
  auto in = member_mask(g, d);
  PairSet out;
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y) {
      if (in[x] && in[y])
        out.emplace_back(x, y);
      else if (!in[x] && !in[y] && x != y)
        out.emplace_back(x, y);
    }
  return out;
}

PairSet hadamard_lift(const FiniteGroup& g, const std::vector<int>& d,
                      HadamardLift variant) {
  std::string why;
  auto p = check_ordinary(g, d, &why);
  if (!p) throw std::invalid_argument("hadamard_lift: not a difference set: " + why);
  int v = g.n;
  int n = 0;
  for (int t = 1; 4 * t * t <= v; ++t)
    if (4 * t * t == v) n = t;
  if (n == 0 || p->k != 2 * n * n - n || p->lambda != n * n - n)
    throw std::invalid_argument(
        "hadamard_lift: parameters not of shape (4n^2, 2n^2-n, n^2-n)");
  auto in = member_mask(g, d);
  PairSet out;
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y) {
      bool take = false;
      switch (variant) {
        case HadamardLift::Squares:
          take = in[x] == in[y];
          break;
        case HadamardLift::OffDiagonal:
          take = in[x] == in[y] && x != y;
          break;
        case HadamardLift::Mixed:
          take = in[x] != in[y];
          break;
      }
      if (take) out.emplace_back(x, y);
    }
  return out;
}

namespace {

// Candidate sets are built as increasing lists of pair codes x*v+y. A pair
// of distinct codes falls on at most one of the three conditions, so one
// slot byte per ordered pair suffices: slot g in [1,v) for condition 1,
// v+g for condition 2, 2v+g for condition 3, and slot 0 for pairs that
// count nowhere. Counters for all slots live in one array; the slot-0
// counter doubles as the complement of the running total of all three
// condition sums (total = m(m-1) - cnt[0] over m chosen codes).
struct SearchTables {
  int v = 0, v2 = 0, k = 0;
  int nslots = 0;
  int lam_min = 0, lam_max = 0;
  std::vector<uint8_t> contrib;
  std::vector<int32_t> lim;
  // Free-search symmetry data: tr[a*v2+b] renormalizes b when the set is
  // left-translated to carry a to (0,0); psi holds the code maps of
  // (phi,phi) composed with an optional coordinate swap, which preserve
  // validity and the equivalence class of the development.
  std::vector<int> tr;
  std::vector<std::vector<int>> psi;
};

SearchTables build_tables(const FiniteGroup& g, int k, bool with_sym) {
  SearchTables t;
  t.v = g.n;
  t.v2 = t.v * t.v;
  t.k = k;
  t.nslots = 3 * t.v;
  if (t.nslots > 255)
    throw std::invalid_argument("search_ds3: group order too large");
  auto lb = lambda_bounds(t.v, k);
  t.lam_min = std::max(lb.lower, 0);
  t.lam_max = lb.upper;
  t.contrib.assign(static_cast<std::size_t>(t.v2) * t.v2, 0);
  for (int a = 0; a < t.v2; ++a) {
    int ax = a / t.v, ay = a % t.v;
    for (int b = 0; b < t.v2; ++b) {
      int s = 0;
      if (a != b) {
        int bx = b / t.v, by = b % t.v;
        if (ay == by)
          s = t.v + g.right_diff(ax, bx);
        else if (ax == bx)
          s = 2 * t.v + g.right_diff(ay, by);
        else {
          int l = g.left_diff(ax, bx);
          if (l == g.left_diff(ay, by)) s = l;
        }
      }
      t.contrib[static_cast<std::size_t>(a) * t.v2 + b] = static_cast<uint8_t>(s);
    }
  }
  t.lim.assign(t.nslots, std::numeric_limits<int32_t>::max());
  for (int e = 1; e < t.v; ++e)
    t.lim[e] = t.lim[t.v + e] = t.lim[2 * t.v + e] = t.lam_max;
  if (with_sym) {
    t.tr.assign(static_cast<std::size_t>(t.v2) * t.v2, 0);
    for (int a = 0; a < t.v2; ++a) {
      int ix = g.inv(a / t.v), iy = g.inv(a % t.v);
      for (int b = 0; b < t.v2; ++b)
        t.tr[static_cast<std::size_t>(a) * t.v2 + b] =
            pair_code(t.v, g.op(ix, b / t.v), g.op(iy, b % t.v));
    }
    std::vector<GroupAutomorphism> autos;
    try {
      autos = automorphisms(g, 64);
    } catch (const std::exception&) {
      GroupAutomorphism id(g.n);
      for (int i = 0; i < g.n; ++i) id[i] = i;
      autos = {id};
    }
    for (const auto& phi : autos)
      for (int e = 0; e < 2; ++e) {
        std::vector<int> m(t.v2);
        for (int c = 0; c < t.v2; ++c) {
          int x = phi[c / t.v], y = phi[c % t.v];
          m[c] = e ? pair_code(t.v, y, x) : pair_code(t.v, x, y);
        }
        t.psi.push_back(std::move(m));
      }
  }
  return t;
}

struct Scratch {
  std::vector<std::vector<int32_t>> buf;
  std::vector<int> sel;
  std::vector<uint8_t> bad;
  std::vector<uint8_t> ok2;
  std::vector<uint64_t> badmask;
  std::vector<std::vector<int>> out;
  uint64_t pending = 0;
};

struct Ds3Search {
  const FiniteGroup& g;
  SearchTables t;
  bool use_mask;
  uint64_t max_nodes;
  std::atomic<uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<int> next_task{0};
  int task_count = 0;
  std::vector<std::vector<std::vector<int>>> found;
  // multiplier mode
  bool orbit_mode = false;
  std::vector<std::vector<int>> orbits;
  std::vector<int> suffix;
  std::mutex err_mutex;
  std::exception_ptr err;

  Ds3Search(const FiniteGroup& g_, const Ds3SearchOptions& opt)
      : g(g_),
        t(build_tables(g_, opt.k, !opt.multiplier.has_value())),
        use_mask(t.v2 <= 64),
        max_nodes(opt.max_nodes) {
    if (opt.multiplier) {
      orbit_mode = true;
      build_orbits(*opt.multiplier);
      task_count = static_cast<int>(orbits.size());
    } else {
      task_count = t.v2 - 1;
    }
    found.resize(task_count);
  }

  void build_orbits(const GroupAutomorphism& phi) {
    if (static_cast<int>(phi.size()) != g.n)
      throw std::invalid_argument("search_ds3: multiplier size mismatch");
    std::vector<char> hit(g.n, 0);
    for (int x : phi) {
      if (x < 0 || x >= g.n || hit[x])
        throw std::invalid_argument("search_ds3: multiplier is not a bijection");
      hit[x] = 1;
    }
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        if (phi[g.op(a, b)] != g.op(phi[a], phi[b]))
          throw std::invalid_argument("search_ds3: multiplier is not an automorphism");
    std::vector<int> code_map(t.v2);
    for (int c = 0; c < t.v2; ++c)
      code_map[c] = pair_code(t.v, phi[c / t.v], phi[c % t.v]);
    std::vector<char> seen(t.v2, 0);
    for (int c0 = 0; c0 < t.v2; ++c0) {
      if (seen[c0]) continue;
      std::vector<int> orb;
      int x = c0;
      do {
        seen[x] = 1;
        orb.push_back(x);
        x = code_map[x];
      } while (x != c0);
      std::sort(orb.begin(), orb.end());
      orbits.push_back(std::move(orb));
    }
    suffix.assign(orbits.size() + 1, 0);
    for (int i = static_cast<int>(orbits.size()) - 1; i >= 0; --i)
      suffix[i] = suffix[i + 1] + static_cast<int>(orbits[i].size());
  }

  void flush(Scratch& s) {
    uint64_t total = nodes.fetch_add(s.pending, std::memory_order_relaxed) + s.pending;
    s.pending = 0;
    if (max_nodes && total > max_nodes) stop.store(true, std::memory_order_relaxed);
  }

  bool count_node(Scratch& s) {
    if (++s.pending >= 4096) flush(s);
    return !stop.load(std::memory_order_relaxed);
  }

  // dst = src plus the contributions of new code d against sel[0..cnt);
  // fails as soon as a condition counter passes lam_max. cmax tracks the
  // largest condition counter seen, t3 the running condition-3 total.
  bool extend(const std::vector<int32_t>& src, std::vector<int32_t>& dst,
              const int* sel, int cnt, int d, int& cmax, int& t3) const {
    dst = src;
    const uint8_t* cb = t.contrib.data();
    const int32_t* lim = t.lim.data();
    for (int i = 0; i < cnt; ++i) {
      int q = sel[i];
      int s = cb[static_cast<std::size_t>(q) * t.v2 + d];
      if (++dst[s] > lim[s]) return false;
      if (s) {
        if (dst[s] > cmax) cmax = dst[s];
        t3 += s > 2 * t.v;
      }
      s = cb[static_cast<std::size_t>(d) * t.v2 + q];
      if (++dst[s] > lim[s]) return false;
      if (s) {
        if (dst[s] > cmax) cmax = dst[s];
        t3 += s > 2 * t.v;
      }
    }
    return true;
  }

  // Necessary conditions for some completion to reach a common count
  // lambda*(v-1) in all three conditions with lambda within bounds. Every
  // counter only grows, every missing ordered pair feeds at most one
  // condition, and with codes inserted in increasing order rows close one
  // by one, capping future same-x pairs by the row capacities (rp = count
  // in the open row of last_code; rp < 0 when insertion is unordered).
  bool feasible_node(int m, int cmax, int t3, int last_code, int rp,
                     const std::vector<int32_t>& cnt) const {
    if (t.v < 2) return true;
    long long per = t.v - 1;
    long long sum = static_cast<long long>(m) * (m - 1) - cnt[0];
    long long grow = static_cast<long long>(t.k) * (t.k - 1) -
                     static_cast<long long>(m) * (m - 1);
    long long lo = std::max<long long>(t.lam_min, cmax);
    lo = std::max(lo, (sum + 3 * per - 1) / (3 * per));
    lo = std::max(lo, (t3 + per - 1) / per);
    lo = std::max(lo, (sum - t3 + 2 * per - 1) / (2 * per));
    if (lo > t.lam_max) return false;
    if (3 * lo * per > sum + grow) return false;
    if (rp >= 0) {
      int R = t.k - m;
      int room = t.v - 1 - last_code % t.v;
      int rows_left = t.v - 1 - last_code / t.v;
      int a = std::min(R, room);
      long long t3cap = static_cast<long long>(rp + a) * (rp + a - 1) -
                        static_cast<long long>(rp) * (rp - 1);
      int rem = R - a;
      for (int j = 0; j < rows_left && rem > 0; ++j) {
        int b = std::min(rem, t.v);
        t3cap += static_cast<long long>(b) * (b - 1);
        rem -= b;
      }
      if (rem > 0) return false;
      if (lo * per > t3 + t3cap) return false;
    }
    return true;
  }

  // Sharper near-leaf variant scanning the per-condition totals.
  bool feasible(const std::vector<int32_t>& cnt, int m, int cmax) const {
    if (t.v < 2) return true;
    long long grow = static_cast<long long>(t.k) * (t.k - 1) -
                     static_cast<long long>(m) * (m - 1);
    long long t1 = 0, t2 = 0, t3 = 0;
    for (int e = 1; e < t.v; ++e) {
      t1 += cnt[e];
      t2 += cnt[t.v + e];
      t3 += cnt[2 * t.v + e];
    }
    long long per = t.v - 1;
    long long tmax = std::max({t1, t2, t3});
    long long lo = std::max<long long>((tmax + per - 1) / per, cmax);
    if (lo < t.lam_min) lo = t.lam_min;
    if (lo > t.lam_max) return false;
    if (3 * lo * per > t1 + t2 + t3 + grow) return false;
    for (long long ti : {t1, t2, t3})
      if (lo * per > ti + grow) return false;
    return true;
  }

  bool valid_leaf(const std::vector<int32_t>& cnt) const {
    if (t.v < 2) return true;
    int32_t lam = cnt[1];
    for (int e = 1; e < t.v; ++e)
      if (cnt[e] != lam || cnt[t.v + e] != lam || cnt[2 * t.v + e] != lam)
        return false;
    return true;
  }

  void dfs_free(int depth, int last, uint64_t selmask, int cmax, int t3,
                int rp, Scratch& s) {
    int need = t.k - depth;
    int hi = t.v2 - need;
    for (int d = last + 1; d <= hi; ++d) {
      if (use_mask) {
        if (s.badmask[d] & selmask) continue;
      } else if (!s.ok2[d]) {
        continue;
      }
      if (!count_node(s)) return;
      if (!use_mask) {
        bool ok = true;
        for (int i = 2; i < depth; ++i) {
          int q = s.sel[i];
          if (s.bad[static_cast<std::size_t>(q) * t.v2 + d] ||
              s.bad[static_cast<std::size_t>(d) * t.v2 + q]) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
      }
      int cm = cmax, t3n = t3;
      if (!extend(s.buf[depth], s.buf[depth + 1], s.sel.data(), depth, d,
                  cm, t3n))
        continue;
      int m = depth + 1;
      if (m == t.k) {
        if (valid_leaf(s.buf[m])) {
          s.sel.push_back(d);
          s.out.push_back(s.sel);
          s.sel.pop_back();
        }
        continue;
      }
      int rn = d / t.v == last / t.v ? rp + 1 : 1;
      if (!feasible_node(m, cm, t3n, d, rn, s.buf[m])) continue;
      if (m >= t.k - 4 && !feasible(s.buf[m], m, cm)) continue;
      s.sel.push_back(d);
      dfs_free(m, d, selmask | (use_mask ? uint64_t{1} << d : 0), cm, t3n,
               rn, s);
      s.sel.pop_back();
    }
  }

  void run_free_task(int c, Scratch& s) {
    int v2 = t.v2;
    auto is_bad = [&](int a, int b) {
      int tb = t.tr[static_cast<std::size_t>(a) * v2 + b];
      for (const auto& m : t.psi) {
        int im = m[tb];
        if (im > 0 && im < c) return true;
      }
      return false;
    };
    if (use_mask) {
      s.badmask.assign(v2, 0);
      for (int a = 0; a < v2; ++a)
        for (int b = 0; b < v2; ++b) {
          if (a == b) continue;
          if (is_bad(a, b)) {
            s.badmask[b] |= uint64_t{1} << a;
            s.badmask[a] |= uint64_t{1} << b;
          }
        }
      if (s.badmask[c] & 1) return;
    } else {
      s.bad.assign(static_cast<std::size_t>(v2) * v2, 0);
      for (int a = 0; a < v2; ++a)
        for (int b = 0; b < v2; ++b)
          if (a != b && is_bad(a, b))
            s.bad[static_cast<std::size_t>(a) * v2 + b] = 1;
      if (s.bad[c] || s.bad[static_cast<std::size_t>(c) * v2]) return;
      s.ok2.assign(v2, 0);
      for (int d = c + 1; d < v2; ++d)
        s.ok2[d] = !(s.bad[d] || s.bad[static_cast<std::size_t>(d) * v2] ||
                     s.bad[static_cast<std::size_t>(c) * v2 + d] ||
                     s.bad[static_cast<std::size_t>(d) * v2 + c]);
    }
    if (!count_node(s)) return;
    s.buf[1].assign(t.nslots, 0);
    int first = 0, cmax = 0, t3 = 0;
    if (!extend(s.buf[1], s.buf[2], &first, 1, c, cmax, t3)) return;
    s.sel = {0, c};
    if (t.k == 2) {
      if (valid_leaf(s.buf[2])) s.out.push_back(s.sel);
      return;
    }
    int rp = c < t.v ? 2 : 1;
    if (!feasible_node(2, cmax, t3, c, rp, s.buf[2])) return;
    if (2 >= t.k - 4 && !feasible(s.buf[2], 2, cmax)) return;
    dfs_free(2, c, (uint64_t{1}) | (uint64_t{1} << c), cmax, t3, rp, s);
  }

  // Orbit mode: candidate sets are unions of whole orbits. Elements of a
  // new orbit are folded into the counters one at a time.
  bool add_orbit(const std::vector<int32_t>& src, std::vector<int32_t>& dst,
                 Scratch& s, const std::vector<int>& orb, int& cmax,
                 int& t3) const {
    dst = src;
    std::size_t base = s.sel.size();
    const uint8_t* cb = t.contrib.data();
    const int32_t* lim = t.lim.data();
    for (int e : orb) {
      for (std::size_t i = 0; i < s.sel.size(); ++i) {
        int q = s.sel[i];
        int s1 = cb[static_cast<std::size_t>(q) * t.v2 + e];
        int s2 = cb[static_cast<std::size_t>(e) * t.v2 + q];
        if (++dst[s1] > lim[s1] || ++dst[s2] > lim[s2]) {
          s.sel.resize(base);
          return false;
        }
        if (s1) {
          if (dst[s1] > cmax) cmax = dst[s1];
          t3 += s1 > 2 * t.v;
        }
        if (s2) {
          if (dst[s2] > cmax) cmax = dst[s2];
          t3 += s2 > 2 * t.v;
        }
      }
      s.sel.push_back(e);
    }
    return true;
  }

  void dfs_orbits(int oi, int level, int cmax, int t3, Scratch& s) {
    int cur = static_cast<int>(s.sel.size());
    for (int i = oi; i < static_cast<int>(orbits.size()); ++i) {
      if (cur + suffix[i] < t.k) break;
      int m = static_cast<int>(orbits[i].size());
      if (cur + m > t.k) continue;
      if (!count_node(s)) return;
      int cm = cmax, t3n = t3;
      if (!add_orbit(s.buf[level], s.buf[level + 1], s, orbits[i], cm, t3n))
        continue;
      if (cur + m == t.k) {
        if (valid_leaf(s.buf[level + 1])) {
          std::vector<int> codes = s.sel;
          std::sort(codes.begin(), codes.end());
          s.out.push_back(std::move(codes));
        }
        s.sel.resize(cur);
        continue;
      }
      if (!feasible_node(cur + m, cm, t3n, 0, -1, s.buf[level + 1]) ||
          (cur + m >= t.k - 4 && !feasible(s.buf[level + 1], cur + m, cm))) {
        s.sel.resize(cur);
        continue;
      }
      dfs_orbits(i + 1, level + 1, cm, t3n, s);
      s.sel.resize(cur);
    }
  }

  void run_orbit_task(int i0, Scratch& s) {
    int m = static_cast<int>(orbits[i0].size());
    if (m > t.k || suffix[i0] < t.k) return;
    if (!count_node(s)) return;
    s.sel.clear();
    s.buf[0].assign(t.nslots, 0);
    int cmax = 0, t3 = 0;
    if (!add_orbit(s.buf[0], s.buf[1], s, orbits[i0], cmax, t3)) return;
    if (m == t.k) {
      if (valid_leaf(s.buf[1])) {
        std::vector<int> codes = s.sel;
        std::sort(codes.begin(), codes.end());
        s.out.push_back(std::move(codes));
      }
      return;
    }
    if (!feasible_node(m, cmax, t3, 0, -1, s.buf[1])) return;
    if (m >= t.k - 4 && !feasible(s.buf[1], m, cmax)) return;
    dfs_orbits(i0 + 1, 1, cmax, t3, s);
  }

  void worker() {
    try {
      Scratch s;
      s.buf.assign(t.k + 2, std::vector<int32_t>(t.nslots, 0));
      s.sel.reserve(t.k + 1);
      for (;;) {
        int task = next_task.fetch_add(1, std::memory_order_relaxed);
        if (task >= task_count || stop.load(std::memory_order_relaxed)) break;
        s.out.clear();
        if (orbit_mode)
          run_orbit_task(task, s);
        else
          run_free_task(task + 1, s);
        found[task] = std::move(s.out);
        s.out = {};
      }
      flush(s);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!err) err = std::current_exception();
      stop.store(true, std::memory_order_relaxed);
    }
  }
};

}  // namespace

Ds3SearchResult search_ds3(const FiniteGroup& g, const Ds3SearchOptions& opt) {
  int v = g.n, v2 = v * v;
  if (opt.k < 0 || opt.k > v2)
    throw std::invalid_argument("search_ds3: k out of range");
  Ds3SearchResult res;
  res.v = v;
  res.k = opt.k;
  if (opt.k == 0) {
    res.sets = {PairSet{}};
  } else if (opt.k == 1 && !opt.multiplier) {
    res.sets = {PairSet{{0, 0}}};
  } else {
    Ds3Search search(g, opt);
    int workers = std::max(1, opt.workers);
    workers = std::min(workers, search.task_count);
    std::vector<std::thread> pool;
    for (int i = 1; i < workers; ++i)
      pool.emplace_back([&search] { search.worker(); });
    search.worker();
    for (auto& th : pool) th.join();
    if (search.err) std::rethrow_exception(search.err);
    res.nodes = search.nodes.load();
    res.complete = !search.stop.load();
    for (auto& task_sets : search.found)
      for (auto& codes : task_sets) res.sets.push_back(codes_to_pairs(v, codes));
  }
  // classify developments up to equivalence
  std::map<int, std::set<Cube>> classes;
  std::mutex merge_mutex;
  std::atomic<std::size_t> idx{0};
  int cworkers = std::max(1, std::min(opt.workers, static_cast<int>(res.sets.size())));
  std::exception_ptr cls_err;
  auto classify = [&] {
    std::vector<std::pair<int, Cube>> local;
    try {
      for (;;) {
        std::size_t i = idx.fetch_add(1);
        if (i >= res.sets.size()) break;
        auto p = check_ds3(g, res.sets[i]);
        if (!p) throw std::logic_error("search_ds3: recorded set fails check_ds3");
        local.emplace_back(p->lambda, canonical_cube(dev(g, res.sets[i])));
      }
      std::lock_guard<std::mutex> lock(merge_mutex);
      for (auto& [lam, c] : local) classes[lam].insert(std::move(c));
    } catch (...) {
      std::lock_guard<std::mutex> lock(merge_mutex);
      if (!cls_err) cls_err = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < cworkers; ++i) pool.emplace_back(classify);
  classify();
  for (auto& th : pool) th.join();
  if (cls_err) std::rethrow_exception(cls_err);
  for (auto& [lam, cs] : classes)
    res.classes.emplace(lam, std::vector<Cube>(cs.begin(), cs.end()));
  return res;
}

}  // namespace cube3
