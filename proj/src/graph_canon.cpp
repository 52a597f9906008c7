#include "cube3/graph_canon.hpp"

#include <algorithm>
#include <compare>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace cube3::canon {

namespace {

// Ordered partition of the vertex set into contiguous cells of `order`.
struct Partition {
  std::vector<int> order;      // position -> vertex
  std::vector<int> posv;       // vertex -> position
  std::vector<int> cellStart;  // position -> start of its cell
  std::vector<int> cellLen;    // valid at cell starts
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[a] = b;
  }
};

using Trace = std::vector<int32_t>;

class Searcher {
 public:
  explicit Searcher(const ColoredGraph& g) : g_(g), n_(g.n) {
    adj_.resize(n_);
    for (int u = 0; u < n_; ++u) {
      adj_[u] = g.adj[u];
      std::sort(adj_[u].begin(), adj_[u].end());
      adj_[u].erase(std::unique(adj_[u].begin(), adj_[u].end()), adj_[u].end());
    }
    cnt_.assign(n_, 0);
    cellmark_.assign(n_, 0);
    inq_.assign(n_, 0);
  }

  CanonResult run() {
    Partition p;
    p.order.resize(n_);
    p.posv.resize(n_);
    p.cellStart.resize(n_);
    p.cellLen.assign(n_, 0);
    for (int i = 0; i < n_; ++i) p.order[i] = i;
    std::stable_sort(p.order.begin(), p.order.end(),
                     [&](int a, int b) { return g_.color[a] < g_.color[b]; });
    int s = 0;
    while (s < n_) {
      int e = s;
      while (e < n_ && g_.color[p.order[e]] == g_.color[p.order[s]]) ++e;
      p.cellLen[s] = e - s;
      for (int i = s; i < e; ++i) {
        p.posv[p.order[i]] = i;
        p.cellStart[i] = s;
      }
      s = e;
    }
    std::deque<int> q;
    for (int c = 0; c < n_; c = c + p.cellLen[c]) {
      q.push_back(c);
      inq_[c] = 1;
    }
    rec(p, std::move(q), 0, true, true);

    CanonResult res;
    res.labeling.assign(n_, 0);
    for (int i = 0; i < n_; ++i) res.labeling[bestOrder_[i]] = i;
    res.generators = gens_;
    res.nodes = nodes_;
    res.certificate = make_certificate();
    return res;
  }

 private:
  const ColoredGraph& g_;
  int n_;
  std::vector<std::vector<int>> adj_;

  std::vector<int> cnt_;
  std::vector<char> cellmark_;
  std::vector<char> inq_;
  std::vector<int> wbuf_;
  Partition la_;
  Trace laTrace_;

  // Lookahead target selection pays off only when refinement is weak and
  // the graph is big; small graphs do fine with the smallest-cell rule.
  static constexpr int kLookaheadMinN = 256;
  static constexpr int kLookaheadMaxCell = 64;

  bool buildingFirst_ = true;
  std::vector<Trace> firstTrace_;
  std::vector<Trace> bestTrace_;
  int bestLen_ = 0;
  bool firstSet_ = false;
  bool bestHasLeaf_ = false;
  std::vector<int> firstOrder_, bestOrder_;
  std::vector<uint64_t> firstAdj_, bestAdj_;
  std::vector<std::vector<int>> gens_;
  std::vector<int> base_;
  uint64_t nodes_ = 0;

  void refine(Partition& p, std::deque<int>& q, Trace& tr) {
    while (!q.empty()) {
      int ws = q.front();
      q.pop_front();
      if (!inq_[ws]) continue;
      inq_[ws] = 0;
      int wl = p.cellLen[ws];
      wbuf_.assign(p.order.begin() + ws, p.order.begin() + ws + wl);

      std::vector<int> touched;
      std::vector<int> tcells;
      for (int w : wbuf_)
        for (int u : adj_[w])
          if (cnt_[u]++ == 0) touched.push_back(u);
      for (int u : touched) {
        int cs = p.cellStart[p.posv[u]];
        if (!cellmark_[cs]) {
          cellmark_[cs] = 1;
          tcells.push_back(cs);
        }
      }
      std::sort(tcells.begin(), tcells.end());
      tr.push_back(-1);
      tr.push_back(ws);
      tr.push_back(wl);

      for (int cs : tcells) {
        cellmark_[cs] = 0;
        int L = p.cellLen[cs];
        tr.push_back(-2);
        tr.push_back(cs);
        if (L == 1) {
          tr.push_back(cnt_[p.order[cs]]);
          tr.push_back(1);
          continue;
        }
        auto beg = p.order.begin() + cs;
        std::stable_sort(beg, beg + L, [&](int a, int b) { return cnt_[a] < cnt_[b]; });
        for (int i = 0; i < L; ++i) p.posv[p.order[cs + i]] = cs + i;

        std::vector<std::pair<int, int>> subs;  // (start, len)
        int i = 0;
        while (i < L) {
          int j = i;
          int cv = cnt_[p.order[cs + i]];
          while (j < L && cnt_[p.order[cs + j]] == cv) ++j;
          tr.push_back(cv);
          tr.push_back(j - i);
          subs.push_back({cs + i, j - i});
          i = j;
        }
        if (subs.size() > 1) {
          for (auto [ss, ll] : subs) {
            p.cellLen[ss] = ll;
            for (int t = 0; t < ll; ++t) p.cellStart[ss + t] = ss;
          }
          if (inq_[cs]) {
            for (std::size_t t = 1; t < subs.size(); ++t) {
              q.push_back(subs[t].first);
              inq_[subs[t].first] = 1;
            }
          } else {
            std::size_t skip = 0;
            for (std::size_t t = 1; t < subs.size(); ++t)
              if (subs[t].second > subs[skip].second) skip = t;
            for (std::size_t t = 0; t < subs.size(); ++t)
              if (t != skip) {
                q.push_back(subs[t].first);
                inq_[subs[t].first] = 1;
              }
          }
        }
      }
      for (int u : touched) cnt_[u] = 0;
    }
  }

  bool discrete(const Partition& p) const {
    for (int s = 0; s < n_; s += p.cellLen[s])
      if (p.cellLen[s] > 1) return false;
    return true;
  }

  std::vector<uint64_t> leaf_adj(const Partition& p) const {
    std::vector<uint64_t> bits((static_cast<std::size_t>(n_) * n_ + 63) / 64, 0);
    for (int u = 0; u < n_; ++u)
      for (int w : adj_[u]) {
        if (w < u) continue;
        int i = p.posv[u], j = p.posv[w];
        if (i > j) std::swap(i, j);
        std::size_t b = static_cast<std::size_t>(i) * n_ + j;
        bits[b >> 6] |= uint64_t{1} << (b & 63);
      }
    return bits;
  }

  void record_automorphism(const std::vector<int>& mu_order, const Partition& leaf) {
    std::vector<int> g(n_);
    for (int u = 0; u < n_; ++u) g[u] = mu_order[leaf.posv[u]];
    bool ident = true;
    for (int u = 0; u < n_; ++u)
      if (g[u] != u) {
        ident = false;
        break;
      }
    if (ident) return;
    for (int u = 0; u < n_; ++u)
      if (g_.color[g[u]] != g_.color[u])
        throw std::logic_error("canonical search produced a color-breaking map");
    std::vector<int> img;
    for (int u = 0; u < n_; ++u) {
      img.clear();
      for (int w : adj_[u]) img.push_back(g[w]);
      std::sort(img.begin(), img.end());
      if (img != adj_[g[u]])
        throw std::logic_error("canonical search produced a non-automorphism");
    }
    gens_.push_back(std::move(g));
  }

  void individualize(Partition& p, int cs, int u) {
    int pu = p.posv[u];
    int other = p.order[cs];
    std::swap(p.order[cs], p.order[pu]);
    p.posv[u] = cs;
    p.posv[other] = pu;
    int L = p.cellLen[cs];
    p.cellLen[cs] = 1;
    p.cellLen[cs + 1] = L - 1;
    for (int t = 1; t < L; ++t) p.cellStart[cs + t] = cs + 1;
  }

  void rec(Partition p, std::deque<int> q, int level, bool eqF, bool eqB) {
    ++nodes_;
    Trace T;
    refine(p, q, T);

    if (buildingFirst_) {
      firstTrace_.push_back(T);
      bestTrace_.push_back(T);
      bestLen_ = static_cast<int>(bestTrace_.size());
    } else {
      eqF = eqF && level < static_cast<int>(firstTrace_.size()) && T == firstTrace_[level];
      if (eqB) {
        if (level == bestLen_) {
          // extending a rewritten best path
          if (level < static_cast<int>(bestTrace_.size()))
            bestTrace_[level] = T;
          else
            bestTrace_.push_back(T);
          bestLen_ = level + 1;
        } else {
          auto c = T <=> bestTrace_[level];
          if (c == std::strong_ordering::greater) {
            bestTrace_[level] = T;
            bestLen_ = level + 1;
            bestHasLeaf_ = false;
          } else if (c == std::strong_ordering::less) {
            if (!eqF) return;
            eqB = false;
          }
        }
      } else if (!eqF) {
        return;
      }
    }

    if (discrete(p)) {
      auto A = leaf_adj(p);
      if (!firstSet_) {
        firstSet_ = true;
        buildingFirst_ = false;
        firstOrder_ = p.order;
        firstAdj_ = A;
        bestOrder_ = p.order;
        bestAdj_ = A;
        bestHasLeaf_ = true;
        return;
      }
      bool isAutoFirst = eqF && A == firstAdj_;
      if (isAutoFirst) record_automorphism(firstOrder_, p);
      if (eqB) {
        if (!bestHasLeaf_) {
          bestOrder_ = p.order;
          bestAdj_ = A;
          bestHasLeaf_ = true;
        } else if (A > bestAdj_) {
          bestOrder_ = p.order;
          bestAdj_ = A;
        } else if (A == bestAdj_ && !isAutoFirst) {
          record_automorphism(bestOrder_, p);
        }
      }
      return;
    }

    // target cell: on large graphs, prefer the small cell whose
    // individualization shatters the partition the most (scored over every
    // member, so the choice is invariant under relabeling); otherwise the
    // smallest non-singleton cell, lowest position
    int ts = -1, tl = n_ + 1;
    if (n_ > kLookaheadMinN) {
      std::vector<int> bestScore;
      for (int s = 0; s < n_; s += p.cellLen[s]) {
        int L = p.cellLen[s];
        if (L < 2 || L > kLookaheadMaxCell) continue;
        std::vector<int> sc(L);
        for (int t = 0; t < L; ++t) {
          la_ = p;
          individualize(la_, s, p.order[s + t]);
          std::deque<int> lq;
          lq.push_back(s);
          inq_[s] = 1;
          laTrace_.clear();
          refine(la_, lq, laTrace_);
          int cells = 0;
          for (int c = 0; c < n_; c += la_.cellLen[c]) ++cells;
          sc[t] = cells;
        }
        std::sort(sc.rbegin(), sc.rend());
        if (ts < 0 || sc > bestScore) {
          bestScore = std::move(sc);
          ts = s;
          tl = L;
        }
      }
    }
    if (ts < 0)
      for (int s = 0; s < n_; s += p.cellLen[s])
        if (p.cellLen[s] > 1 && p.cellLen[s] < tl) {
          ts = s;
          tl = p.cellLen[s];
        }

    std::vector<int> cand(p.order.begin() + ts, p.order.begin() + ts + tl);
    std::sort(cand.begin(), cand.end());

    std::vector<int> explored;
    UnionFind uf(0);
    std::size_t ufGens = static_cast<std::size_t>(-1);
    for (int u : cand) {
      if (!explored.empty()) {
        if (ufGens != gens_.size()) {
          uf = UnionFind(n_);
          for (const auto& g : gens_) {
            bool fixes = true;
            for (int b : base_)
              if (g[b] != b) {
                fixes = false;
                break;
              }
            if (fixes)
              for (int x = 0; x < n_; ++x) uf.unite(x, g[x]);
          }
          ufGens = gens_.size();
        }
        bool skip = false;
        for (int w : explored)
          if (uf.find(w) == uf.find(u)) {
            skip = true;
            break;
          }
        if (skip) continue;
      }
      base_.push_back(u);
      Partition child = p;
      individualize(child, ts, u);
      std::deque<int> cq;
      cq.push_back(ts);
      inq_[ts] = 1;
      rec(std::move(child), std::move(cq), level + 1, eqF, eqB);
      base_.pop_back();
      explored.push_back(u);
    }
  }

  std::vector<uint8_t> make_certificate() const {
    std::vector<uint8_t> cert;
    auto push32 = [&](uint32_t x) {
      for (int i = 3; i >= 0; --i) cert.push_back(static_cast<uint8_t>(x >> (8 * i)));
    };
    push32(static_cast<uint32_t>(n_));
    for (int i = 0; i < n_; ++i) push32(static_cast<uint32_t>(g_.color[bestOrder_[i]]));
    for (uint64_t w : bestAdj_)
      for (int i = 7; i >= 0; --i) cert.push_back(static_cast<uint8_t>(w >> (8 * i)));
    return cert;
  }
};

}  // namespace

CanonResult canonical_labeling(const ColoredGraph& g) {
  if (g.n == 0) {
    CanonResult r;
    r.certificate = {0, 0, 0, 0};
    return r;
  }
  Searcher s(g);
  return s.run();
}

// ---- Schreier-Sims order computation ----

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {  // (a*b)(x) = a[b[x]]
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm invert(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}

bool is_identity(const Perm& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != static_cast<int>(i)) return false;
  return true;
}

struct BSGS {
  int n;
  std::vector<int> base;
  std::vector<std::vector<Perm>> gens;                      // per level
  std::vector<std::unordered_map<int, Perm>> trans;         // point -> rep mapping base[l] to point

  explicit BSGS(int n_) : n(n_) {}

  void rebuild_orbit(std::size_t l) {
    auto& tr = trans[l];
    tr.clear();
    Perm id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    tr[base[l]] = id;
    std::vector<int> frontier{base[l]};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int p : frontier)
        for (const auto& s : gens[l]) {
          int q = s[p];
          if (!tr.count(q)) {
            tr[q] = compose(s, tr[p]);
            next.push_back(q);
          }
        }
      frontier = std::move(next);
    }
  }

  void add(Perm g, std::size_t l) {
    if (is_identity(g)) return;
    if (l == base.size()) {
      int b = 0;
      while (g[b] == b) ++b;
      base.push_back(b);
      gens.emplace_back();
      trans.emplace_back();
    }
    gens[l].push_back(g);
    rebuild_orbit(l);
    // close under Schreier generators; recursive add() may reallocate the
    // per-level containers, so iterate over snapshots
    std::vector<int> orbit;
    for (const auto& [p, _] : trans[l]) orbit.push_back(p);
    std::sort(orbit.begin(), orbit.end());
    const std::vector<Perm> level_gens = gens[l];
    const std::unordered_map<int, Perm> level_trans = trans[l];
    for (int p : orbit)
      for (const auto& s : level_gens) {
        Perm sch = compose(invert(level_trans.at(s[p])), compose(s, level_trans.at(p)));
        sift(std::move(sch), l + 1);
      }
  }

  void sift(Perm g, std::size_t l) {
    for (std::size_t j = l; j < base.size(); ++j) {
      if (is_identity(g)) return;
      int x = g[base[j]];
      auto it = trans[j].find(x);
      if (it == trans[j].end()) {
        add(std::move(g), j);
        return;
      }
      g = compose(invert(it->second), g);
    }
    if (!is_identity(g)) add(std::move(g), base.size());
  }
};

}  // namespace

uint64_t permutation_group_order(int n, const std::vector<std::vector<int>>& generators) {
  BSGS b(n);
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != n)
      throw std::invalid_argument("permutation size mismatch");
    b.sift(g, 0);
  }
  unsigned __int128 order = 1;
  for (std::size_t l = 0; l < b.base.size(); ++l) {
    order *= b.trans[l].size();
    if (order > static_cast<unsigned __int128>(UINT64_MAX))
      throw std::overflow_error("group order exceeds 64 bits");
  }
  return static_cast<uint64_t>(order);
}

}  // namespace cube3::canon
