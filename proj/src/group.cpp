#include "cube3/group.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cube3 {

namespace {

FiniteGroup from_table(int n, const std::string& spec,
                       const std::vector<int>& table,
                       std::vector<std::string> names) {
  if (n < 1 || n > 255) throw std::invalid_argument("group order out of range (1..255)");
  FiniteGroup g;
  g.n = n;
  g.spec = spec;
  g.table.resize(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < g.table.size(); ++i) {
    if (table[i] < 0 || table[i] >= n) throw std::invalid_argument("Cayley entry out of range");
    g.table[i] = static_cast<uint8_t>(table[i]);
  }
  if (names.empty()) {
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  g.names = std::move(names);
  g.inverse.assign(n, 0);
  validate_group(g);  // fills nothing; throws on bad table
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.op(a, b) == 0) g.inverse[a] = static_cast<uint8_t>(b);
  return g;
}

FiniteGroup cyclic(int m) {
  std::vector<int> t(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[static_cast<std::size_t>(a) * m + b] = (a + b) % m;
  return from_table(m, "C" + std::to_string(m), t, {});
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, const std::string& spec) {
  int n = a.n * b.n;
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  auto id = [&](int x, int y) { return x * b.n + y; };
  for (int x1 = 0; x1 < a.n; ++x1)
    for (int y1 = 0; y1 < b.n; ++y1)
      for (int x2 = 0; x2 < a.n; ++x2)
        for (int y2 = 0; y2 < b.n; ++y2)
          t[static_cast<std::size_t>(id(x1, y1)) * n + id(x2, y2)] =
              id(a.op(x1, x2), b.op(y1, y2));
  std::vector<std::string> names;
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < b.n; ++y) names.push_back("(" + a.names[x] + "," + b.names[y] + ")");
  return from_table(n, spec, t, std::move(names));
}

FiniteGroup symmetric3() {
  // permutations of {0,1,2} in lexicographic order; op = composition
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const int* p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
    return -1;
  };
  std::vector<int> t(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int c[3];
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[static_cast<std::size_t>(a) * 6 + b] = index_of(c);
    }
  std::vector<std::string> names = {"e", "(23)", "(12)", "(123)", "(132)", "(13)"};
  return from_table(6, "S3", t, std::move(names));
}

FiniteGroup quaternion16() {
  // elements a^i b^j indexed i + 8j with a^8 = 1, b^2 = a^4, b a = a^7 b
  auto id = [](int i, int j) { return i + 8 * j; };
  std::vector<int> t(256);
  for (int i1 = 0; i1 < 8; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < 8; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          int i, j;
          if (j1 == 0) {
            i = (i1 + i2) % 8;
            j = j2;
          } else {
            // a^i1 b a^i2 b^j2 = a^(i1 + 7 i2) b^(1+j2)
            i = (i1 + 7 * i2) % 8;
            j = 1 + j2;
            if (j == 2) {
              i = (i + 4) % 8;  // b^2 = a^4
              j = 0;
            }
          }
          t[static_cast<std::size_t>(id(i1, j1)) * 16 + id(i2, j2)] = id(i, j);
        }
  std::vector<std::string> names;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 8; ++i) {
      std::string s;
      if (i == 0 && j == 0) s = "e";
      if (i > 0) s = i == 1 ? "a" : "a" + std::to_string(i);
      if (j > 0) s += "b";
      names.push_back(s);
    }
  return from_table(16, "Q16", t, std::move(names));
}

}  // namespace

int FiniteGroup::element_order(int a) const {
  int x = a, k = 1;
  while (x != 0) {
    x = op(x, a);
    ++k;
  }
  return k;
}

void validate_group(const FiniteGroup& g) {
  const int n = g.n;
  for (int a = 0; a < n; ++a)
    if (g.op(0, a) != a || g.op(a, 0) != a)
      throw std::invalid_argument("element 0 is not an identity");
  for (int a = 0; a < n; ++a) {
    bool has_inv = false;
    for (int b = 0; b < n; ++b) has_inv = has_inv || g.op(a, b) == 0;
    if (!has_inv) throw std::invalid_argument("missing inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
          throw std::invalid_argument("operation is not associative");
}

FiniteGroup make_group(const std::string& spec) {
  if (spec == "S3") return symmetric3();
  if (spec == "Q16") return quaternion16();
  if (!spec.empty() && spec[0] == 'C') {
    // Cn or CaxCb... direct products
    std::vector<int> orders;
    std::size_t i = 0;
    bool ok = true;
    while (i < spec.size()) {
      if (spec[i] != 'C') {
        ok = false;
        break;
      }
      std::size_t j = i + 1;
      while (j < spec.size() && isdigit(static_cast<unsigned char>(spec[j]))) ++j;
      if (j == i + 1) {
        ok = false;
        break;
      }
      orders.push_back(std::stoi(spec.substr(i + 1, j - i - 1)));
      if (j == spec.size()) {
        i = j;
        break;
      }
      if (spec[j] != 'x') {
        ok = false;
        break;
      }
      i = j + 1;
      if (i == spec.size()) ok = false;
    }
    if (ok && !orders.empty()) {
      for (int m : orders)
        if (m < 1) throw std::invalid_argument("bad cyclic order in group spec");
      FiniteGroup g = cyclic(orders[0]);
      for (std::size_t t = 1; t < orders.size(); ++t) {
        std::string partial = g.spec + "x" + "C" + std::to_string(orders[t]);
        g = direct_product(g, cyclic(orders[t]), partial);
      }
      g.spec = spec;
      return g;
    }
  }
  // otherwise treat as a file path
  return group_from_cayley_file(spec);
}

FiniteGroup group_from_cayley_text(const std::string& text, const std::string& spec_name) {
  std::istringstream in(text);
  int n;
  if (!(in >> n)) throw std::runtime_error("Cayley file: missing order");
  if (n < 1 || n > 255) throw std::runtime_error("Cayley file: order out of range");
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (auto& e : t)
    if (!(in >> e)) throw std::runtime_error("Cayley file: truncated table");
  int extra;
  if (in >> extra) throw std::runtime_error("Cayley file: trailing data");
  return from_table(n, spec_name, t, {});
}

FiniteGroup group_from_cayley_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open group file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return group_from_cayley_text(ss.str(), path);
}

std::string to_cayley_text(const FiniteGroup& g) {
  std::string out = std::to_string(g.n);
  out += '\n';
  for (int a = 0; a < g.n; ++a) {
    for (int b = 0; b < g.n; ++b) {
      if (b) out += ' ';
      out += std::to_string(g.op(a, b));
    }
    out += '\n';
  }
  return out;
}

namespace {

// Greedy generating set: extend while the closure grows.
std::vector<int> generating_set(const FiniteGroup& g) {
  std::vector<char> in_closure(g.n, 0);
  in_closure[0] = 1;
  int closed = 1;
  std::vector<int> gens;
  auto close_over = [&](int x) {
    std::vector<int> frontier{x};
    if (!in_closure[x]) {
      in_closure[x] = 1;
      ++closed;
    }
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int a = 0; a < g.n; ++a)
        if (in_closure[a])
          for (int f : frontier) {
            for (int p : {g.op(a, f), g.op(f, a)})
              if (!in_closure[p]) {
                in_closure[p] = 1;
                ++closed;
                next.push_back(p);
              }
          }
      frontier = std::move(next);
    }
  };
  for (int x = 1; x < g.n && closed < g.n; ++x)
    if (!in_closure[x]) {
      gens.push_back(x);
      close_over(x);
    }
  return gens;
}

// Words expressing every element over the generating set, via BFS.
std::vector<std::vector<int>> element_words(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<std::vector<int>> word(g.n);
  std::vector<char> seen(g.n, 0);
  seen[0] = 1;
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
        int y = g.op(x, gens[gi]);
        if (!seen[y]) {
          seen[y] = 1;
          word[y] = word[x];
          word[y].push_back(gi);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return word;
}

}  // namespace

std::vector<GroupAutomorphism> automorphisms(const FiniteGroup& g, int cap) {
  if (g.n > cap) throw std::invalid_argument("automorphisms: group too large for cap");
  auto gens = generating_set(g);
  auto words = element_words(g, gens);
  std::vector<GroupAutomorphism> found;
  if (gens.empty()) {  // trivial group
    found.push_back({0});
    return found;
  }
  std::vector<int> img(gens.size(), 0);
  std::vector<int> ord(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) ord[i] = g.element_order(gens[i]);

  auto eval = [&](int x) {
    int r = 0;
    for (int gi : words[x]) r = g.op(r, img[gi]);
    return r;
  };

  std::vector<int> phi(g.n);
  auto try_assignment = [&]() {
    for (int x = 0; x < g.n; ++x) phi[x] = eval(x);
    std::vector<char> hit(g.n, 0);
    for (int x = 0; x < g.n; ++x) {
      if (hit[phi[x]]) return;
      hit[phi[x]] = 1;
    }
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        if (phi[g.op(a, b)] != g.op(phi[a], phi[b])) return;
    found.push_back(phi);
  };

  // back-track over generator images; element orders must match
  std::vector<int> choice(gens.size(), -1);
  std::size_t level = 0;
  while (true) {
    if (level == gens.size()) {
      try_assignment();
      --level;
      continue;
    }
    int next = choice[level] + 1;
    while (next < g.n && g.element_order(next) != ord[level]) ++next;
    if (next == g.n) {
      choice[level] = -1;
      if (level == 0) break;
      --level;
      continue;
    }
    choice[level] = next;
    img[level] = next;
    ++level;
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<int> fixed_points(const FiniteGroup& g, const GroupAutomorphism& phi) {
  std::vector<int> fix;
  for (int x = 0; x < g.n; ++x)
    if (phi[x] == x) fix.push_back(x);
  return fix;
}

int permutation_order(const std::vector<int>& p) {
  int n = static_cast<int>(p.size());
  std::vector<char> seen(n, 0);
  long long order = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, x = i;
    while (!seen[x]) {
      seen[x] = 1;
      x = p[x];
      ++len;
    }
    order = std::lcm(order, static_cast<long long>(len));
  }
  return static_cast<int>(order);
}

bool PrimeField::is_qr(int x) const {
  return std::binary_search(qr.begin(), qr.end(), ((x % q) + q) % q);
}

int PrimeField::inv(int a) const {
  a = ((a % q) + q) % q;
  if (a == 0) throw std::invalid_argument("division by zero");
  int r = 1;
  for (int e = q - 2; e > 0; e >>= 1) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
  }
  return r;
}

PrimeField prime_field(int q) {
  if (q < 2) throw std::invalid_argument("prime_field: q must be prime");
  for (int d = 2; static_cast<long long>(d) * d <= q; ++d)
    if (q % d == 0) throw std::invalid_argument("prime_field: q must be prime");
  PrimeField f;
  f.q = q;
  std::vector<char> mark(q, 0);
  for (int x = 1; x < q; ++x) mark[static_cast<long long>(x) * x % q] = 1;
  for (int x = 1; x < q; ++x)
    if (mark[x]) f.qr.push_back(x);
  return f;
}

}  // namespace cube3
