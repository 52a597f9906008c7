#include "cube3/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cube3 {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::runtime_error(what);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : split_lines(text)) {
    if (l.find_first_not_of(" \t") != std::string::npos) out.push_back(l);
  }
  return out;
}

std::vector<long long> int_tokens(const std::string& text,
                                  const std::string& what) {
  std::istringstream in(text);
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t pos = 0;
      long long val = std::stoll(tok, &pos);
      if (pos != tok.size()) bad(what + ": bad token '" + tok + "'");
      out.push_back(val);
    } catch (const std::logic_error&) {
      bad(what + ": bad token '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write " + path);
  out << text;
  if (!out) bad("cannot write " + path);
}

Ds3File parse_ds3_text(const std::string& text) {
  auto lines = nonempty_lines(text);
  if (lines.empty()) bad("difference-set file: empty");
  Ds3File f;
  std::istringstream head(lines[0]);
  head >> f.group_spec;
  if (f.group_spec.empty()) bad("difference-set file: missing group spec");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto toks = int_tokens(lines[i], "difference-set file");
    if (toks.size() != 2)
      bad("difference-set file: expected 'x y' on line " +
          std::to_string(i + 1));
    f.set.emplace_back(static_cast<int>(toks[0]), static_cast<int>(toks[1]));
  }
  return f;
}

std::string to_ds3_text(const std::string& group_spec, const PairSet& set) {
  std::string out = group_spec + "\n";
  for (auto& [x, y] : set)
    out += std::to_string(x) + " " + std::to_string(y) + "\n";
  return out;
}

IntMatrix parse_incidence_text(const std::string& text) {
  auto lines = nonempty_lines(text);
  int n = static_cast<int>(lines.size());
  if (n == 0) bad("incidence matrix: empty");
  IntMatrix m(n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(lines[r].size()) != n)
      bad("incidence matrix: row " + std::to_string(r + 1) + " has length " +
          std::to_string(lines[r].size()) + ", expected " + std::to_string(n));
    for (int c = 0; c < n; ++c) {
      char ch = lines[r][c];
      if (ch != '0' && ch != '1')
        bad(std::string("incidence matrix: bad character '") + ch + "'");
      m.at(r, c) = ch - '0';
    }
  }
  return m;
}

std::string to_incidence_text(const IntMatrix& m) {
  std::string out;
  for (int r = 0; r < m.n; ++r) {
    for (int c = 0; c < m.n; ++c)
      out += static_cast<char>('0' + (m.at(r, c) ? 1 : 0));
    out += '\n';
  }
  return out;
}

LatinSquare parse_latin_text(const std::string& text) {
  auto lines = nonempty_lines(text);
  int n = static_cast<int>(lines.size());
  if (n == 0 || n > 9) bad("latin square: need 1..9 rows of digits");
  LatinSquare l(n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(lines[r].size()) != n)
      bad("latin square: row " + std::to_string(r + 1) + " has length " +
          std::to_string(lines[r].size()) + ", expected " + std::to_string(n));
    for (int c = 0; c < n; ++c) {
      char ch = lines[r][c];
      if (ch < '1' || ch > '0' + n)
        bad(std::string("latin square: bad symbol '") + ch + "'");
      l.at(r, c) = ch - '1';
    }
  }
  return l;
}

std::string to_latin_text(const LatinSquare& l) {
  if (l.n > 9) bad("latin square: order > 9 has no digit encoding");
  std::string out;
  for (int r = 0; r < l.n; ++r) {
    for (int c = 0; c < l.n; ++c)
      out += static_cast<char>('1' + l.at(r, c));
    out += '\n';
  }
  return out;
}

HadamardMatrix parse_hadamard_text(const std::string& text) {
  auto lines = nonempty_lines(text);
  int n = static_cast<int>(lines.size());
  if (n == 0) bad("hadamard matrix: empty");
  HadamardMatrix h(n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(lines[r].size()) != n)
      bad("hadamard matrix: row " + std::to_string(r + 1) + " has length " +
          std::to_string(lines[r].size()) + ", expected " + std::to_string(n));
    for (int c = 0; c < n; ++c) {
      char ch = lines[r][c];
      if (ch != '+' && ch != '-')
        bad(std::string("hadamard matrix: bad character '") + ch + "'");
      h.at(r, c) = ch == '+' ? 1 : -1;
    }
  }
  return h;
}

std::string to_hadamard_text(const HadamardMatrix& h) {
  std::string out;
  for (int r = 0; r < h.n; ++r) {
    for (int c = 0; c < h.n; ++c) out += h.at(r, c) > 0 ? '+' : '-';
    out += '\n';
  }
  return out;
}

LayerRainbowCube parse_rainbow_text(const std::string& text) {
  auto toks = int_tokens(text, "rainbow cube");
  int v = static_cast<int>(std::lround(std::cbrt(
      static_cast<double>(toks.size()))));
  if (v < 1 || static_cast<std::size_t>(v) * v * v != toks.size())
    bad("rainbow cube: token count " + std::to_string(toks.size()) +
        " is not a cube");
  LayerRainbowCube l(v);
  std::size_t i = 0;
  for (int z = 0; z < v; ++z)
    for (int x = 0; x < v; ++x)
      for (int y = 0; y < v; ++y) {
        long long val = toks[i++];
        if (val < 1 || val > static_cast<long long>(v) * v)
          bad("rainbow cube: symbol " + std::to_string(val) +
              " out of range 1.." + std::to_string(v * v));
        l.at(x, y, z) = static_cast<int>(val);
      }
  return l;
}

std::string to_rainbow_text(const LayerRainbowCube& l) {
  std::string out;
  for (int z = 0; z < l.v; ++z) {
    if (z) out += '\n';
    for (int x = 0; x < l.v; ++x) {
      for (int y = 0; y < l.v; ++y) {
        if (y) out += ' ';
        out += std::to_string(l.at(x, y, z));
      }
      out += '\n';
    }
  }
  return out;
}

SteinerSystem parse_steiner_text(const std::string& text) {
  auto lines = nonempty_lines(text);
  if (lines.empty()) bad("steiner system: empty");
  auto head = int_tokens(lines[0], "steiner system");
  if (head.size() != 2) bad("steiner system: first line must be 'v b'");
  SteinerSystem s;
  s.v = static_cast<int>(head[0]);
  long long b = head[1];
  if (s.v < 1 || b < 0) bad("steiner system: bad header");
  if (static_cast<long long>(lines.size()) != b + 1)
    bad("steiner system: expected " + std::to_string(b) + " blocks, got " +
        std::to_string(lines.size() - 1));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto toks = int_tokens(lines[i], "steiner system");
    std::vector<int> line;
    for (long long t : toks) {
      if (t < 1 || t > s.v)
        bad("steiner system: point " + std::to_string(t) +
            " out of range 1.." + std::to_string(s.v));
      line.push_back(static_cast<int>(t - 1));
    }
    s.lines.push_back(std::move(line));
  }
  return s;
}

std::string to_steiner_text(const SteinerSystem& s) {
  std::string out =
      std::to_string(s.v) + " " + std::to_string(s.lines.size()) + "\n";
  for (auto& line : s.lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(line[i] + 1);
    }
    out += '\n';
  }
  return out;
}

TripleLabeling parse_ast_text(const std::string& text) {
  auto toks = int_tokens(text, "triple labeling");
  int v = static_cast<int>(std::lround(std::cbrt(
      static_cast<double>(toks.size()))));
  if (v < 1 || static_cast<std::size_t>(v) * v * v != toks.size())
    bad("triple labeling: token count " + std::to_string(toks.size()) +
        " is not a cube");
  int m = 0;
  for (long long t : toks) {
    if (t < 0 || t > 1000) bad("triple labeling: bad relation index");
    m = std::max(m, static_cast<int>(t));
  }
  TripleLabeling rel(v, m);
  std::size_t i = 0;
  for (int z = 0; z < v; ++z)
    for (int x = 0; x < v; ++x)
      for (int y = 0; y < v; ++y) rel.at(x, y, z) = static_cast<int>(toks[i++]);
  return rel;
}

std::string to_ast_text(const TripleLabeling& rel) {
  std::string out;
  for (int z = 0; z < rel.v; ++z) {
    if (z) out += '\n';
    for (int x = 0; x < rel.v; ++x) {
      for (int y = 0; y < rel.v; ++y) {
        if (y) out += ' ';
        out += std::to_string(rel.at(x, y, z));
      }
      out += '\n';
    }
  }
  return out;
}

std::string to_gap_text(const Cube& c) {
  int v = c.order();
  std::string out = "# order " + std::to_string(v) +
                    " cube as A[x][y][z], 1-based, x outermost\n";
  out += "[ ";
  for (int x = 0; x < v; ++x) {
    if (x) out += ", ";
    out += "[ ";
    for (int y = 0; y < v; ++y) {
      if (y) out += ',';
      out += '[';
      for (int z = 0; z < v; ++z) {
        if (z) out += ',';
        out += c.get(x, y, z) ? '1' : '0';
      }
      out += ']';
    }
    out += " ]";
  }
  out += " ]\n";
  return out;
}

std::string to_pov_text(const Cube& c) {
  int v = c.order();
  char buf[160];
  std::string out = "#version 3.7;\n";
  out += "global_settings { assumed_gamma 1.0 }\n";
  out += "background { color rgb <1,1,1> }\n";
  double mid = (1 + v) / 2.0;
  double dist = 3.0 * v;
  std::snprintf(buf, sizeof buf,
                "camera { location <%g,%g,%g> look_at <%g,%g,%g> }\n",
                mid + dist, mid + 0.8 * dist, mid + 1.6 * dist, mid, mid, mid);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "light_source { <%g,0,0> color rgb <1,1,1> }\n", 4.0 * v);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "light_source { <0,%g,0> color rgb <1,1,1> }\n", 4.0 * v);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "light_source { <0,0,%g> color rgb <1,1,1> }\n", 4.0 * v);
  out += buf;
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z) {
        if (!c.get(x, y, z)) continue;
        std::snprintf(buf, sizeof buf,
                      "sphere { <%d,%d,%d>, 0.35 pigment { color rgb "
                      "<0.2,0.4,0.8> } }\n",
                      x + 1, y + 1, z + 1);
        out += buf;
      }
  return out;
}

}  // namespace cube3
