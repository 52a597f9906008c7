#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cube3 {

// Parameters (v, k, lambda) of a three-dimensional symmetric design of
// propriety 3: every layer of a v*v*v 0/1 cube carries k ones and every
// pair of distinct parallel layers shares exactly lambda ones.
struct DesignParams {
  int v = 0;
  int k = 0;
  int lambda = 0;
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

// 0/1 cube of order v. Coordinates are 0-based internally; file formats and
// diagnostics are 1-based. Bit layout is x-major: bit (x*v + y)*v + z.
class Cube {
 public:
  Cube() = default;
  explicit Cube(int v);

  int order() const { return v_; }
  bool get(int x, int y, int z) const {
    std::size_t i = idx(x, y, z);
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(int x, int y, int z, bool value) {
    std::size_t i = idx(x, y, z);
    if (value)
      bits_[i >> 6] |= uint64_t{1} << (i & 63);
    else
      bits_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  long long ones() const;

  // Packed v^2-bit layer with coordinate `axis` fixed to `index`; bit a*v+b
  // holds the cell whose two free coordinates are (a,b) in axis order.
  std::vector<uint64_t> layer(int axis, int index) const;

  // Support cells in x-major scan order.
  std::vector<std::array<int, 3>> support() const;

  const std::vector<uint64_t>& words() const { return bits_; }

  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube&, const Cube&) = default;

 private:
  std::size_t idx(int x, int y, int z) const {
    return (static_cast<std::size_t>(x) * v_ + y) * v_ + z;
  }
  int v_ = 0;
  std::vector<uint64_t> bits_;
};

// Small dense integer matrix (row-major), used for projections, incidence
// matrices of symmetric designs and Latin squares in 0/1 form.
struct IntMatrix {
  int n = 0;
  std::vector<int> a;
  IntMatrix() = default;
  explicit IntMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}
  int& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  int at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

// Latin square of order n with 0-based symbols 0..n-1.
struct LatinSquare {
  int n = 0;
  std::vector<int> a;
  LatinSquare() = default;
  explicit LatinSquare(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}
  int& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  int at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;
};

bool is_latin_square(const LatinSquare& l);

// First violated condition found by verify(), 1-based. axis is 1..3; for a
// layer-sum failure layer2 == 0.
struct VerifyFailure {
  int axis = 0;
  int layer1 = 0;
  int layer2 = 0;
  std::string message;
};

// Decides whether the cube is a three-dimensional symmetric design of
// propriety 3 and returns its parameters; absent otherwise (diagnostic via
// `why`). For v == 1 there are no parallel layer pairs and lambda is 0.
std::optional<DesignParams> verify(const Cube& c, VerifyFailure* why = nullptr);

Cube complement(const Cube& c);

struct LambdaBounds {
  int lower = 0;
  int upper = 0;  // inclusive; lower > upper means no admissible lambda
};

// Necessary bounds on lambda for given (v, k).
LambdaBounds lambda_bounds(int v, int k);
bool lambda_admissible(int v, int k, int lambda);

// For each axis the v^2 row sums along that axis (rows in scan order of the
// two fixed coordinates).
std::array<std::vector<int>, 3> row_sum_profile(const Cube& c);

// Projections along each coordinate: sums over z, y, x respectively.
// [0](x,y), [1](x,z), [2](y,z).
std::array<IntMatrix, 3> projections(const Cube& c);

// Incidence-matrix test for a symmetric design: constant row and column sums
// k and all distinct row pairs and column pairs with dot product lambda.
std::optional<DesignParams> symmetric_design_params(const IntMatrix& m);

// True when all three projections are 0/1 incidence matrices of symmetric
// designs with one common parameter set.
bool is_projection_cube(const Cube& c);

// Parameters (v, k', lambda') when every one of the 3v layers is an
// incidence matrix of a symmetric design with those common parameters.
std::optional<DesignParams> propriety2_params(const Cube& c);

// A(x,y,z) = 1 iff L(x,y) == z (0-based symbols).
Cube latin_to_cube(const LatinSquare& l);
std::optional<LatinSquare> cube_to_latin(const Cube& c);

// Strict text format: line 1 is the decimal order v, followed by v blocks
// separated by exactly one blank line; block z has v lines of v characters
// '0'/'1'; character y of line x is A(x,y,z). The text ends with a newline.
std::string to_cube_text(const Cube& c);
Cube parse_cube_text(const std::string& text);  // throws std::runtime_error
Cube load_cube_file(const std::string& path);
void save_cube_file(const Cube& c, const std::string& path);

}  // namespace cube3
