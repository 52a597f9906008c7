#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cube3 {

// Finite group given by its Cayley table. Element 0 is the identity.
struct FiniteGroup {
  int n = 0;
  std::string spec;                // creation spec, e.g. "C7", "C2xC2", "Q16"
  std::vector<uint8_t> table;      // n*n, table[x*n+y] = x*y
  std::vector<uint8_t> inverse;
  std::vector<std::string> names;

  int op(int a, int b) const { return table[static_cast<std::size_t>(a) * n + b]; }
  int inv(int a) const { return inverse[a]; }
  // differences in additive reading: left = -a + b, right = a - b
  int left_diff(int a, int b) const { return op(inv(a), b); }
  int right_diff(int a, int b) const { return op(a, inv(b)); }
  int element_order(int a) const;
};

// Checks identity/associativity/inverses by brute force; throws on failure.
void validate_group(const FiniteGroup& g);

// Builds a group from a spec string: "Cn", direct products "CaxCb...",
// "S3", "Q16", or a path to a Cayley-table file.
FiniteGroup make_group(const std::string& spec);

// Cayley-table file: line 1 = n, then n rows of n space-separated 0-based
// element indices (row x, column y holds x*y).
FiniteGroup group_from_cayley_text(const std::string& text, const std::string& spec_name);
FiniteGroup group_from_cayley_file(const std::string& path);
std::string to_cayley_text(const FiniteGroup& g);

using GroupAutomorphism = std::vector<int>;

// All automorphisms, found by assigning images to a generating set.
// Throws when |G| exceeds the cap.
std::vector<GroupAutomorphism> automorphisms(const FiniteGroup& g, int cap = 16);

std::vector<int> fixed_points(const FiniteGroup& g, const GroupAutomorphism& phi);

int permutation_order(const std::vector<int>& p);

// Prime field arithmetic with the quadratic-residue set.
struct PrimeField {
  int q = 0;
  std::vector<int> qr;  // nonzero quadratic residues, sorted
  bool is_qr(int x) const;
  int add(int a, int b) const { return (a + b) % q; }
  int sub(int a, int b) const { return (a - b % q + q) % q; }
  int mul(int a, int b) const { return static_cast<int>(static_cast<long long>(a) * b % q); }
  int neg(int a) const { return (q - a % q) % q; }
  int inv(int a) const;
};

PrimeField prime_field(int q);  // throws unless q prime

}  // namespace cube3
