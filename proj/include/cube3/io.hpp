#pragma once

#include <string>

#include "cube3/ast.hpp"
#include "cube3/construct.hpp"
#include "cube3/cube.hpp"
#include "cube3/diffset.hpp"

// Text formats for everything the CLI reads or writes besides .cube files
// (those live in cube.hpp).  On-disk symbol values are 1-based wherever a
// format carries point or symbol labels; pair files for difference sets and
// Cayley tables use raw 0-based element indices, matching the in-memory
// representation of FiniteGroup elements.

namespace cube3 {

// Whole-file helpers; both throw std::runtime_error on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Difference-set file: first line is a group spec (as accepted by
// make_group), each following non-empty line is "x y" with 0-based element
// indices.
struct Ds3File {
  std::string group_spec;
  PairSet set;
};
Ds3File parse_ds3_text(const std::string& text);
std::string to_ds3_text(const std::string& group_spec, const PairSet& set);

// 0/1 incidence matrix: one row per line, one digit per cell.
IntMatrix parse_incidence_text(const std::string& text);
std::string to_incidence_text(const IntMatrix& m);

// Latin square of order <= 9: one row per line, digits 1..v.
LatinSquare parse_latin_text(const std::string& text);
std::string to_latin_text(const LatinSquare& l);

// Hadamard matrix: one row per line, characters '+' and '-'.
HadamardMatrix parse_hadamard_text(const std::string& text);
std::string to_hadamard_text(const HadamardMatrix& h);

// Layer-rainbow cube: v blocks (third coordinate) of v rows of v integers
// in 1..v^2, blocks separated by blank lines.  The parser accepts any
// whitespace layout with exactly v^3 integer tokens.
LayerRainbowCube parse_rainbow_text(const std::string& text);
std::string to_rainbow_text(const LayerRainbowCube& l);

// Steiner system: first line "v b", then b lines of 1-based point indices,
// one block per line.
SteinerSystem parse_steiner_text(const std::string& text);
std::string to_steiner_text(const SteinerSystem& s);

// Association-scheme triple labeling: v blocks of v rows of v relation
// indices, same block convention as the rainbow format.
TripleLabeling parse_ast_text(const std::string& text);
std::string to_ast_text(const TripleLabeling& rel);

// GAP-readable nested list A[x][y][z], 1-based, x outermost, preceded by a
// one-line # comment.
std::string to_gap_text(const Cube& c);

// POV-Ray scene: one sphere per 1-entry at its integer coordinates, three
// axis-aligned light sources.
std::string to_pov_text(const Cube& c);

}  // namespace cube3
