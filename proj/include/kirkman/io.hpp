// Text formats: design files, MOLS files, and report rendering.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kirkman/design.hpp"
#include "kirkman/verify.hpp"

namespace kirkman {

// design v=<n> kind=<KIND>
// point <id> <label>
// block <id>: p q r
// group <i>: p p ...
// class [hole=<i>]: b b ...
// sub <name> kind=<K> align=<split|whole|plain> [type=<g^u>] [t=<i,...>]:
//     points=p,...; blocks=b,...; groups=p,..|p,..
// '#' starts a comment; ids must be dense and sections may interleave.
DesignInstance parse_design(std::istream& in);
void print_design(const DesignInstance& d, std::ostream& out);
DesignInstance read_design_file(const std::string& path);
void write_design_file(const DesignInstance& d, const std::string& path);

// mols n=<n> k=<k> followed by k row-major n x n squares.
std::vector<std::vector<std::vector<int>>> parse_mols_file(std::istream& in, int& n);
std::vector<std::vector<std::vector<int>>> read_mols_file(const std::string& path, int& n);

// Human-readable verification report; last line is "PASS" or "FAIL".
void print_report(const Report& r, std::ostream& out);

}  // namespace kirkman
