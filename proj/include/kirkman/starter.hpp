// Frame starters, strong starters, adders, Kirkman-frame starters with
// sub-GDD triples, and base-block systems with resolution recipes.
// Everything develops under Z_n acting on residues (copies/primes fixed).
#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kirkman/design.hpp"
#include "kirkman/verify.hpp"

namespace kirkman {

// An element of (Z_n) x copies.  Copies are (level, primed) tags.
struct StarterElem {
  int r = 0;
  int level = 0;
  bool primed = false;
  bool operator==(const StarterElem&) const = default;
  auto operator<=>(const StarterElem&) const = default;
};

struct StarterSpec {
  std::string claimed_type;  // e.g. "(3;6)^9"
  int n = 0;                 // G = Z_n
  std::vector<int> H;        // subgroup as an explicit element set (contains 0)
  int levels = 1;            // residue levels 0..levels-1
  bool primed = false;       // each level doubled into unprimed/primed copies
  // Which copies carry the sub-GDD: either the primed side, or a level set.
  bool sub_primed = false;
  std::vector<int> sub_levels;  // used when !primed (strong form: {1})

  // Pair form (frame/strong starter + completion triples T on the sub copy).
  std::vector<std::pair<int, int>> pairs;   // on (level 0, unprimed)
  std::vector<std::array<int, 3>> triples;  // T, on the sub copy
  std::vector<int> adder;                   // optional, parallel to pairs

  // Raw form: explicit base classes of triples (primed listings).
  std::vector<std::vector<std::array<StarterElem, 3>>> base_classes;

  bool has_pairs() const { return !pairs.empty(); }
  int copy_count() const { return levels * (primed ? 2 : 1); }
  bool copy_in_sub(int level, bool prime) const;
  // frame type parameters: group size, group count
  int frame_group_size() const { return static_cast<int>(H.size()) * copy_count(); }
  int frame_group_count() const { return n / static_cast<int>(H.size()); }
  int sub_group_size() const { return frame_group_size() / 2; }

  // Base classes for development: the raw classes, or the single class
  // synthesized from pairs (x_i = s_i + t_i on the sub copy) and T.
  std::vector<std::vector<std::array<StarterElem, 3>>> development_classes() const;
};

enum class StarterMode { Plain, Strong };

// Conditions (1)-(2) on the pair set; Strong additionally checks distinct
// sums outside H and validity of the canonical adder -(s_i+t_i).  An explicit
// adder, when given, is checked for injectivity and translate coverage.
Report check_frame_starter(const StarterSpec& s, StarterMode mode,
                           const std::optional<std::vector<int>>& adder = std::nullopt);

// Conditions (1)-(4) of the Kirkman-frame starter; for raw listings, checks
// per-class coverage of (G \ H) x copies and certifies the development.
Report check_kirkman_frame_starter(const StarterSpec& s);

// Full development under +1 (mod n): hole partition from cosets of H x copies,
// HoleAligned classes from translates, sub-GDD embedding populated.
// Throws StarterInvalid if the starter does not check out.
DesignInstance develop_starter(const StarterSpec& s);

// ---- base-block systems (e.g. the KTS(75) listing) ----

struct BaseBlockSystem {
  int n = 0;           // development modulus
  int inf_count = 0;   // fixed points inf1..inf_z
  struct Base {
    std::vector<Label> points;  // Residue(r), Residue(r,0,primed) or Infinity(k)
    int short_orbit = 0;        // declared orbit length, 0 = full (n translates)
  };
  std::vector<Base> bases;
  std::vector<Block> extras;  // extra blocks by label index, filled at parse

  std::vector<std::vector<Label>> extra_blocks;  // e.g. the KTS(9) blocks

  // translate classes: class t = listed bases translated by t, t = 0..n-1
  std::vector<int> translate_bases;
  // assembled classes: items are orbit slices and extra-block references
  struct Slice {
    int base = -1;
    int residue = 0, modulus = 1;  // translates t with t % modulus == residue
  };
  struct AssembledClass {
    std::vector<Slice> slices;
    std::vector<int> extra_ids;  // indices into extra_blocks
  };
  std::vector<AssembledClass> assembled;

  // subdesign declarations: named point families ("unprimed","primed","inf")
  struct SubDecl {
    std::string name;
    Kind kind = Kind::STS;
    std::string family;  // unprimed | primed | inf
  };
  std::vector<SubDecl> subs;
};

// Develops the system into a fully resolved design; orbit tags are checked
// (OrbitTagWrong) and the recipe must tile the blocks (RecipeNotPartition).
DesignInstance develop_base_blocks(const BaseBlockSystem& b);

// ---- text formats ----

StarterSpec read_starter_file(const std::string& path);
void write_starter_file(const StarterSpec& s, const std::string& path);
StarterSpec parse_starter(std::istream& in);
void print_starter(const StarterSpec& s, std::ostream& out);

BaseBlockSystem read_base_block_file(const std::string& path);
BaseBlockSystem parse_base_blocks(std::istream& in);

}  // namespace kirkman
