// Core data model: points with structured labels, blocks, group partitions,
// (partial) resolutions and subdesign embeddings.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kirkman {

// Thrown for structural errors; `code` is a stable machine-readable tag
// (DuplicateBlock, UnknownPoint, MissingIngredient, ...).
struct DesignError : std::runtime_error {
  std::string code;
  DesignError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// Structured point label.  Labels round-trip through the text format.
struct Label {
  enum class Kind { Residue, Infinity, Product, Opaque };
  Kind kind = Kind::Opaque;
  // Residue: value = r, copy = level, primed = sub-copy flag.
  long value = 0;
  int copy = 0;
  bool primed = false;
  // Infinity: value = index.
  // Product: text = printed inner label, copy = factor index.
  // Opaque: text.
  std::string text;

  static Label residue(long r, int copy = 0, bool primed = false);
  static Label infinity(long index);
  static Label product(const Label& inner, int factor);
  static Label opaque(std::string s);

  std::string str() const;
  static Label parse(const std::string& s);
  bool operator==(const Label&) const = default;
};

using Block = std::vector<int>;  // sorted, distinct point ids

// Group type in exponential notation, e.g. 6^9 or 48^7 24^1.
struct GroupTypeVector {
  // (size, count) pairs, kept sorted by size descending for printing.
  std::vector<std::pair<int, int>> parts;

  static GroupTypeVector uniform(int g, int u) { return {{{g, u}}}; }
  static GroupTypeVector of_sizes(const std::vector<int>& sizes);
  long total() const;
  int group_count() const;
  std::string str() const;
  static GroupTypeVector parse(const std::string& s);
  bool operator==(const GroupTypeVector&) const = default;
};

enum class Kind { STS, KTS, GDD, PBD, TD, RTD, Frame, FrameWithSub };
std::string kind_name(Kind k);
Kind kind_parse(const std::string& s);

struct SubdesignEmbedding {
  enum class Alignment { SplitGroups, WholeGroups, PlainSubset };
  std::string name;
  std::vector<int> points;        // sorted host point ids
  std::vector<int> block_ids;     // sorted host block indices
  Alignment alignment = Alignment::PlainSubset;
  std::vector<int> whole_group_indices;        // WholeGroups: host group indices T
  std::vector<std::vector<int>> sub_groups;    // SplitGroups/WholeGroups: host ids per sub-group
  Kind sub_kind = Kind::STS;
  GroupTypeVector sub_type;  // for GDD-like sub-kinds
};

// Universal certified object.  Immutable by convention after construction.
struct DesignInstance {
  int v = 0;
  std::vector<Label> labels;                // size v; unique
  std::vector<Block> blocks;                // internally sorted, lexicographic order
  std::vector<std::vector<int>> groups;     // optional partition
  struct Class {
    int hole = -1;               // -1: Full; otherwise group index
    std::vector<int> block_ids;  // sorted
  };
  std::vector<Class> classes;
  std::vector<SubdesignEmbedding> subs;
  Kind kind = Kind::STS;

  const Label& label(int p) const { return labels.at(p); }
  int point_by_label(const Label& l) const;  // -1 if absent
  int find_block(const Block& sorted_block) const;  // -1 if absent
  GroupTypeVector group_type() const;
};

// Raw (pre-canonical) input: everything referenced by label.
struct RawDesign {
  std::vector<Label> points;
  std::vector<std::vector<Label>> blocks;
  std::vector<std::vector<Label>> groups;
  struct RawClass {
    int hole = -1;                   // group index as listed, -1 = Full
    std::vector<int> block_indices;  // indices into `blocks` as given
  };
  std::vector<RawClass> classes;
  Kind kind = Kind::STS;
};

// Sorts blocks internally and lexicographically, assigns stable ids,
// rejects duplicates.  Idempotent.
DesignInstance canonicalize(const RawDesign& raw);

// Re-canonicalize an already-built instance (used by compositor outputs).
DesignInstance canonicalize(DesignInstance d);

// Blocks of d entirely inside pts, relabeled densely.  No resolution carried.
DesignInstance induced_subdesign(const DesignInstance& d, const std::vector<int>& pts);

// Point map for weight-w inflation: x -> w points labeled Product(x, 1..w).
// Returns the new label list; point x maps to ids x*w .. x*w+w-1.
std::vector<Label> relabel_product(const DesignInstance& d, int w);

}  // namespace kirkman
