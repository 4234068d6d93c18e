#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "kirkman/design.hpp"
#include "kirkman/ingredients.hpp"
#include "kirkman/io.hpp"

using namespace kirkman;

namespace {

RawDesign fano_raw() {
  RawDesign raw;
  for (int i = 0; i < 7; i++) raw.points.push_back(Label::residue(i));
  const int fano[7][3] = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6},
                          {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};
  for (auto& b : fano)
    raw.blocks.push_back({Label::residue(b[0]), Label::residue(b[1]), Label::residue(b[2])});
  raw.kind = Kind::STS;
  return raw;
}

}  // namespace

TEST_CASE("canonicalize sorts blocks internally and lexicographically") {
  RawDesign raw;
  for (int i = 0; i < 6; i++) raw.points.push_back(Label::residue(i));
  raw.blocks.push_back({Label::residue(3), Label::residue(1), Label::residue(2)});
  raw.blocks.push_back({Label::residue(0), Label::residue(4), Label::residue(5)});
  raw.kind = Kind::PBD;
  DesignInstance d = canonicalize(raw);
  CHECK(d.blocks.size() == 2);
  CHECK(d.blocks[0] == Block{0, 4, 5});
  CHECK(d.blocks[1] == Block{1, 2, 3});
}

TEST_CASE("canonicalize rejects duplicate blocks") {
  RawDesign raw;
  for (int i = 0; i < 3; i++) raw.points.push_back(Label::residue(i));
  raw.blocks.push_back({Label::residue(0), Label::residue(1), Label::residue(2)});
  raw.blocks.push_back({Label::residue(2), Label::residue(1), Label::residue(0)});
  CHECK_THROWS_WITH_AS(canonicalize(raw), doctest::Contains("DuplicateBlock"), DesignError);
}

TEST_CASE("canonicalize rejects unknown points") {
  RawDesign raw;
  raw.points.push_back(Label::residue(0));
  raw.blocks.push_back({Label::residue(0), Label::residue(9)});
  CHECK_THROWS_AS(canonicalize(raw), DesignError);
}

TEST_CASE("canonicalize is idempotent") {
  DesignInstance d = canonicalize(fano_raw());
  DesignInstance d2 = canonicalize(d);
  CHECK(d.blocks == d2.blocks);
  CHECK(d.labels == d2.labels);
}

TEST_CASE("bundled KTS(15) has 35 blocks and 7 classes") {
  DesignInstance d = *builtin("kts15-kirkman").design;
  CHECK(d.v == 15);
  CHECK(d.blocks.size() == 35);
  CHECK(d.classes.size() == 7);
  for (auto& c : d.classes) {
    CHECK(c.hole == -1);
    CHECK(c.block_ids.size() == 5);
  }
}

TEST_CASE("induced subdesign of KTS(15) on the sub-STS points is an STS(7)") {
  DesignInstance d = *builtin("kts15-kirkman").design;
  REQUIRE(!d.subs.empty());
  DesignInstance sub = induced_subdesign(d, d.subs[0].points);
  CHECK(sub.v == 7);
  CHECK(sub.blocks.size() == 7);
  // every pair inside covered exactly once
  std::vector<std::vector<int>> cov(7, std::vector<int>(7, 0));
  for (auto& b : sub.blocks)
    for (size_t i = 0; i < b.size(); i++)
      for (size_t j = i + 1; j < b.size(); j++) cov[b[i]][b[j]]++;
  for (int i = 0; i < 7; i++)
    for (int j = i + 1; j < 7; j++) CHECK(cov[i][j] == 1);
}

TEST_CASE("induced subdesign edge cases") {
  DesignInstance d = canonicalize(fano_raw());
  DesignInstance one = induced_subdesign(d, {0, 1, 3});
  CHECK(one.blocks.size() == 1);
  CHECK(one.v == 3);
  DesignInstance none = induced_subdesign(d, {0, 1});
  CHECK(none.blocks.empty());
}

TEST_CASE("relabel_product point counts and identity weight") {
  DesignInstance d = canonicalize(fano_raw());
  auto w3 = relabel_product(d, 3);
  CHECK(w3.size() == 21);
  auto w1 = relabel_product(d, 1);
  CHECK(w1.size() == 7);
  // bijectivity: all labels distinct
  for (size_t i = 0; i < w3.size(); i++)
    for (size_t j = i + 1; j < w3.size(); j++) CHECK(!(w3[i] == w3[j]));
}

TEST_CASE("labels round-trip through the text form") {
  for (const Label& l : {Label::residue(5), Label::residue(7, 2, true),
                         Label::infinity(3), Label::opaque("h"),
                         Label::product(Label::residue(4, 1, false), 2)}) {
    CHECK(Label::parse(l.str()) == l);
  }
}

TEST_CASE("group type vectors print and parse in exponential notation") {
  GroupTypeVector t = GroupTypeVector::uniform(6, 9);
  CHECK(t.str() == "6^9");
  CHECK(t.total() == 54);
  CHECK(t.group_count() == 9);
  GroupTypeVector mixed = GroupTypeVector::of_sizes({48, 48, 24, 48});
  CHECK(GroupTypeVector::parse(mixed.str()) == mixed);
}

TEST_CASE("design files round-trip") {
  DesignInstance d = *builtin("kts15-kirkman").design;
  std::ostringstream out;
  print_design(d, out);
  std::istringstream in(out.str());
  DesignInstance d2 = parse_design(in);
  CHECK(d.blocks == d2.blocks);
  CHECK(d.labels == d2.labels);
  CHECK(d.classes.size() == d2.classes.size());
  CHECK(d.subs.size() == d2.subs.size());
}
