#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "kirkman/design.hpp"
#include "kirkman/ingredients.hpp"
#include "kirkman/starter.hpp"
#include "kirkman/verify.hpp"

using namespace kirkman;

namespace {

DesignInstance fano() {
  RawDesign raw;
  for (int i = 0; i < 7; i++) raw.points.push_back(Label::residue(i));
  const int blocks[7][3] = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6},
                            {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};
  for (auto& b : blocks)
    raw.blocks.push_back({Label::residue(b[0]), Label::residue(b[1]), Label::residue(b[2])});
  for (int i = 0; i < 7; i++) raw.groups.push_back({Label::residue(i)});
  raw.kind = Kind::STS;
  return canonicalize(raw);
}

}  // namespace

TEST_CASE("Fano plane passes check_gdd as a PBD(7,{3})") {
  DesignInstance d = fano();
  Report r = check_gdd(d, {3}, GroupTypeVector::uniform(1, 7));
  CHECK(r.pass);
  CHECK(r.pairs_covered == 21);
}

TEST_CASE("Fano plane minus a block fails with three uncovered pairs") {
  DesignInstance d = fano();
  d.blocks.pop_back();
  Report r = check_gdd(d, {3}, GroupTypeVector::uniform(1, 7));
  CHECK(!r.pass);
  CHECK(r.violation_count == 3);
}

TEST_CASE("developed sub-GDD of the (3;6)^9 starter is a 3-GDD of type 3^9") {
  StarterSpec s = *builtin("starter-(3;6)^9").starter;
  DesignInstance frame = develop_starter(s);
  REQUIRE(!frame.subs.empty());
  Report r = check_subdesign(frame, frame.subs[0]);
  CHECK(r.pass);
  CHECK(frame.subs[0].block_ids.size() == 108);  // 3^2 * 9 * 8 / 6
}

TEST_CASE("bundled resolutions verify") {
  DesignInstance k15 = *builtin("kts15-kirkman").design;
  Report r15 = check_resolution(k15);
  CHECK(r15.pass);
  CHECK(r15.class_count == 7);
  DesignInstance k21 = *builtin("kts21-sub9").design;
  Report r21 = check_resolution(k21);
  CHECK(r21.pass);
  CHECK(r21.class_count == 10);
}

TEST_CASE("negative path: merging two classes breaks the resolution") {
  DesignInstance d = *builtin("kts15-kirkman").design;
  auto merged = d.classes[0];
  for (int b : d.classes[1].block_ids) merged.block_ids.push_back(b);
  std::sort(merged.block_ids.begin(), merged.block_ids.end());
  d.classes.erase(d.classes.begin(), d.classes.begin() + 2);
  d.classes.insert(d.classes.begin(), merged);
  CHECK(!check_resolution(d).pass);
  CHECK(!certify(d).pass);
}

TEST_CASE("negative path: swapping blocks across classes breaks the resolution") {
  DesignInstance d = *builtin("kts15-kirkman").design;
  std::swap(d.classes[0].block_ids[0], d.classes[1].block_ids[0]);
  for (auto& c : d.classes) std::sort(c.block_ids.begin(), c.block_ids.end());
  CHECK(!check_resolution(d).pass);
  CHECK(!certify(d).pass);
}

TEST_CASE("negative path: tampered block breaks pair coverage") {
  DesignInstance d = *builtin("kts15-kirkman").design;
  // replace one block with a different triple; pair coverage must break
  d.blocks[17] = {0, 1, 3};
  for (auto& b : d.blocks) std::sort(b.begin(), b.end());
  CHECK(!certify(d).pass);
}

TEST_CASE("negative path: sub-block replacement breaks the subdesign") {
  DesignInstance d = *builtin("kts15-kirkman").design;
  REQUIRE(!d.subs.empty());
  // swap one declared sub-block id for a host block outside the subdesign
  auto& emb = d.subs[0];
  int outside = -1;
  for (int b = 0; b < static_cast<int>(d.blocks.size()); b++)
    if (std::find(emb.block_ids.begin(), emb.block_ids.end(), b) == emb.block_ids.end()) {
      outside = b;
      break;
    }
  REQUIRE(outside >= 0);
  emb.block_ids.back() = outside;
  std::sort(emb.block_ids.begin(), emb.block_ids.end());
  CHECK(!check_subdesign(d, emb).pass);
  CHECK(!certify(d).pass);
}

TEST_CASE("frame resolution oracle on a developed appendix starter") {
  DesignInstance f = develop_starter(*builtin("starter-(3;6)^5").starter);
  Report r = check_frame_resolution(f);
  CHECK(r.pass);
  CHECK(f.blocks.size() == 120);  // 6^2 * 5 * 4 / 6
  CHECK(f.classes.size() == 15);  // 5 holes x 3 classes
  // corrupting a class so a block meets its own hole must fail
  DesignInstance bad = f;
  int hole = bad.classes[0].hole;
  // find a block meeting group `hole` and push it into that class
  for (int b = 0; b < static_cast<int>(bad.blocks.size()); b++) {
    bool meets = false;
    for (int p : bad.blocks[b])
      if (std::find(bad.groups[hole].begin(), bad.groups[hole].end(), p) !=
          bad.groups[hole].end())
        meets = true;
    if (meets) {
      bad.classes[0].block_ids.push_back(b);
      std::sort(bad.classes[0].block_ids.begin(), bad.classes[0].block_ids.end());
      break;
    }
  }
  CHECK(!check_frame_resolution(bad).pass);
}

TEST_CASE("check_mols accepts orthogonal squares and rejects a repeat") {
  Square l1(7, std::vector<int>(7)), l2 = l1;
  for (int i = 0; i < 7; i++)
    for (int j = 0; j < 7; j++) {
      l1[i][j] = (i + j) % 7;
      l2[i][j] = (i + 2 * j) % 7;
    }
  CHECK(check_mols(7, {l1, l2}).pass);
  CHECK(!check_mols(7, {l1, l1}).pass);
  CHECK(check_mols(8, make_mols(8, 7)).pass);
}

TEST_CASE("arithmetic admissibility predicates") {
  CHECK(admissible_kts(21).ok);
  CHECK(!admissible_kts(19).ok);
  CHECK(admissible_sts(7).ok);
  CHECK(!admissible_sts(8).ok);
  CHECK(!admissible_frame(2, 3).ok);  // u >= 4
  CHECK(admissible_frame(2, 4).ok);
  CHECK(!admissible_frame(3, 4).ok);  // t even
  CHECK(admissible_gdd3(3, 9).ok);
  CHECK(admissible_sts_in_sts(7, 15).ok);
  CHECK(!admissible_sts_in_sts(7, 13).ok);  // v >= 2u+1
}
