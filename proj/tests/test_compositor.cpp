#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "kirkman/compositor.hpp"
#include "kirkman/ingredients.hpp"
#include "kirkman/starter.hpp"
#include "kirkman/verify.hpp"

using namespace kirkman;

namespace {

DesignInstance frame12_7() {
  return develop_starter(*builtin("starter-(1;2)^7").starter);
}

}  // namespace

TEST_CASE("MK equivalence: develop, adjoin, puncture") {
  // the worked Z_7 example developed into (1;2)^7, adjoined to an MK(15),
  // then the sub-STS punctured back into a frame 2^7 with a WholeGroups 2^3
  DesignInstance frame = frame12_7();
  DesignInstance mk = frame_to_mk(frame);
  CHECK(mk.v == 15);
  CHECK(mk.blocks.size() == 35);
  CHECK(certify(mk).pass);
  REQUIRE(!mk.subs.empty());
  CHECK(mk.subs[0].points.size() == 7);

  DesignInstance punct = puncture_sub(mk);
  CHECK(punct.v == 14);
  CHECK(punct.groups.size() == 7);
  REQUIRE(!punct.subs.empty());
  CHECK(punct.subs[0].alignment == SubdesignEmbedding::Alignment::WholeGroups);
  CHECK(punct.subs[0].sub_groups.size() == 3);
  CHECK(certify(punct).pass);

  // frame -> MK -> frame roundtrip re-verifies
  DesignInstance back = mk_to_frame(mk);
  CHECK(back.v == 14);
  CHECK(certify(back).pass);
}

TEST_CASE("weight-1 inflation is a block-multiset no-op") {
  DesignInstance f = develop_starter(*builtin("starter-(3;6)^5").starter);
  DesignInstance g = inflate_by_rtd(f, 1);
  CHECK(g.v == f.v);
  CHECK(g.blocks.size() == f.blocks.size());
  CHECK(certify(g).pass);
}

TEST_CASE("inflating (1;2)^7 by 3 gives a verified (3;6)^7") {
  DesignInstance f = inflate_by_rtd(frame12_7(), 3);
  CHECK(f.v == 42);
  CHECK(f.blocks.size() == 36u * 7 * 6 / 6);
  CHECK(certify(f).pass);
  REQUIRE(!f.subs.empty());
  CHECK(f.subs[0].points.size() == 21);
}

TEST_CASE("tripling Kirkman's KTS(15) gives KTS(45) with STS(21)") {
  DesignInstance k = inflate_by_rtd(*builtin("kts15-kirkman").design, 3);
  CHECK(k.v == 45);
  CHECK(k.blocks.size() == 45u * 44 / 6);
  CHECK(k.classes.size() == 22);
  CHECK(certify(k).pass);
  REQUIRE(!k.subs.empty());
  CHECK(k.subs[0].points.size() == 21);
}

TEST_CASE("mainframe over (3;6)^5 gives KTS(33) with STS(15)") {
  DesignInstance f = develop_starter(*builtin("starter-(3;6)^5").starter);
  DesignInstance k = mainframe_kts(f);
  CHECK(k.v == 33);
  CHECK(k.classes.size() == 16);
  CHECK(certify(k).pass);
  bool has15 = false;
  for (auto& emb : k.subs) has15 |= emb.points.size() == 15;
  CHECK(has15);
}

TEST_CASE("hole filling reproduces the KTS(63) of the 12n+3 pattern") {
  DesignInstance f = develop_starter(*builtin("starter-(6;12)^5").starter);
  std::vector<DesignInstance> fillers;
  DesignInstance filler = designate_z_block(*builtin("kts15-kirkman").design, 1);
  for (int i = 0; i < 5; i++) fillers.push_back(filler);
  DesignInstance k = fill_frame_holes(f, 3, fillers);
  CHECK(k.v == 63);
  CHECK(k.classes.size() == 31);
  CHECK(certify(k).pass);
  bool has31 = false;
  for (auto& emb : k.subs) has31 |= emb.points.size() == 31;
  CHECK(has31);
}

TEST_CASE("singular product rejects out-of-range z") {
  DesignInstance mk = frame_to_mk(frame12_7());
  CHECK_THROWS_AS(singular_product_b(mk, 9, 5), DesignError);
}

TEST_CASE("adhoc 13-group frame and its closure") {
  DesignInstance f = adhoc_frame_m13(8);
  CHECK(f.v == 104);
  CHECK(f.groups.size() == 13);
  CHECK(certify(f).pass);
  REQUIRE(!f.subs.empty());
  CHECK(f.subs[0].alignment == SubdesignEmbedding::Alignment::WholeGroups);
  DesignInstance k = adhoc_kts_closure(f);
  CHECK(k.v == 105);
  CHECK(certify(k).pass);
  bool has25 = false;
  for (auto& emb : k.subs) has25 |= emb.points.size() == 25;
  CHECK(has25);
}
