#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "kirkman/ingredients.hpp"
#include "kirkman/starter.hpp"
#include "kirkman/verify.hpp"

using namespace kirkman;

namespace {

// the worked Z_7 example: strong starter {4,6},{1,5},{2,3} with completion
// triples on the level-1 copy
StarterSpec z7_example() {
  StarterSpec s;
  s.claimed_type = "(1;2)^7";
  s.n = 7;
  s.H = {0};
  s.levels = 2;
  s.sub_levels = {1};
  s.pairs = {{4, 6}, {1, 5}, {2, 3}};
  s.triples = {{1, 2, 4}};
  return s;
}

}  // namespace

TEST_CASE("the Z_7 strong starter passes and a corrupted pair fails") {
  StarterSpec s = z7_example();
  Report r = check_frame_starter(s, StarterMode::Strong);
  CHECK(r.pass);
  // canonical adder -(s_i + t_i): sums 10,6,5 -> adder 4,1,2 (mod 7)
  Report radd = check_frame_starter(s, StarterMode::Strong,
                                    std::vector<int>{4, 1, 2});
  CHECK(radd.pass);
  StarterSpec bad = s;
  bad.pairs[2] = {2, 4};  // coverage + difference violations
  CHECK(!check_frame_starter(bad, StarterMode::Strong).pass);
}

TEST_CASE("the Z_7 Kirkman frame starter develops into a verified (1;2)^7") {
  StarterSpec s = z7_example();
  CHECK(check_kirkman_frame_starter(s).pass);
  DesignInstance f = develop_starter(s);
  CHECK(f.v == 14);
  CHECK(f.blocks.size() == 28);
  CHECK(f.classes.size() == 7);
  CHECK(check_frame_resolution(f).pass);
  StarterSpec no_t = s;
  no_t.triples.clear();
  CHECK(!check_kirkman_frame_starter(no_t).pass);
}

TEST_CASE("every bundled starter checks and develops with exact counts") {
  struct Row {
    const char* name;
    int t, u;  // frame type t^u (t = 2g)
  };
  const Row rows[] = {
      {"starter-(1;2)^7", 2, 7},     {"starter-(2;4)^7", 4, 7},
      {"starter-(3;6)^5", 6, 5},     {"starter-(3;6)^9", 6, 9},
      {"starter-(3;6)^11", 6, 11},   {"starter-(3;6)^15", 6, 15},
      {"starter-(3;6)^17", 6, 17},   {"starter-(3;6)^23", 6, 23},
      {"starter-(3;6)^27", 6, 27},   {"starter-(3;6)^29", 6, 29},
      {"starter-(3;6)^33", 6, 33},   {"starter-(3;6)^39", 6, 39},
      {"starter-(3;6)^51", 6, 51},   {"starter-(3;6)^59", 6, 59},
      {"starter-(6;12)^5", 12, 5},   {"starter-(6;12)^8", 12, 8},
      {"starter-(6;12)^9", 12, 9},   {"starter-(12;24)^4", 24, 4},
      {"starter-(12;24)^5", 24, 5},  {"starter-(12;24)^8", 24, 8},
  };
  for (const Row& row : rows) {
    CAPTURE(row.name);
    StarterSpec s = *builtin(row.name).starter;
    CHECK(check_kirkman_frame_starter(s).pass);
    DesignInstance f = develop_starter(s);
    long t = row.t, u = row.u;
    CHECK(f.v == t * u);
    CHECK(static_cast<long>(f.blocks.size()) == t * t * u * (u - 1) / 6);
    CHECK(static_cast<long>(f.classes.size()) == u * t / 2);
    Report r = certify(f);
    CHECK(r.pass);
  }
}

TEST_CASE("the (1;2)^115 starter checks and develops") {
  StarterSpec s = *builtin("starter-(1;2)^115").starter;
  CHECK(check_kirkman_frame_starter(s).pass);
  DesignInstance f = develop_starter(s);
  CHECK(f.v == 230);
  CHECK(f.blocks.size() == 2u * 2 * 115 * 114 / 6);
  CHECK(certify(f).pass);
}

TEST_CASE("starter files round-trip bit-exactly") {
  StarterSpec s = *builtin("starter-(3;6)^9").starter;
  std::ostringstream out1;
  print_starter(s, out1);
  std::istringstream in(out1.str());
  StarterSpec s2 = parse_starter(in);
  std::ostringstream out2;
  print_starter(s2, out2);
  CHECK(out1.str() == out2.str());
}

TEST_CASE("the KTS(75) base-block system assembles exactly") {
  DesignInstance d = *builtin("kts75-sub33-kts9").design;
  CHECK(d.v == 75);
  CHECK(d.blocks.size() == 925);
  CHECK(d.classes.size() == 37);
  CHECK(check_resolution(d).pass);
  REQUIRE(d.subs.size() >= 2);
  for (auto& emb : d.subs) CHECK(check_subdesign(d, emb).pass);
  // the declared sub-STS(33) and sub-KTS(9) are disjoint
  bool found33 = false, found9 = false;
  std::vector<int> p33, p9;
  for (auto& emb : d.subs) {
    if (emb.points.size() == 33) {
      found33 = true;
      p33 = emb.points;
    }
    if (emb.points.size() == 9) {
      found9 = true;
      p9 = emb.points;
    }
  }
  CHECK(found33);
  CHECK(found9);
  for (int p : p9)
    CHECK(std::find(p33.begin(), p33.end(), p) == p33.end());
}
