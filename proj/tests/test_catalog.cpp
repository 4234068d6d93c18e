#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "kirkman/catalog.hpp"
#include "kirkman/ingredients.hpp"
#include "kirkman/verify.hpp"

using namespace kirkman;

TEST_CASE("exception sets are stored verbatim") {
  CHECK(exception_set_E().size() == 10);
  CHECK(exception_set_E2() == std::vector<long>{83, 87, 107, 111, 139, 179});
  CHECK(thm38_exceptions() == std::vector<long>{6, 10, 12, 14, 18, 26, 30});
  CHECK(open_kts_sub_u() == std::vector<long>{249, 321, 537});
  CHECK(!exception_set_E1().empty());
  CHECK(!exception_set_E3().empty());
  CHECK(!thm310_exceptions().empty());
}

TEST_CASE("existence queries reproduce the knowledge state") {
  CatalogEntry mk115 = existence_query("mk", {115});
  CHECK(mk115.status == CatalogEntry::Status::YesRoute);
  CHECK(mk115.route.find("mk") != std::string::npos);

  for (long u : {249L, 321L, 537L}) {
    CatalogEntry e = existence_query("kts-sub", {u, 2 * u + 3});
    CHECK(e.status == CatalogEntry::Status::Open);
  }
  // the settled neighbours are not open
  CatalogEntry e255 = existence_query("kts-sub", {255, 513});
  CHECK(e255.status != CatalogEntry::Status::Open);

  CatalogEntry f9 = existence_query("frame-sub", {3, 6, 9});
  CHECK(f9.status == CatalogEntry::Status::YesRoute);

  CHECK_THROWS_AS(existence_query("howell", {9}), DesignError);
}

TEST_CASE("inadmissible parameters are KnownNo with a reason") {
  CatalogEntry e = existence_query("kts-sub", {7, 25});  // 25 != 3 mod 6
  CHECK(e.status == CatalogEntry::Status::KnownNo);
  CHECK(!e.reason.empty());
}

TEST_CASE("interpreted range expansions are flagged") {
  // Theorem 3.10's exception list uses ellipses; queries touching it carry
  // the interpreted flag
  CatalogEntry e = existence_query("frame-sub", {6, 12, thm310_exceptions().front()});
  CHECK(e.interpreted);
}

TEST_CASE("planner statuses for the worked cases") {
  PlanResult p15 = plan_and_build(7, 15, true);
  CHECK(p15.status == PlanResult::Status::Built);
  REQUIRE(p15.design.has_value());
  CHECK(certify(*p15.design).pass);

  PlanResult p33 = plan_and_build(15, 33, false);
  CHECK(p33.status == PlanResult::Status::Built);
  CHECK(p33.route.find("mainframe") != std::string::npos);

  PlanResult p27 = plan_and_build(7, 27, false);
  CHECK(p27.status == PlanResult::Status::Unsupported);

  PlanResult bad = plan_and_build(7, 19, false);
  CHECK(bad.status == PlanResult::Status::Inadmissible);
}

TEST_CASE("route registry covers the documented routes") {
  auto names = route_names();
  for (const char* r : {"mk", "frame36", "mainframe", "fill-6-12", "fill-12-24",
                        "flat-product", "singular-a", "dirprod-mk", "adhoc-frame-13"})
    CHECK(std::find(names.begin(), names.end(), r) != names.end());
}

TEST_CASE("Frobenius thresholds reproduce the stated bounds") {
  FrobeniusResult g9 = frobenius_gap9();
  CHECK(g9.threshold == 3571);
  CHECK(g9.final_bound == 21429);
  CHECK(!g9.table_dependent);
  CHECK(g9.window >= 63);
  CHECK(std::find(g9.gaps.begin(), g9.gaps.end(), 3570) != g9.gaps.end());

  FrobeniusResult g7 = frobenius_gap7(data_dir() + "/td9-table.txt");
  CHECK(g7.threshold == 2551);
  CHECK(!g7.table_dependent);

  FrobeniusResult g7c = frobenius_gap7(std::nullopt);
  CHECK(g7c.table_dependent);
  CHECK(g7c.threshold >= 2551);
}
