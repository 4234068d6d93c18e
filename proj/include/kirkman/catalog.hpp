// Existence knowledge base, route planner, and Frobenius threshold checkers.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kirkman/design.hpp"

namespace kirkman {

struct CatalogEntry {
  enum class Status { YesRoute, KnownNo, Open };
  Status status = Status::Open;
  std::string route;       // build route string for YesRoute, empty otherwise
  std::string reason;      // KnownNo justification / Open citation
  std::string provenance;  // which theorem/table the answer comes from
  bool interpreted = false;  // true when the source list used ellipses
};

// kinds: "mk" (u), "kts-sub" (u,v), "frame-sub" (g,h,u), "pbd579" (v),
// "frame2" (u) ...; throws UnknownKind.
CatalogEntry existence_query(const std::string& kind, const std::vector<long>& params);

// Exception sets, exactly as tabulated.
const std::vector<long>& exception_set_E();    // MK exceptions (10 values)
const std::vector<long>& exception_set_E1();   // Thm 4.1 possible exceptions
const std::vector<long>& exception_set_E2();   // {83,87,107,111,139,179}
const std::vector<long>& exception_set_E3();   // small-frame exceptions
const std::vector<long>& thm38_exceptions();   // {6,10,12,14,18,26,30}
const std::vector<long>& thm310_exceptions();  // expanded ranges, interpreted
const std::vector<long>& open_kts_sub_u();     // {249, 321, 537}

struct PlanResult {
  enum class Status { Built, Unsupported, Open, Inadmissible };
  Status status = Status::Unsupported;
  std::string route;
  std::string note;
  std::optional<DesignInstance> design;  // present iff Built and executed
};
PlanResult plan_and_build(long u, long v, bool execute);

// Named build routes for the CLI `build` subcommand.
DesignInstance build_route(const std::string& route,
                           const std::vector<std::pair<std::string, std::string>>& params,
                           const std::string& emit_dir = "");
std::vector<std::string> route_names();

struct FrobeniusResult {
  long threshold = -1;            // least T with everything >= T representable
  long final_bound = -1;          // order-scale bound derived from T
  long window = 0;                // verified consecutive run length
  std::vector<long> gaps;         // non-representable values below T
  bool table_dependent = false;   // gap7 without user table data
  std::string note;
};
// gap9: k = 63t + 9s + 11r + 4, t >= 55, 0 <= s <= t, r in {2..12}.
FrobeniusResult frobenius_gap9();
// gap7: u = 168t + 24s + 42r + 7, 0 <= s <= t, 7r <= 4t, t ranging over
// values with a TD(9,4t); td_table supplies handbook existence data.
FrobeniusResult frobenius_gap7(const std::optional<std::string>& td_table_file);

}  // namespace kirkman
