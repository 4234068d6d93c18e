// Acceptance suite: one line per criterion, PASS/FAIL, zero tolerance.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kirkman/catalog.hpp"
#include "kirkman/compositor.hpp"
#include "kirkman/ingredients.hpp"
#include "kirkman/search.hpp"
#include "kirkman/starter.hpp"
#include "kirkman/verify.hpp"

using namespace kirkman;

namespace {

int failures = 0;

void criterion(int idx, const std::string& name, const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string err;
  try {
    body();
  } catch (const std::exception& e) {
    err = e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (err.empty()) {
    std::printf("criterion %2d: PASS  (%.1fs)  %s\n", idx, secs, name.c_str());
  } else {
    failures++;
    std::printf("criterion %2d: FAIL  (%.1fs)  %s -- %s\n", idx, secs, name.c_str(),
                err.c_str());
  }
  std::fflush(stdout);
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

void require_time(double secs, double cap, const std::string& what) {
  if (secs > cap)
    throw std::runtime_error(what + " exceeded " + std::to_string(cap) + "s (" +
                             std::to_string(secs) + "s)");
}

DesignInstance built(const std::string& route,
                     const std::vector<std::pair<std::string, std::string>>& params) {
  return build_route(route, params, "");
}

void check_kts_with_sub(const DesignInstance& d, int v, int sub_u, const std::string& tag) {
  require(d.v == v, tag + ": order " + std::to_string(d.v));
  require(static_cast<long>(d.blocks.size()) == static_cast<long>(v) * (v - 1) / 6,
          tag + ": block count");
  require(static_cast<int>(d.classes.size()) == (v - 1) / 2, tag + ": class count");
  require(certify(d).pass, tag + ": certification");
  bool has = false;
  for (auto& emb : d.subs) has |= static_cast<int>(emb.points.size()) == sub_u;
  require(has, tag + ": missing sub of order " + std::to_string(sub_u));
}

}  // namespace

int main() {
  criterion(1, "bundled-data certification (KTS 15/21/75)", [] {
    auto t0 = std::chrono::steady_clock::now();
    DesignInstance k15 = *builtin("kts15-kirkman").design;
    require(k15.blocks.size() == 35 && k15.classes.size() == 7, "KTS(15) counts");
    require(certify(k15).pass, "KTS(15) certify");
    bool s7 = false;
    for (auto& e : k15.subs) s7 |= e.points.size() == 7;
    require(s7, "KTS(15) sub-STS(7)");

    DesignInstance k21 = *builtin("kts21-sub9").design;
    require(k21.blocks.size() == 70 && k21.classes.size() == 10, "KTS(21) counts");
    require(certify(k21).pass, "KTS(21) certify");
    bool s9 = false;
    for (auto& e : k21.subs) s9 |= e.points.size() == 9;
    require(s9, "KTS(21) sub-STS(9)");

    DesignInstance k75 = *builtin("kts75-sub33-kts9").design;
    require(k75.blocks.size() == 925 && k75.classes.size() == 37, "KTS(75) counts");
    require(certify(k75).pass, "KTS(75) certify");
    bool s33 = false, k9 = false;
    for (auto& e : k75.subs) {
      s33 |= e.points.size() == 33;
      k9 |= e.points.size() == 9;
    }
    require(s33 && k9, "KTS(75) subdesigns");
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require_time(secs, 1.0, "bundled certification");
  });

  criterion(2, "all bundled starters develop with exact block counts", [] {
    auto t0 = std::chrono::steady_clock::now();
    struct Row {
      const char* name;
      long t, u;
    };
    const Row rows[] = {
        {"starter-(1;2)^7", 2, 7},     {"starter-(1;2)^115", 2, 115},
        {"starter-(2;4)^7", 4, 7},     {"starter-(3;6)^5", 6, 5},
        {"starter-(3;6)^9", 6, 9},     {"starter-(3;6)^11", 6, 11},
        {"starter-(3;6)^15", 6, 15},   {"starter-(3;6)^17", 6, 17},
        {"starter-(3;6)^23", 6, 23},   {"starter-(3;6)^27", 6, 27},
        {"starter-(3;6)^29", 6, 29},   {"starter-(3;6)^33", 6, 33},
        {"starter-(3;6)^39", 6, 39},   {"starter-(3;6)^51", 6, 51},
        {"starter-(3;6)^59", 6, 59},   {"starter-(6;12)^5", 12, 5},
        {"starter-(6;12)^8", 12, 8},   {"starter-(6;12)^9", 12, 9},
        {"starter-(12;24)^4", 24, 4},  {"starter-(12;24)^5", 24, 5},
        {"starter-(12;24)^8", 24, 8},
    };
    for (const Row& row : rows) {
      StarterSpec s = *builtin(row.name).starter;
      require(check_kirkman_frame_starter(s).pass, std::string(row.name) + " check");
      DesignInstance f = develop_starter(s);
      require(static_cast<long>(f.blocks.size()) == row.t * row.t * row.u * (row.u - 1) / 6,
              std::string(row.name) + " block count");
      require(certify(f).pass, std::string(row.name) + " certify");
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require_time(secs, 30.0, "starter suite");
  });

  criterion(3, "MK(15) equivalence roundtrip with WholeGroups sub 2^3", [] {
    DesignInstance frame = develop_starter(*builtin("starter-(1;2)^7").starter);
    DesignInstance mk = frame_to_mk(frame);
    require(mk.v == 15 && certify(mk).pass, "MK(15)");
    DesignInstance punct = puncture_sub(mk);
    require(punct.v == 14 && punct.groups.size() == 7, "punctured frame shape");
    require(!punct.subs.empty() &&
                punct.subs[0].alignment == SubdesignEmbedding::Alignment::WholeGroups &&
                punct.subs[0].sub_groups.size() == 3,
            "WholeGroups sub 2^3");
    require(certify(punct).pass, "punctured frame certify");
  });

  criterion(4, "nine route reproductions", [] {
    struct Route {
      const char* route;
      std::vector<std::pair<std::string, std::string>> params;
      int v, sub_u;
    };
    const Route routes[] = {
        {"mainframe", {{"n", "5"}}, 33, 15},
        {"fill-6-12", {{"n", "5"}}, 63, 31},
        {"fill-12-24", {{"n", "4"}}, 99, 49},
        {"triple-kts", {{"u", "7"}, {"v", "15"}}, 45, 21},
        {"frame-tripling", {{"n", "5"}}, 93, 45},
        {"tripled-hole-fill", {{"n", "4"}}, 75, 27},
        {"flat-product", {{"v", "7"}, {"w", "9"}}, 135, 63},
        {"singular-a", {{"v", "7"}, {"w", "7"}}, 57, 25},
        {"dirprod-mk", {{"g", "12"}, {"n", "4"}, {"m", "3"}}, 291, 145},
    };
    for (const Route& r : routes) {
      auto t0 = std::chrono::steady_clock::now();
      DesignInstance d = built(r.route, r.params);
      check_kts_with_sub(d, r.v, r.sub_u, r.route);
      if (std::string(r.route) == "singular-a") {
        bool k9 = false;
        for (auto& emb : d.subs) k9 |= emb.points.size() == 9;
        require(k9, "singular-a: sub-KTS(9)");
      }
      double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      require_time(secs, 60.0, r.route);
    }
  });

  criterion(5, "large frame chain to (3;6)^113 on 678 points", [] {
    auto t0 = std::chrono::steady_clock::now();
    DesignInstance d = built("frame36", {{"n", "113"}});
    require(d.v == 678, "order");
    require(d.groups.size() == 113, "group count");
    require(static_cast<long>(d.blocks.size()) == 36L * 113 * 112 / 6, "block count");
    require(certify(d).pass, "certification");
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require_time(secs, 300.0, "frame36 n=113");
  });

  criterion(6, "ad-hoc frame 8^13 and KTS(105) closure", [] {
    DesignInstance f = adhoc_frame_m13(8);
    require(f.v == 104 && f.groups.size() == 13, "frame shape");
    require(!f.subs.empty() &&
                f.subs[0].alignment == SubdesignEmbedding::Alignment::WholeGroups,
            "WholeGroups sub 8^3");
    require(certify(f).pass, "frame certify");
    DesignInstance k = adhoc_kts_closure(f);
    check_kts_with_sub(k, 105, 25, "KTS(105)");
  });

  criterion(7, "Frobenius bounds: 3571/21429 and 2551", [] {
    auto t0 = std::chrono::steady_clock::now();
    FrobeniusResult g9 = frobenius_gap9();
    require(g9.threshold == 3571, "gap9 threshold");
    require(g9.final_bound == 21429, "gap9 final bound");
    FrobeniusResult g7 = frobenius_gap7(data_dir() + "/td9-table.txt");
    require(g7.threshold == 2551, "gap7 threshold with table");
    require(!g7.table_dependent, "gap7 table flag");
    FrobeniusResult g7c = frobenius_gap7(std::nullopt);
    require(g7c.table_dependent, "constructive gap7 flag");
    require(g7c.threshold >= 2551, "constructive gap7 finite threshold");
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require_time(secs, 10.0, "bounds");
  });

  criterion(8, "search determinism, regeneration, Z_9 refutation", [] {
    SearchBudget b;
    // bit-reproducibility
    auto s1 = hill_climb_starter(19, {0}, StarterMode::Strong, b);
    auto s2 = hill_climb_starter(19, {0}, StarterMode::Strong, b);
    require(s1 && s2, "Z_19 strong starter");
    std::ostringstream o1, o2;
    print_starter(*s1, o1);
    print_starter(*s2, o2);
    require(o1.str() == o2.str(), "determinism");
    // Z_9 exhaustive refutation
    SearchOutcome oc;
    require(!hill_climb_starter(9, {0}, StarterMode::Strong, b, &oc) && oc.exhausted,
            "Z_9 nonexistence proof");
    // regeneration of every bundled starter type with modulus <= 33
    struct Target {
      int g, u, n;
    };
    for (const Target& t : {Target{1, 7, 7}, Target{2, 7, 7}, Target{3, 5, 5},
                            Target{3, 9, 27}, Target{3, 11, 33}, Target{6, 5, 30}}) {
      SearchOutcome roc;
      std::optional<StarterSpec> s;
      if (t.g == 1) {
        auto fs = hill_climb_starter(t.n, {0}, StarterMode::Strong, b);
        require(fs.has_value(), "(1;2)^7 strong starter");
        s = complete_kfs(*fs, b);
      } else if (t.n == 3 * t.u) {
        // (3;6)^u over Z_3u: strong starters relative to H = {0, u, 2u},
        // redrawn (derived seeds) until one admits a triple completion
        for (int a = 0; a < 16 && !s; a++) {
          SearchBudget ab = b;
          ab.seed = b.seed + static_cast<unsigned>(a) * 0x9e3779b9u;
          auto fs = hill_climb_starter(t.n, {0, t.u, 2 * t.u}, StarterMode::Strong, ab);
          if (fs) s = complete_kfs(*fs, ab);
        }
      } else {
        s = hill_climb_raw_starter(t.g, t.u, t.n, b, &roc);
      }
      require(s.has_value(), "regeneration (" + std::to_string(t.g) + ";" +
                                 std::to_string(2 * t.g) + ")^" + std::to_string(t.u));
      require(check_kirkman_frame_starter(*s).pass, "regenerated starter verifies");
    }
  });

  criterion(9, "negative-path suite: zero false passes", [] {
    DesignInstance base = *builtin("kts15-kirkman").design;
    // block swap between classes
    DesignInstance m1 = base;
    std::swap(m1.classes[0].block_ids[0], m1.classes[1].block_ids[0]);
    require(!certify(m1).pass, "class block swap accepted");
    // class merge
    DesignInstance m2 = base;
    for (int bid : m2.classes[1].block_ids) m2.classes[0].block_ids.push_back(bid);
    m2.classes.erase(m2.classes.begin() + 1);
    require(!certify(m2).pass, "class merge accepted");
    // sub-block replacement
    DesignInstance m3 = base;
    m3.subs[0].block_ids.back() = 34;
    if (m3.subs[0].block_ids.back() == m3.subs[0].block_ids.front())
      m3.subs[0].block_ids.back() = 33;
    require(!certify(m3).pass, "sub-block replacement accepted");
    // tampered block contents
    DesignInstance m4 = base;
    m4.blocks[20] = {0, 1, 4};
    require(!certify(m4).pass, "block tamper accepted");
    // same mutations against the developed (3;6)^5 frame
    DesignInstance frame = develop_starter(*builtin("starter-(3;6)^5").starter);
    DesignInstance f1 = frame;
    std::swap(f1.classes[0].block_ids[0], f1.classes[3].block_ids[0]);
    require(!certify(f1).pass, "frame class swap accepted");
  });

  criterion(10, "catalog fidelity: exception sets and open cases", [] {
    require(exception_set_E().size() == 10, "E size");
    require(exception_set_E2() == std::vector<long>({83, 87, 107, 111, 139, 179}),
            "E2 verbatim");
    require(thm38_exceptions() == std::vector<long>({6, 10, 12, 14, 18, 26, 30}),
            "Thm 3.8 exceptions verbatim");
    require(open_kts_sub_u() == std::vector<long>({249, 321, 537}), "open u set");
    for (long u : open_kts_sub_u())
      require(existence_query("kts-sub", {u, 2 * u + 3}).status ==
                  CatalogEntry::Status::Open,
              "open case query");
    require(plan_and_build(7, 27, false).status == PlanResult::Status::Unsupported,
            "KTS(27) with sub-STS(7) reported without a route");
    require(existence_query("mk", {115}).status == CatalogEntry::Status::YesRoute,
            "mk 115");
  });

  if (failures == 0) std::printf("all criteria passed\n");
  return failures == 0 ? 0 : 1;
}
