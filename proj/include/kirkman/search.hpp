// Seeded stochastic and exhaustive search: starters, starter completions,
// difference families, and small frames by backtracking.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kirkman/design.hpp"
#include "kirkman/starter.hpp"

namespace kirkman {

struct SearchBudget {
  std::uint64_t seed = 1;
  long max_moves = 200000;
  int max_restarts = 64;
  double timeout_seconds = 60.0;
};

struct SearchOutcome {
  bool found = false;
  bool exhausted = false;  // true: full enumeration proves nonexistence
  std::string note;
};

// Hill climb for a (strong) frame starter over Z_n relative to H.  Identical
// (target, budget) always yields the identical starter.  Small spaces are
// enumerated exhaustively, so Z_9 returns a nonexistence proof.
std::optional<StarterSpec> hill_climb_starter(int n, const std::vector<int>& H,
                                              StarterMode mode, const SearchBudget& budget,
                                              SearchOutcome* outcome = nullptr);

/// Hill climb for a raw Kirkman frame starter of type (g;2g)^u over Z_n with
// primed copy pairs (n | gu; levels = gu/n; H = <u>): base classes of triples
// listed explicitly, as in the appendix forms that admit no strong starter.
std::optional<StarterSpec> hill_climb_raw_starter(int g, int u, int n,
                                                  const SearchBudget& budget,
                                                  SearchOutcome* outcome = nullptr);

// Completes a checked frame starter into a Kirkman frame starter: x_i = s_i +
// t_i (strong case) and a backtracking search for the triple set T.
std::optional<StarterSpec> complete_kfs(const StarterSpec& fs, const SearchBudget& budget,
                                        SearchOutcome* outcome = nullptr);

// Exhaustive backtracking for a plain Kirkman frame of type t^u (transversal
// class structure); practical for t=2 and 4^4.
std::optional<DesignInstance> backtrack_frame(int t, int u, const SearchBudget& budget,
                                              SearchOutcome* outcome = nullptr);

// Difference family for a cyclic STS(v): base blocks mod v, short orbit
// {0, v/3, 2v/3} included exactly when v = 3 (mod 6).
std::optional<std::vector<std::array<int, 3>>> difference_family(
    int v, const SearchBudget& budget, SearchOutcome* outcome = nullptr);

}  // namespace kirkman
