// Constructive suppliers of base designs the recursions consume.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kirkman/design.hpp"
#include "kirkman/gf.hpp"
#include "kirkman/starter.hpp"

namespace kirkman {

enum class MolsPolicy { Auto, CyclicOdd, FiniteField, MacNeishProduct, UserData };

// k pairwise orthogonal Latin squares of order n; every returned family has
// already passed check_mols.  UserData reads data/mols-<n>.txt.
// Throws MissingIngredient when no policy applies (k=2, n in {2,6}, ...).
std::vector<Square> make_mols(int n, int k, MolsPolicy policy = MolsPolicy::Auto);

// TD(k,n) from k-2 MOLS; resolvable=true yields an RTD(k,n) with n classes
// (direct cyclic classes for k=3 and odd n).  Groups are the k point rows.
DesignInstance make_td(int k, int n, bool resolvable = false);

enum class PbdMode { FillGroups, Truncate };
// FillGroups: TD blocks plus groups-as-blocks -> PBD(km, {k,m}).
// Truncate: keep `keep[i]` points of group i, drop the rest, return the
// surviving blocks as a PBD (groups of size >= 2 are also appended as blocks).
DesignInstance make_pbd_from_td(int k, int m, PbdMode mode,
                                const std::vector<int>& keep = {});

// Cyclic STS(v) from a difference family found by backtracking search.
DesignInstance make_cyclic_sts(int v);

// KTS(9) = AG(2,3), built directly; KTS(3) is the single block.
DesignInstance make_kts9();
DesignInstance make_kts3();

// Bundled registry (files under KIRKMAN_DATA, default ./data); artifacts are
// re-verified on every load and returned only when certification passes.
struct Builtin {
  std::optional<DesignInstance> design;
  std::optional<StarterSpec> starter;
};
Builtin builtin(const std::string& name);
std::vector<std::string> builtin_names();
std::string data_dir();

// Plain Kirkman frame of type t^u for small parameters: backtracking for
// t=2 (and 4^4), otherwise inflation of a smaller frame by an RTD.
DesignInstance small_frame(int t, int u);

}  // namespace kirkman
