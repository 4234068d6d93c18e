#include "kirkman/ingredients.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "kirkman/compositor.hpp"
#include "kirkman/io.hpp"
#include "kirkman/search.hpp"
#include "kirkman/verify.hpp"

namespace kirkman {

namespace {

std::vector<Square> mols_auto(int n, int k);

std::vector<Square> mols_user(int n, int k) {
  std::string path = data_dir() + "/mols-" + std::to_string(n) + ".txt";
  int file_n = 0;
  auto squares = read_mols_file(path, file_n);
  if (file_n != n || static_cast<int>(squares.size()) < k)
    throw DesignError("MissingIngredient",
                      "MOLS(" + std::to_string(n) + "," + std::to_string(k) +
                          "): user data file insufficient");
  squares.resize(k);
  return squares;
}

std::vector<Square> mols_macneish_factor(int n, int k) {
  // peel off one prime-power factor q = p^e and recurse on n/q
  long p = prime_power_base(n);
  if (p != 0) return mols_auto(n, k);  // n itself a prime power
  long pf = 0;
  for (long d = 2; d * d <= n; d++)
    if (n % d == 0) {
      pf = d;
      break;
    }
  long q = 1;
  long m = n;
  while (m % pf == 0) {
    m /= pf;
    q *= pf;
  }
  auto a = mols_auto(static_cast<int>(q), k);
  auto b = mols_auto(static_cast<int>(m), k);
  return mols_macneish(a, b);
}

std::vector<Square> mols_auto(int n, int k) {
  if (n == 1) {
    // degenerate: order-1 squares
    return std::vector<Square>(k, Square(1, std::vector<int>(1, 0)));
  }
  if (prime_power_base(n) != 0) {
    if (k <= n - 1) {
      auto all = mols_finite_field(n);
      all.resize(k);
      return all;
    }
    throw DesignError("MissingIngredient",
                      "MOLS(" + std::to_string(n) + "," + std::to_string(k) +
                          "): at most n-1 squares exist");
  }
  if (n % 2 == 1) {
    try {
      return mols_cyclic_odd(n, k);
    } catch (const DesignError&) {
      // fall through to MacNeish
    }
  }
  try {
    auto sq = mols_macneish_factor(n, k);
    if (static_cast<int>(sq.size()) >= k) {
      sq.resize(k);
      return sq;
    }
  } catch (const DesignError&) {
  }
  try {
    return mols_user(n, k);
  } catch (const DesignError&) {
  }
  throw DesignError("MissingIngredient",
                    "MOLS(" + std::to_string(n) + "," + std::to_string(k) + ")");
}

}  // namespace

std::vector<Square> make_mols(int n, int k, MolsPolicy policy) {
  if (n < 1 || k < 1) throw DesignError("BadParams", "make_mols needs n,k >= 1");
  std::vector<Square> out;
  switch (policy) {
    case MolsPolicy::Auto: out = mols_auto(n, k); break;
    case MolsPolicy::CyclicOdd: out = mols_cyclic_odd(n, k); break;
    case MolsPolicy::FiniteField: {
      out = mols_finite_field(n);
      if (static_cast<int>(out.size()) < k)
        throw DesignError("MissingIngredient", "field MOLS short of k");
      out.resize(k);
      break;
    }
    case MolsPolicy::MacNeishProduct: {
      out = mols_macneish_factor(n, k);
      if (static_cast<int>(out.size()) < k)
        throw DesignError("MissingIngredient", "MacNeish MOLS short of k");
      out.resize(k);
      break;
    }
    case MolsPolicy::UserData: out = mols_user(n, k); break;
  }
  Report r = check_mols(n, out);
  if (!r.pass)
    throw DesignError("BuiltinCorrupt", "constructed MOLS failed verification: " +
                                            r.witnesses.front());
  return out;
}

DesignInstance make_td(int k, int n, bool resolvable) {
  if (k < 2 || n < 1) throw DesignError("BadParams", "make_td needs k >= 2, n >= 1");
  DesignInstance d;
  d.kind = resolvable ? Kind::RTD : Kind::TD;
  d.v = k * n;
  auto pid = [&](int g, int x) { return g * n + x; };
  for (int g = 0; g < k; g++)
    for (int x = 0; x < n; x++) d.labels.push_back(Label::residue(x, g));
  d.groups.assign(k, {});
  for (int g = 0; g < k; g++)
    for (int x = 0; x < n; x++) d.groups[g].push_back(pid(g, x));

  if (resolvable && k == 3 && n % 2 == 1) {
    // direct cyclic classes C_c = {{(a,0),(a+c,1),(2a+c,2)} : a in Z_n}
    for (int c = 0; c < n; c++) {
      DesignInstance::Class cl;
      for (int a = 0; a < n; a++) {
        Block b = {pid(0, a), pid(1, (a + c) % n), pid(2, (2 * a + c) % n)};
        std::sort(b.begin(), b.end());
        cl.block_ids.push_back(static_cast<int>(d.blocks.size()));
        d.blocks.push_back(std::move(b));
      }
      d.classes.push_back(std::move(cl));
    }
  } else {
    int need = resolvable ? k - 1 : k - 2;
    std::vector<Square> sq = need > 0 ? make_mols(n, need) : std::vector<Square>{};
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        Block b = {pid(0, i), pid(1, j)};
        for (int s = 0; s + 2 < k; s++) b.push_back(pid(s + 2, sq[s][i][j]));
        std::sort(b.begin(), b.end());
        d.blocks.push_back(std::move(b));
      }
    if (resolvable) {
      d.classes.assign(n, {});
      int bi = 0;
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) d.classes[sq[k - 2][i][j]].block_ids.push_back(bi++);
    }
  }
  d = canonicalize(std::move(d));
  Report r = certify(d);
  if (!r.pass)
    throw DesignError("BuiltinCorrupt",
                      "constructed TD failed verification: " + r.witnesses.front());
  return d;
}

DesignInstance make_pbd_from_td(int k, int m, PbdMode mode, const std::vector<int>& keep) {
  DesignInstance td = make_td(k, m, false);
  DesignInstance d;
  d.kind = Kind::PBD;
  if (mode == PbdMode::FillGroups) {
    d.v = td.v;
    d.labels = td.labels;
    d.blocks = td.blocks;
    for (auto& g : td.groups) d.blocks.push_back(g);
  } else {
    if (static_cast<int>(keep.size()) != k)
      throw DesignError("BadParams", "truncate needs one kept size per group");
    std::vector<int> kept;
    for (int g = 0; g < k; g++) {
      if (keep[g] < 0 || keep[g] > m)
        throw DesignError("BadParams", "kept size out of range");
      for (int x = 0; x < keep[g]; x++) kept.push_back(g * m + x);
    }
    std::vector<int> dense(td.v, -1);
    for (size_t i = 0; i < kept.size(); i++) {
      dense[kept[i]] = static_cast<int>(i);
      d.labels.push_back(td.labels[kept[i]]);
    }
    d.v = static_cast<int>(kept.size());
    auto push_restricted = [&](const Block& b) {
      Block nb;
      for (int p : b)
        if (dense[p] >= 0) nb.push_back(dense[p]);
      if (nb.size() >= 2) d.blocks.push_back(std::move(nb));
    };
    for (auto& b : td.blocks) push_restricted(b);
    for (auto& g : td.groups) push_restricted(g);
  }
  d = canonicalize(std::move(d));
  std::set<int> K;
  for (auto& b : d.blocks) K.insert(static_cast<int>(b.size()));
  Report r = check_gdd(d, K, GroupTypeVector::uniform(1, d.v));
  if (!r.pass)
    throw DesignError("BuiltinCorrupt",
                      "constructed PBD failed verification: " + r.witnesses.front());
  return d;
}

DesignInstance make_cyclic_sts(int v) {
  Admissible a = admissible_sts(v);
  if (!a.ok) throw DesignError("Inadmissible", a.reason);
  SearchBudget budget;
  SearchOutcome outcome;
  auto fam = difference_family(v, budget, &outcome);
  if (!fam)
    throw DesignError("SearchExhausted", "no cyclic STS(" + std::to_string(v) +
                                             ") difference family found: " + outcome.note);
  BaseBlockSystem sys;
  sys.n = v;
  for (auto& t : *fam) {
    BaseBlockSystem::Base base;
    for (int x : t) base.points.push_back(Label::residue(x));
    if (v % 6 == 3 && t == std::array<int, 3>{0, v / 3, 2 * v / 3}) base.short_orbit = v / 3;
    sys.bases.push_back(std::move(base));
  }
  DesignInstance d = develop_base_blocks(sys);
  Report r = check_gdd(d, {3}, GroupTypeVector::uniform(1, v));
  if (!r.pass)
    throw DesignError("BuiltinCorrupt",
                      "developed cyclic STS failed verification: " + r.witnesses.front());
  return d;
}

DesignInstance make_kts9() {
  DesignInstance d;
  d.kind = Kind::KTS;
  d.v = 9;
  for (int i = 0; i < 9; i++) d.labels.push_back(Label::residue(i));
  // AG(2,3): lines of slope 0, infinity, 1, 2 give the four parallel classes
  auto pid = [](int x, int y) { return 3 * x + y; };
  std::vector<std::array<int, 2>> dirs = {{1, 0}, {0, 1}, {1, 1}, {1, 2}};
  for (auto [dx, dy] : dirs) {
    DesignInstance::Class cl;
    std::vector<char> seen(9, 0);
    for (int x0 = 0; x0 < 3; x0++)
      for (int y0 = 0; y0 < 3; y0++) {
        if (seen[pid(x0, y0)]) continue;
        Block b;
        for (int t = 0; t < 3; t++) {
          int p = pid((x0 + t * dx) % 3, (y0 + t * dy) % 3);
          seen[p] = 1;
          b.push_back(p);
        }
        std::sort(b.begin(), b.end());
        cl.block_ids.push_back(static_cast<int>(d.blocks.size()));
        d.blocks.push_back(std::move(b));
      }
    d.classes.push_back(std::move(cl));
  }
  return canonicalize(std::move(d));
}

DesignInstance make_kts3() {
  DesignInstance d;
  d.kind = Kind::KTS;
  d.v = 3;
  for (int i = 0; i < 3; i++) d.labels.push_back(Label::residue(i));
  d.blocks.push_back({0, 1, 2});
  d.classes.push_back({-1, {0}});
  return d;
}

std::string data_dir() {
  const char* env = std::getenv("KIRKMAN_DATA");
  return env && *env ? env : "data";
}

namespace {

struct RegistryRow {
  std::string file;
  enum class Form { Design, Starter, System } form;
};

const std::map<std::string, RegistryRow>& registry() {
  static const std::map<std::string, RegistryRow> table = [] {
    std::map<std::string, RegistryRow> t;
    using F = RegistryRow::Form;
    t["kts15-kirkman"] = {"kts15-kirkman.design", F::Design};
    t["kts21-sub9"] = {"kts21-sub9.design", F::Design};
    t["kts75-sub33-kts9"] = {"kts75-sub33-kts9.system", F::System};
    auto starter = [&](const std::string& pretty, const std::string& file) {
      t["starter-" + pretty] = {file, F::Starter};
    };
    starter("(1;2)^7", "starter-1-2-7.starter");
    starter("(1;2)^115", "starter-1-2-115.starter");
    starter("(2;4)^7", "starter-2-4-7.starter");
    for (int n : {5, 9, 11, 15, 17, 23, 27, 29, 33, 39, 51, 59})
      starter("(3;6)^" + std::to_string(n),
              "starter-3-6-" + std::to_string(n) + ".starter");
    for (int n : {5, 8, 9})
      starter("(6;12)^" + std::to_string(n),
              "starter-6-12-" + std::to_string(n) + ".starter");
    for (int n : {4, 5, 8})
      starter("(12;24)^" + std::to_string(n),
              "starter-12-24-" + std::to_string(n) + ".starter");
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (auto& [k, v] : registry()) names.push_back(k);
  return names;
}

Builtin builtin(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw DesignError("UnknownBuiltin", name);
  std::string path = data_dir() + "/" + it->second.file;
  Builtin out;
  switch (it->second.form) {
    case RegistryRow::Form::Design: {
      DesignInstance d = read_design_file(path);
      Report r = certify(d);
      if (!r.pass)
        throw DesignError("BuiltinCorrupt", name + ": " + r.witnesses.front());
      out.design = std::move(d);
      break;
    }
    case RegistryRow::Form::System: {
      DesignInstance d = develop_base_blocks(read_base_block_file(path));
      Report r = certify(d);
      if (!r.pass)
        throw DesignError("BuiltinCorrupt", name + ": " + r.witnesses.front());
      out.design = std::move(d);
      break;
    }
    case RegistryRow::Form::Starter: {
      StarterSpec s = read_starter_file(path);
      Report r = check_kirkman_frame_starter(s);
      if (!r.pass)
        throw DesignError("BuiltinCorrupt", name + ": " + r.witnesses.front());
      out.starter = std::move(s);
      break;
    }
  }
  return out;
}

DesignInstance small_frame(int t, int u) {
  Admissible a = admissible_frame(t, u);
  if (!a.ok) throw DesignError("Inadmissible", a.reason);
  SearchBudget budget;
  auto finish = [&](DesignInstance d) {
    Report r = certify(d);
    if (!r.pass)
      throw DesignError("BuiltinCorrupt",
                        "small_frame output failed verification: " + r.witnesses.front());
    return d;
  };
  if (t == 2 || (t == 4 && u == 4)) {
    SearchOutcome outcome;
    auto d = backtrack_frame(t, u, budget, &outcome);
    if (!d)
      throw DesignError("SearchExhausted", "frame " + std::to_string(t) + "^" +
                                               std::to_string(u) + ": " + outcome.note);
    return finish(std::move(*d));
  }
  auto rtd_ok = [](int w) {
    if (w < 3 || w == 6) return false;
    if (w % 2 == 1) return true;
    try {
      make_mols(w, 2);
      return true;
    } catch (const DesignError&) {
      return false;
    }
  };
  if (t % 2 == 0 && admissible_frame(2, u).ok && rtd_ok(t / 2))
    return finish(inflate_by_rtd(small_frame(2, u), t / 2));
  if (u == 4 && t % 4 == 0 && rtd_ok(t / 4))
    return finish(inflate_by_rtd(small_frame(4, 4), t / 4));
  throw DesignError("MissingIngredient",
                    "no construction for frame " + std::to_string(t) + "^" +
                        std::to_string(u));
}

}  // namespace kirkman
