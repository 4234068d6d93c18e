#include "kirkman/starter.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace kirkman {

namespace {

int mod(long a, int n) {
  long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

std::string elem_str(const StarterElem& e) {
  return Label::residue(e.r, e.level, e.primed).str();
}

StarterElem elem_from_label(const Label& l) {
  if (l.kind != Label::Kind::Residue)
    throw DesignError("BadLabel", "starter element must be a residue: " + l.str());
  return {static_cast<int>(l.value), l.copy, l.primed};
}

// H must be the unique subgroup uZ_n of the declared size; cosets are then
// residues mod u and hole indices fall out of translates directly.
void validate_subgroup(const StarterSpec& s) {
  if (s.n <= 0 || s.H.empty() || s.n % static_cast<int>(s.H.size()) != 0)
    throw DesignError("SubgroupInvalid", "|H| must divide n");
  int u = s.n / static_cast<int>(s.H.size());
  std::vector<int> want;
  for (int k = 0; k < static_cast<int>(s.H.size()); k++) want.push_back(k * u);
  std::vector<int> have = s.H;
  std::sort(have.begin(), have.end());
  if (have != want)
    throw DesignError("SubgroupInvalid", "H is not the index-" + std::to_string(u) +
                                             " subgroup of Z_" + std::to_string(s.n));
}

}  // namespace

bool StarterSpec::copy_in_sub(int level, bool prime) const {
  if (primed) return prime == sub_primed;
  return std::find(sub_levels.begin(), sub_levels.end(), level) != sub_levels.end();
}

std::vector<std::vector<std::array<StarterElem, 3>>> StarterSpec::development_classes()
    const {
  if (!has_pairs()) return base_classes;
  // Pair form: one base class.  Cross triples {x_i = s_i + t_i on the sub
  // level, s_i, t_i on level 0}; completion triples T entirely on the sub level.
  int sl = sub_levels.empty() ? 1 : sub_levels[0];
  std::vector<std::array<StarterElem, 3>> cls;
  for (auto& [a, b] : pairs)
    cls.push_back({StarterElem{mod(a + b, n), sl, false}, StarterElem{mod(a, n), 0, false},
                   StarterElem{mod(b, n), 0, false}});
  for (auto& t : triples)
    cls.push_back({StarterElem{mod(t[0], n), sl, false}, StarterElem{mod(t[1], n), sl, false},
                   StarterElem{mod(t[2], n), sl, false}});
  return {cls};
}

Report check_frame_starter(const StarterSpec& s, StarterMode mode,
                           const std::optional<std::vector<int>>& adder) {
  validate_subgroup(s);
  Report r;
  r.checked_kind = (mode == StarterMode::Strong) ? "strong frame starter" : "frame starter";
  std::vector<int> in_h(s.n, 0);
  for (int h : s.H) in_h[mod(h, s.n)] = 1;

  // (1) the pair elements hit G \ H exactly once each
  std::vector<int> seen(s.n, 0);
  for (auto& [a, b] : s.pairs)
    for (int e : {mod(a, s.n), mod(b, s.n)}) {
      if (in_h[e]) r.add("element " + std::to_string(e) + " lies in H");
      if (seen[e]++) r.add("element " + std::to_string(e) + " reused");
    }
  for (int e = 0; e < s.n; e++)
    if (!in_h[e] && !seen[e]) r.add("element " + std::to_string(e) + " not covered");

  // (2) the signed differences hit G \ H exactly once each
  std::vector<int> dseen(s.n, 0);
  for (auto& [a, b] : s.pairs)
    for (int d : {mod(b - a, s.n), mod(a - b, s.n)}) {
      if (in_h[d]) r.add("difference " + std::to_string(d) + " lies in H");
      if (dseen[d]++) r.add("difference " + std::to_string(d) + " repeated");
    }
  for (int d = 0; d < s.n; d++)
    if (!in_h[d] && !dseen[d]) r.add("difference " + std::to_string(d) + " not covered");

  if (mode == StarterMode::Strong) {
    std::vector<int> sums(s.n, 0);
    for (auto& [a, b] : s.pairs) {
      int x = mod(a + b, s.n);
      if (in_h[x]) r.add("sum " + std::to_string(x) + " lies in H");
      if (sums[x]++) r.add("sum " + std::to_string(x) + " repeated");
    }
  }
  if (adder) {
    if (adder->size() != s.pairs.size()) {
      r.add("adder length != pair count");
    } else {
      std::vector<int> aseen(s.n, 0);
      std::vector<int> tseen(s.n, 0);
      for (size_t i = 0; i < s.pairs.size(); i++) {
        int a = mod((*adder)[i], s.n);
        if (aseen[a]++) r.add("adder element " + std::to_string(a) + " repeated");
        for (int e : {mod(s.pairs[i].first + a, s.n), mod(s.pairs[i].second + a, s.n)}) {
          if (in_h[e]) r.add("translated element " + std::to_string(e) + " lies in H");
          if (tseen[e]++) r.add("translated element " + std::to_string(e) + " reused");
        }
      }
    }
  }
  r.finish();
  return r;
}

namespace {

// Builds the development without any validity checks.
DesignInstance build_development(const StarterSpec& s) {
  int u = s.frame_group_count();
  int copies = s.copy_count();
  DesignInstance d;
  d.kind = Kind::FrameWithSub;

  // points: residue r, copy c in listing order (level-major, unprimed first)
  std::vector<std::pair<int, bool>> copy_tags;
  for (int l = 0; l < s.levels; l++) {
    copy_tags.push_back({l, false});
    if (s.primed) copy_tags.push_back({l, true});
  }
  d.v = s.n * copies;
  auto pid = [&](const StarterElem& e) {
    int c = e.level * (s.primed ? 2 : 1) + (e.primed ? 1 : 0);
    return e.r * copies + c;
  };
  d.labels.resize(d.v);
  for (int r = 0; r < s.n; r++)
    for (int c = 0; c < copies; c++)
      d.labels[r * copies + c] =
          Label::residue(r, copy_tags[c].first, copy_tags[c].second);

  // groups: coset j (residues == j mod u) x all copies
  d.groups.assign(u, {});
  for (int p = 0; p < d.v; p++) d.groups[(p / copies) % u].push_back(p);
  for (auto& g : d.groups) std::sort(g.begin(), g.end());

  // blocks: translates of each base class; class (i,t) aligned to hole t mod u
  auto base = s.development_classes();
  for (auto& cls : base)
    for (int t = 0; t < s.n; t++) {
      DesignInstance::Class c;
      c.hole = mod(t, u);
      for (auto& tri : cls) {
        Block b;
        for (auto& e : tri) b.push_back(pid({mod(e.r + t, s.n), e.level, e.primed}));
        std::sort(b.begin(), b.end());
        c.block_ids.push_back(static_cast<int>(d.blocks.size()));
        d.blocks.push_back(std::move(b));
      }
      d.classes.push_back(std::move(c));
    }

  // sub-GDD embedding on the sub copies
  SubdesignEmbedding emb;
  emb.name = "sub-gdd";
  emb.alignment = SubdesignEmbedding::Alignment::SplitGroups;
  emb.sub_kind = Kind::GDD;
  emb.sub_type = GroupTypeVector::uniform(s.sub_group_size(), u);
  std::vector<char> in_sub(d.v, 0);
  for (int p = 0; p < d.v; p++) {
    auto [lvl, pr] = copy_tags[p % copies];
    if (s.copy_in_sub(lvl, pr)) {
      in_sub[p] = 1;
      emb.points.push_back(p);
    }
  }
  emb.sub_groups.assign(u, {});
  for (int j = 0; j < u; j++)
    for (int p : d.groups[j])
      if (in_sub[p]) emb.sub_groups[j].push_back(p);
  for (int b = 0; b < static_cast<int>(d.blocks.size()); b++)
    if (std::all_of(d.blocks[b].begin(), d.blocks[b].end(),
                    [&](int p) { return in_sub[p]; }))
      emb.block_ids.push_back(b);
  d.subs.push_back(std::move(emb));
  return canonicalize(std::move(d));
}

}  // namespace

Report check_kirkman_frame_starter(const StarterSpec& s) {
  validate_subgroup(s);
  Report r;
  r.checked_kind = "Kirkman frame starter " + s.claimed_type;
  std::vector<int> in_h(s.n, 0);
  for (int h : s.H) in_h[mod(h, s.n)] = 1;

  if (s.has_pairs()) {
    // conditions (1)-(3) on the pair set
    Report fr = check_frame_starter(s, StarterMode::Strong);
    r.violation_count += fr.violation_count;
    for (auto& w : fr.witnesses) r.witnesses.push_back(w);

    // (3b) sums and T elements tile G \ H on the sub copy
    std::vector<int> seen(s.n, 0);
    for (auto& [a, b] : s.pairs) seen[mod(a + b, s.n)]++;
    for (auto& t : s.triples)
      for (int e : t) {
        int x = mod(e, s.n);
        if (in_h[x]) r.add("T element " + std::to_string(x) + " lies in H");
        seen[x]++;
      }
    for (int e = 0; e < s.n; e++) {
      if (in_h[e]) continue;
      if (seen[e] == 0) r.add("sub-copy element " + std::to_string(e) + " not covered");
      if (seen[e] > 1) r.add("sub-copy element " + std::to_string(e) + " reused");
    }

    // (4) signed differences of T tile G \ H
    std::vector<int> dseen(s.n, 0);
    for (auto& t : s.triples)
      for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++)
          if (i != j) dseen[mod(t[i] - t[j], s.n)]++;
    for (int d = 0; d < s.n; d++) {
      if (in_h[d]) {
        if (dseen[d]) r.add("T difference " + std::to_string(d) + " lies in H");
        continue;
      }
      if (dseen[d] != 1)
        r.add("T difference " + std::to_string(d) + " covered " +
              std::to_string(dseen[d]) + " times");
    }
  } else {
    // raw listing: every base class tiles (G \ H) x copies exactly once
    for (size_t ci = 0; ci < s.base_classes.size(); ci++) {
      std::map<StarterElem, int> seen;
      for (auto& tri : s.base_classes[ci])
        for (auto& e : tri) {
          if (in_h[mod(e.r, s.n)])
            r.add("class " + std::to_string(ci) + ": element " + elem_str(e) +
                  " lies over H");
          if (seen[{mod(e.r, s.n), e.level, e.primed}]++)
            r.add("class " + std::to_string(ci) + ": element " + elem_str(e) + " reused");
        }
      size_t want = static_cast<size_t>(s.n - static_cast<int>(s.H.size())) *
                    static_cast<size_t>(s.copy_count());
      if (seen.size() != want && r.violation_count == 0)
        r.add("class " + std::to_string(ci) + " covers " + std::to_string(seen.size()) +
              " of " + std::to_string(want) + " elements");
    }
  }

  if (r.violation_count == 0) {
    // develop and certify exhaustively; duplicate blocks surface here too
    try {
      DesignInstance d = build_development(s);
      Report full = certify(d);
      r.pairs_covered = full.pairs_covered;
      r.class_count = full.class_count;
      r.violation_count += full.violation_count;
      for (auto& w : full.witnesses) r.witnesses.push_back(w);
    } catch (const DesignError& e) {
      r.add(std::string("development failed: ") + e.what());
    }
  }
  r.finish();
  return r;
}

DesignInstance develop_starter(const StarterSpec& s) {
  Report r = check_kirkman_frame_starter(s);
  if (!r.pass) {
    std::string msg = s.claimed_type + " is not a valid Kirkman frame starter";
    if (!r.witnesses.empty()) msg += "; first witness: " + r.witnesses.front();
    throw DesignError("StarterInvalid", msg);
  }
  return build_development(s);
}

// ---------------------------------------------------------------- base blocks

namespace {

Label translate_label(const Label& l, int t, int n) {
  if (l.kind == Label::Kind::Residue)
    return Label::residue(mod(l.value + t, n), l.copy, l.primed);
  return l;  // infinities are fixed
}

std::vector<std::string> block_key(const std::vector<Label>& b) {
  std::vector<std::string> k;
  for (auto& l : b) k.push_back(l.str());
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

DesignInstance develop_base_blocks(const BaseBlockSystem& b) {
  if (b.n <= 0) throw DesignError("BadSystem", "modulus must be positive");
  RawDesign raw;
  raw.kind = (b.translate_bases.empty() && b.assembled.empty()) ? Kind::STS : Kind::KTS;

  // points: residue copies actually used by the bases, plus infinities
  bool use_unprimed = false, use_primed = false;
  auto scan = [&](const std::vector<Label>& pts) {
    for (auto& l : pts)
      if (l.kind == Label::Kind::Residue) (l.primed ? use_primed : use_unprimed) = true;
  };
  for (auto& base : b.bases) scan(base.points);
  for (auto& e : b.extra_blocks) scan(e);
  if (use_unprimed)
    for (int r = 0; r < b.n; r++) raw.points.push_back(Label::residue(r));
  if (use_primed)
    for (int r = 0; r < b.n; r++) raw.points.push_back(Label::residue(r, 0, true));
  for (int k = 1; k <= b.inf_count; k++) raw.points.push_back(Label::infinity(k));

  // orbits: verify declared lengths against the true period of each base
  std::vector<int> orbit_len(b.bases.size());
  std::vector<int> first_index(b.bases.size());
  for (size_t i = 0; i < b.bases.size(); i++) {
    auto key0 = block_key(b.bases[i].points);
    int period = b.n;
    for (int t = 1; t < b.n; t++) {
      std::vector<Label> bt;
      for (auto& l : b.bases[i].points) bt.push_back(translate_label(l, t, b.n));
      if (block_key(bt) == key0) {
        period = t;
        break;
      }
    }
    int declared = b.bases[i].short_orbit ? b.bases[i].short_orbit : b.n;
    if (declared != period)
      throw DesignError("OrbitTagWrong", "base " + std::to_string(i) + " has period " +
                                             std::to_string(period) + ", declared " +
                                             std::to_string(declared));
    orbit_len[i] = period;
    first_index[i] = static_cast<int>(raw.blocks.size());
    for (int t = 0; t < period; t++) {
      std::vector<Label> bt;
      for (auto& l : b.bases[i].points) bt.push_back(translate_label(l, t, b.n));
      raw.blocks.push_back(std::move(bt));
    }
  }
  int extra_first = static_cast<int>(raw.blocks.size());
  for (auto& e : b.extra_blocks) raw.blocks.push_back(e);

  auto block_of = [&](int base, int t) { return first_index[base] + t % orbit_len[base]; };

  std::vector<int> used(raw.blocks.size(), 0);
  for (int t = 0; t < b.n; t++) {
    if (b.translate_bases.empty()) break;
    RawDesign::RawClass c;
    for (int base : b.translate_bases) {
      if (base < 0 || base >= static_cast<int>(b.bases.size()))
        throw DesignError("UnknownBase", std::to_string(base));
      if (orbit_len[base] != b.n)
        throw DesignError("RecipeNotPartition",
                          "translate class uses short-orbit base " + std::to_string(base));
      c.block_indices.push_back(block_of(base, t));
      used[block_of(base, t)]++;
    }
    raw.classes.push_back(std::move(c));
  }
  for (auto& ac : b.assembled) {
    RawDesign::RawClass c;
    for (auto& sl : ac.slices) {
      if (sl.base < 0 || sl.base >= static_cast<int>(b.bases.size()))
        throw DesignError("UnknownBase", std::to_string(sl.base));
      for (int t = 0; t < orbit_len[sl.base]; t++)
        if (sl.modulus <= 1 || t % sl.modulus == sl.residue) {
          c.block_indices.push_back(block_of(sl.base, t));
          used[block_of(sl.base, t)]++;
        }
    }
    for (int e : ac.extra_ids) {
      if (e < 0 || e >= static_cast<int>(b.extra_blocks.size()))
        throw DesignError("UnknownBlock", "extra " + std::to_string(e));
      c.block_indices.push_back(extra_first + e);
      used[extra_first + e]++;
    }
    raw.classes.push_back(std::move(c));
  }
  if (!raw.classes.empty())
    for (size_t i = 0; i < used.size(); i++)
      if (used[i] != 1)
        throw DesignError("RecipeNotPartition", "block " + std::to_string(i) +
                                                    " appears in " + std::to_string(used[i]) +
                                                    " classes");

  DesignInstance d = canonicalize(raw);

  // declared subdesigns on label families
  for (auto& sd : b.subs) {
    SubdesignEmbedding emb;
    emb.name = sd.name;
    emb.sub_kind = sd.kind;
    emb.alignment = SubdesignEmbedding::Alignment::PlainSubset;
    std::vector<char> in_sub(d.v, 0);
    for (int p = 0; p < d.v; p++) {
      const Label& l = d.labels[p];
      bool take = (sd.family == "inf") ? l.kind == Label::Kind::Infinity
                  : (sd.family == "primed")
                      ? (l.kind == Label::Kind::Residue && l.primed)
                      : (l.kind == Label::Kind::Residue && !l.primed);
      if (take) {
        in_sub[p] = 1;
        emb.points.push_back(p);
      }
    }
    for (int bi = 0; bi < static_cast<int>(d.blocks.size()); bi++)
      if (std::all_of(d.blocks[bi].begin(), d.blocks[bi].end(),
                      [&](int p) { return in_sub[p]; }))
        emb.block_ids.push_back(bi);
    d.subs.push_back(std::move(emb));
  }
  return d;
}

// ----------------------------------------------------------------- text forms

namespace {

std::map<std::string, std::string> parse_kv(std::istringstream& is) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw DesignError("ParseError", "expected key=value: " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ','))
    if (!cur.empty()) out.push_back(std::stoi(cur));
  return out;
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  std::string s = (hash == std::string::npos) ? line : line.substr(0, hash);
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

StarterSpec parse_starter(std::istream& in) {
  StarterSpec s;
  std::string line;
  bool header_seen = false;
  bool class_open = false;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string word;
    is >> word;
    if (word == "starter") {
      auto kv = parse_kv(is);
      if (!kv.count("type") || !kv.count("n") || !kv.count("H"))
        throw DesignError("ParseError", "starter header needs type=, n=, H=");
      s.claimed_type = kv["type"];
      s.n = std::stoi(kv["n"]);
      s.H = parse_int_list(kv["H"]);
      // copies=<L> for L levels, copies=<L>' when each level also has a
      // primed twin (so 2L copies in all)
      std::string copies = kv.count("copies") ? kv["copies"] : "2";
      if (!copies.empty() && copies.back() == '\'') {
        s.primed = true;
        copies.pop_back();
      }
      s.levels = std::stoi(copies);
      std::string sub = kv.count("sub") ? kv["sub"] : "levels:1";
      if (sub == "primed") {
        s.sub_primed = true;
      } else if (sub == "unprimed") {
        s.sub_primed = false;
      } else if (sub.rfind("levels:", 0) == 0) {
        s.sub_levels = parse_int_list(sub.substr(7));
      } else {
        throw DesignError("ParseError", "bad sub= value: " + sub);
      }
      header_seen = true;
    } else if (word == "pair") {
      int a, b;
      if (!(is >> a >> b)) throw DesignError("ParseError", "bad pair line: " + line);
      s.pairs.push_back({a, b});
    } else if (word == "adder") {
      int a;
      while (is >> a) s.adder.push_back(a);
    } else if (word == "class") {
      s.base_classes.emplace_back();
      class_open = true;
    } else if (word == "triple") {
      std::vector<std::string> toks;
      std::string t;
      while (is >> t) toks.push_back(t);
      if (toks.size() != 3) throw DesignError("ParseError", "bad triple line: " + line);
      if (class_open) {
        std::array<StarterElem, 3> tri;
        for (int i = 0; i < 3; i++) tri[i] = elem_from_label(Label::parse(toks[i]));
        s.base_classes.back().push_back(tri);
      } else {
        s.triples.push_back({std::stoi(toks[0]), std::stoi(toks[1]), std::stoi(toks[2])});
      }
    } else {
      throw DesignError("ParseError", "unknown starter line: " + line);
    }
  }
  if (!header_seen) throw DesignError("ParseError", "missing starter header");
  if (!s.pairs.empty() && !s.base_classes.empty())
    throw DesignError("ParseError", "starter mixes pair and class forms");
  return s;
}

void print_starter(const StarterSpec& s, std::ostream& out) {
  out << "starter type=" << s.claimed_type << " n=" << s.n << " H=";
  for (size_t i = 0; i < s.H.size(); i++) out << (i ? "," : "") << s.H[i];
  out << " copies=" << s.levels;
  if (s.primed) out << '\'';
  out << " sub=";
  if (s.primed) {
    out << (s.sub_primed ? "primed" : "unprimed");
  } else {
    out << "levels:";
    for (size_t i = 0; i < s.sub_levels.size(); i++)
      out << (i ? "," : "") << s.sub_levels[i];
  }
  out << "\n";
  for (auto& [a, b] : s.pairs) out << "pair " << a << ' ' << b << "\n";
  if (!s.adder.empty()) {
    out << "adder";
    for (int a : s.adder) out << ' ' << a;
    out << "\n";
  }
  for (auto& t : s.triples) out << "triple " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
  for (auto& cls : s.base_classes) {
    out << "class\n";
    for (auto& tri : cls) {
      out << "triple";
      for (auto& e : tri) out << ' ' << elem_str(e);
      out << "\n";
    }
  }
}

StarterSpec read_starter_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DesignError("FileNotFound", path);
  return parse_starter(in);
}

void write_starter_file(const StarterSpec& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DesignError("FileWriteError", path);
  print_starter(s, out);
}

BaseBlockSystem parse_base_blocks(std::istream& in) {
  BaseBlockSystem b;
  bool header_seen = false;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string word;
    is >> word;
    if (word == "system") {
      auto kv = parse_kv(is);
      if (!kv.count("n")) throw DesignError("ParseError", "system header needs n=");
      b.n = std::stoi(kv["n"]);
      b.inf_count = kv.count("inf") ? std::stoi(kv["inf"]) : 0;
      header_seen = true;
    } else if (word == "base") {
      BaseBlockSystem::Base base;
      std::string tok;
      while (is >> tok) {
        if (tok.rfind("short=", 0) == 0)
          base.short_orbit = std::stoi(tok.substr(6));
        else
          base.points.push_back(Label::parse(tok));
      }
      if (base.points.size() < 2) throw DesignError("ParseError", "bad base line: " + line);
      b.bases.push_back(std::move(base));
    } else if (word == "extra") {
      std::vector<Label> blk;
      std::string tok;
      while (is >> tok) blk.push_back(Label::parse(tok));
      if (blk.size() < 2) throw DesignError("ParseError", "bad extra line: " + line);
      b.extra_blocks.push_back(std::move(blk));
    } else if (word == "classes") {
      std::string mode;
      is >> mode;
      if (mode == "translate") {
        int idx;
        while (is >> idx) b.translate_bases.push_back(idx);
      } else if (mode == "assemble") {
        BaseBlockSystem::AssembledClass ac;
        std::string tok;
        while (is >> tok) {
          if (tok.rfind("extra=", 0) == 0) {
            ac.extra_ids.push_back(std::stoi(tok.substr(6)));
          } else if (tok.rfind("orbit=", 0) == 0) {
            // orbit=<base> or orbit=<base>@<residue>%<modulus>
            BaseBlockSystem::Slice sl;
            std::string body = tok.substr(6);
            auto at = body.find('@');
            if (at == std::string::npos) {
              sl.base = std::stoi(body);
            } else {
              sl.base = std::stoi(body.substr(0, at));
              auto pct = body.find('%', at);
              if (pct == std::string::npos)
                throw DesignError("ParseError", "bad orbit slice: " + tok);
              sl.residue = std::stoi(body.substr(at + 1, pct - at - 1));
              sl.modulus = std::stoi(body.substr(pct + 1));
            }
            ac.slices.push_back(sl);
          } else {
            throw DesignError("ParseError", "bad assemble item: " + tok);
          }
        }
        b.assembled.push_back(std::move(ac));
      } else {
        throw DesignError("ParseError", "classes mode must be translate|assemble");
      }
    } else if (word == "sub") {
      BaseBlockSystem::SubDecl sd;
      is >> sd.name;
      auto kv = parse_kv(is);
      if (!kv.count("kind") || !kv.count("family"))
        throw DesignError("ParseError", "sub line needs kind= and family=");
      sd.kind = kind_parse(kv["kind"]);
      sd.family = kv["family"];
      b.subs.push_back(std::move(sd));
    } else {
      throw DesignError("ParseError", "unknown system line: " + line);
    }
  }
  if (!header_seen) throw DesignError("ParseError", "missing system header");
  return b;
}

BaseBlockSystem read_base_block_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DesignError("FileNotFound", path);
  return parse_base_blocks(in);
}

}  // namespace kirkman
