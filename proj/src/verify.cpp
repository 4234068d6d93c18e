#include "kirkman/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kirkman {

namespace {

std::string pair_str(const DesignInstance& d, int a, int b) {
  return "{" + d.labels[a].str() + "," + d.labels[b].str() + "}";
}

// group index per point, -1 if ungrouped
std::vector<int> group_of(const DesignInstance& d) {
  std::vector<int> g(d.v, -1);
  for (size_t i = 0; i < d.groups.size(); i++)
    for (int p : d.groups[i]) {
      if (p < 0 || p >= d.v) throw DesignError("UnknownPoint", std::to_string(p));
      g[p] = static_cast<int>(i);
    }
  return g;
}

}  // namespace

std::string Report::summary() const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << " kind=" << checked_kind
     << " pairs=" << pairs_covered << " classes=" << class_count;
  if (!pass) {
    os << " violations=" << violation_count;
    for (auto& w : witnesses) os << "\n  witness: " << w;
  }
  return os.str();
}

Report check_gdd(const DesignInstance& d, const std::set<int>& K,
                 const GroupTypeVector& type, int lambda, int witness_cap) {
  Report r;
  r.witness_cap = witness_cap;
  r.checked_kind = "GDD " + type.str();

  std::vector<std::vector<int>> groups = d.groups;
  if (groups.empty()) {  // PBD / STS: implicit type 1^v
    for (int i = 0; i < d.v; i++) groups.push_back({i});
  }
  // partition + declared-type check
  {
    std::vector<int> seen(d.v, 0);
    std::vector<int> sizes;
    for (auto& g : groups) {
      sizes.push_back(static_cast<int>(g.size()));
      for (int p : g) seen[p]++;
    }
    for (int p = 0; p < d.v; p++)
      if (seen[p] != 1) {
        throw DesignError("TypeMismatch",
                          "groups do not partition the point set at point " +
                              d.labels[p].str());
      }
    if (!(GroupTypeVector::of_sizes(sizes) == type))
      throw DesignError("TypeMismatch", "declared " + type.str() + " actual " +
                                            GroupTypeVector::of_sizes(sizes).str());
  }
  std::vector<int> grp(d.v, -1);
  for (size_t i = 0; i < groups.size(); i++)
    for (int p : groups[i]) grp[p] = static_cast<int>(i);

  // exhaustive pair table
  std::vector<uint16_t> count(static_cast<size_t>(d.v) * d.v, 0);
  for (size_t bi = 0; bi < d.blocks.size(); bi++) {
    const Block& b = d.blocks[bi];
    if (!K.count(static_cast<int>(b.size())))
      r.add("block " + std::to_string(bi) + " has size " + std::to_string(b.size()));
    for (size_t i = 0; i < b.size(); i++)
      for (size_t j = i + 1; j < b.size(); j++) {
        auto& c = count[static_cast<size_t>(b[i]) * d.v + b[j]];
        if (c < 65535) c++;
      }
  }
  for (int a = 0; a < d.v; a++)
    for (int b = a + 1; b < d.v; b++) {
      int c = count[static_cast<size_t>(a) * d.v + b];
      if (grp[a] == grp[b]) {
        if (c != 0) r.add("within-group pair " + pair_str(d, a, b) + " covered " +
                          std::to_string(c) + "x");
      } else {
        r.pairs_covered += c;
        if (c != lambda)
          r.add("pair " + pair_str(d, a, b) + " covered " + std::to_string(c) +
                "x, want " + std::to_string(lambda));
      }
    }
  r.finish();
  return r;
}

Report check_resolution(const DesignInstance& d, int witness_cap) {
  Report r;
  r.witness_cap = witness_cap;
  r.checked_kind = "resolution";
  if (d.classes.empty()) throw DesignError("NoResolutionPresent", "no classes");
  r.class_count = static_cast<int>(d.classes.size());

  std::vector<int> used(d.blocks.size(), 0);
  for (size_t ci = 0; ci < d.classes.size(); ci++) {
    const auto& c = d.classes[ci];
    if (c.hole != -1) r.add("class " + std::to_string(ci) + " is hole-aligned");
    std::vector<int> cover(d.v, 0);
    for (int bi : c.block_ids) {
      if (bi < 0 || bi >= static_cast<int>(d.blocks.size())) {
        r.add("class " + std::to_string(ci) + " references unknown block");
        continue;
      }
      used[bi]++;
      for (int p : d.blocks[bi]) cover[p]++;
    }
    for (int p = 0; p < d.v; p++)
      if (cover[p] != 1)
        r.add("class " + std::to_string(ci) + " covers " + d.labels[p].str() + " " +
              std::to_string(cover[p]) + "x");
  }
  for (size_t bi = 0; bi < d.blocks.size(); bi++)
    if (used[bi] != 1)
      r.add("block " + std::to_string(bi) + " appears in " + std::to_string(used[bi]) +
            " classes");
  if (d.kind == Kind::KTS && static_cast<long>(d.classes.size()) != (d.v - 1) / 2)
    r.add("KTS(" + std::to_string(d.v) + ") must have " + std::to_string((d.v - 1) / 2) +
          " classes, found " + std::to_string(d.classes.size()));
  r.finish();
  return r;
}

Report check_frame_resolution(const DesignInstance& d, int witness_cap) {
  Report r;
  r.witness_cap = witness_cap;
  r.checked_kind = "frame-resolution " + d.group_type().str();
  if (d.groups.empty()) throw DesignError("NoGroups", "frame needs groups");
  r.class_count = static_cast<int>(d.classes.size());

  std::vector<int> grp = group_of(d);
  std::vector<int> used(d.blocks.size(), 0);
  std::vector<int> classes_per_hole(d.groups.size(), 0);
  for (size_t ci = 0; ci < d.classes.size(); ci++) {
    const auto& c = d.classes[ci];
    if (c.hole < 0 || c.hole >= static_cast<int>(d.groups.size())) {
      r.add("class " + std::to_string(ci) + " has no valid hole tag");
      continue;
    }
    classes_per_hole[c.hole]++;
    std::vector<int> cover(d.v, 0);
    for (int bi : c.block_ids) {
      used[bi]++;
      for (int p : d.blocks[bi]) cover[p]++;
    }
    for (int p = 0; p < d.v; p++) {
      int want = (grp[p] == c.hole) ? 0 : 1;
      if (cover[p] != want)
        r.add("class " + std::to_string(ci) + " (hole " + std::to_string(c.hole) +
              ") covers " + d.labels[p].str() + " " + std::to_string(cover[p]) +
              "x, want " + std::to_string(want));
    }
  }
  for (size_t bi = 0; bi < d.blocks.size(); bi++)
    if (used[bi] != 1)
      r.add("block " + std::to_string(bi) + " appears in " + std::to_string(used[bi]) +
            " classes");
  for (size_t gi = 0; gi < d.groups.size(); gi++) {
    int want = static_cast<int>(d.groups[gi].size()) / 2;
    if (classes_per_hole[gi] != want)
      r.add("hole " + std::to_string(gi) + " has " +
            std::to_string(classes_per_hole[gi]) + " classes, want " +
            std::to_string(want));
  }
  // underlying 3-GDD
  Report gdd = check_gdd(d, {3}, d.group_type(), 1, witness_cap);
  r.pairs_covered = gdd.pairs_covered;
  if (!gdd.pass) {
    r.violation_count += gdd.violation_count;
    for (auto& w : gdd.witnesses) r.add(w), r.violation_count--;
  }
  r.finish();
  return r;
}

namespace {

// restriction of host classes to the embedded block set, if every sub block
// lies in some host class; used for resolvable sub-kinds.
bool restrict_classes(const DesignInstance& host, const DesignInstance& sub,
                      const std::vector<int>& block_ids,
                      const std::vector<int>& dense, DesignInstance* out) {
  std::vector<int> host_class_of(host.blocks.size(), -1);
  for (size_t ci = 0; ci < host.classes.size(); ci++)
    for (int bi : host.classes[ci].block_ids) host_class_of[bi] = static_cast<int>(ci);
  std::map<int, std::vector<int>> per_class;
  for (size_t k = 0; k < block_ids.size(); k++) {
    int hc = host_class_of[block_ids[k]];
    if (hc < 0) return false;
    // sub block id: position of relabeled block in sub.blocks
    Block nb;
    for (int p : host.blocks[block_ids[k]]) nb.push_back(dense[p]);
    std::sort(nb.begin(), nb.end());
    int sid = out ? out->find_block(nb) : sub.find_block(nb);
    if (sid < 0) return false;
    per_class[hc].push_back(sid);
  }
  if (out) {
    for (auto& [hc, ids] : per_class) {
      DesignInstance::Class c;
      c.block_ids = ids;
      std::sort(c.block_ids.begin(), c.block_ids.end());
      out->classes.push_back(c);
    }
  }
  return true;
}

}  // namespace

Report check_subdesign(const DesignInstance& host, const SubdesignEmbedding& emb,
                       int witness_cap) {
  Report r;
  r.witness_cap = witness_cap;
  r.checked_kind = "subdesign " + emb.name + " (" + kind_name(emb.sub_kind) + ")";

  // structural containment
  std::vector<char> in_pts(host.v, 0);
  for (int p : emb.points) {
    if (p < 0 || p >= host.v) throw DesignError("UnknownPoint", std::to_string(p));
    in_pts[p] = 1;
  }
  for (int bi : emb.block_ids) {
    if (bi < 0 || bi >= static_cast<int>(host.blocks.size()))
      throw DesignError("UnknownBlock", std::to_string(bi));
    for (int p : host.blocks[bi])
      if (!in_pts[p])
        r.add("sub block " + std::to_string(bi) + " leaves the point subset at " +
              host.labels[p].str());
  }

  // alignment
  if (emb.alignment == SubdesignEmbedding::Alignment::SplitGroups) {
    if (emb.sub_groups.size() != host.groups.size())
      r.add("SplitGroups: sub has " + std::to_string(emb.sub_groups.size()) +
            " groups, host " + std::to_string(host.groups.size()));
    size_t n = std::min(emb.sub_groups.size(), host.groups.size());
    for (size_t i = 0; i < n; i++)
      for (int p : emb.sub_groups[i])
        if (!std::binary_search(host.groups[i].begin(), host.groups[i].end(), p))
          r.add("AlignmentViolation: sub-group " + std::to_string(i) +
                " not inside host group " + std::to_string(i));
  } else if (emb.alignment == SubdesignEmbedding::Alignment::WholeGroups) {
    if (emb.whole_group_indices.size() != emb.sub_groups.size())
      r.add("WholeGroups: index set and sub-group count differ");
    for (size_t i = 0; i < emb.whole_group_indices.size() && i < emb.sub_groups.size();
         i++) {
      int t = emb.whole_group_indices[i];
      if (t < 0 || t >= static_cast<int>(host.groups.size()) ||
          emb.sub_groups[i] != host.groups[t])
        r.add("AlignmentViolation: sub-group " + std::to_string(i) +
              " is not exactly host group " + std::to_string(t));
    }
  }
  if (r.violation_count > 0) {
    r.finish();
    return r;
  }

  // relabel and certify the claimed sub-kind
  std::vector<int> dense(host.v, -1);
  DesignInstance sub;
  sub.v = static_cast<int>(emb.points.size());
  for (int i = 0; i < sub.v; i++) {
    dense[emb.points[i]] = i;
    sub.labels.push_back(host.labels[emb.points[i]]);
  }
  for (int bi : emb.block_ids) {
    Block nb;
    for (int p : host.blocks[bi]) nb.push_back(dense[p]);
    std::sort(nb.begin(), nb.end());
    sub.blocks.push_back(std::move(nb));
  }
  for (auto& g : emb.sub_groups) {
    std::vector<int> ng;
    for (int p : g) ng.push_back(dense[p]);
    std::sort(ng.begin(), ng.end());
    sub.groups.push_back(std::move(ng));
  }
  sub.kind = emb.sub_kind;
  sub = canonicalize(std::move(sub));

  Report inner;
  switch (emb.sub_kind) {
    case Kind::STS: {
      Admissible a = admissible_sts(sub.v);
      if (!a.ok) {
        r.add("SubKindFails: " + a.reason);
        r.finish();
        return r;
      }
      sub.groups.clear();
      inner = check_gdd(sub, {3}, GroupTypeVector::uniform(1, sub.v), 1, witness_cap);
      break;
    }
    case Kind::KTS: {
      sub.groups.clear();
      inner = check_gdd(sub, {3}, GroupTypeVector::uniform(1, sub.v), 1, witness_cap);
      if (inner.pass) {
        // classes must be restrictions of host classes
        if (!restrict_classes(host, sub, emb.block_ids, dense, &sub)) {
          r.add("SubKindFails: sub blocks are not aligned with host classes");
          r.finish();
          return r;
        }
        Report res = check_resolution(sub, witness_cap);
        if (static_cast<long>(sub.classes.size()) != (sub.v - 1) / 2)
          r.add("SubKindFails: sub-KTS class count " +
                std::to_string(sub.classes.size()));
        if (!res.pass)
          for (auto& w : res.witnesses) r.add("SubKindFails: " + w);
      }
      break;
    }
    case Kind::GDD:
      inner = check_gdd(sub, {3}, emb.sub_type, 1, witness_cap);
      break;
    default:
      throw DesignError("UnknownKind", "unsupported sub-kind " + kind_name(emb.sub_kind));
  }
  if (!inner.pass)
    for (auto& w : inner.witnesses) r.add("SubKindFails: " + w);
  r.pairs_covered = inner.pairs_covered;
  r.finish();
  return r;
}

Report check_mols(int n, const std::vector<std::vector<std::vector<int>>>& squares,
                  int witness_cap) {
  Report r;
  r.witness_cap = witness_cap;
  r.checked_kind = "MOLS n=" + std::to_string(n) + " k=" + std::to_string(squares.size());
  for (size_t s = 0; s < squares.size(); s++) {
    const auto& L = squares[s];
    if (static_cast<int>(L.size()) != n) {
      r.add("square " + std::to_string(s) + " wrong size");
      continue;
    }
    for (int i = 0; i < n; i++) {
      std::vector<int> row(n, 0), col(n, 0);
      for (int j = 0; j < n; j++) {
        int a = L[i][j], b = L[j][i];
        if (a < 0 || a >= n || b < 0 || b >= n) {
          r.add("square " + std::to_string(s) + " symbol out of range");
          continue;
        }
        row[a]++;
        col[b]++;
      }
      for (int x = 0; x < n; x++) {
        if (row[x] != 1)
          r.add("square " + std::to_string(s) + " row " + std::to_string(i) +
                " not Latin");
        if (col[x] != 1)
          r.add("square " + std::to_string(s) + " col " + std::to_string(i) +
                " not Latin");
      }
    }
  }
  for (size_t s = 0; s + 1 < squares.size(); s++)
    for (size_t t = s + 1; t < squares.size(); t++) {
      std::vector<int> seen(static_cast<size_t>(n) * n, 0);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
          seen[static_cast<size_t>(squares[s][i][j]) * n + squares[t][i][j]]++;
      for (int x = 0; x < n * n; x++)
        if (seen[x] != 1)
          r.add("squares " + std::to_string(s) + "," + std::to_string(t) +
                " not orthogonal at pair " + std::to_string(x));
    }
  r.finish();
  return r;
}

Admissible admissible_sts(long v) {
  if (v % 6 == 1 || v % 6 == 3) return {true, ""};
  return {false, "STS needs v = 1 or 3 (mod 6)"};
}

Admissible admissible_kts(long v) {
  if (v % 6 == 3) return {true, ""};
  return {false, "KTS needs v = 3 (mod 6)"};
}

Admissible admissible_gdd3(long g, long u) {
  if (u < 3) return {false, "3-GDD needs u >= 3"};
  if ((g * (u - 1)) % 2 != 0) return {false, "3-GDD needs g(u-1) even"};
  if ((u * (u - 1) * g * g) % 6 != 0) return {false, "3-GDD needs u(u-1)g^2 = 0 (mod 6)"};
  return {true, ""};
}

Admissible admissible_frame(long t, long u) {
  if (t % 2 != 0) return {false, "Kirkman frame needs t even"};
  if (u < 4) return {false, "Kirkman frame needs u >= 4"};
  if ((t * (u - 1)) % 3 != 0) return {false, "Kirkman frame needs t(u-1) = 0 (mod 3)"};
  return {true, ""};
}

Admissible admissible_sts_in_sts(long u, long v) {
  Admissible a = admissible_sts(u);
  if (!a.ok) return a;
  Admissible b = admissible_sts(v);
  if (!b.ok) return b;
  if (v < 2 * u + 1) return {false, "subdesign needs v >= 2u+1"};
  return {true, ""};
}

Report certify(const DesignInstance& d, int witness_cap) {
  Report r;
  r.witness_cap = witness_cap;
  r.checked_kind = kind_name(d.kind);
  auto merge = [&](const Report& x) {
    r.pairs_covered += x.pairs_covered;
    r.class_count += x.class_count;
    if (!x.pass) {
      r.violation_count += x.violation_count;
      for (auto& w : x.witnesses)
        if (static_cast<int>(r.witnesses.size()) < witness_cap) r.witnesses.push_back(w);
    }
  };
  switch (d.kind) {
    case Kind::STS:
      merge(check_gdd(d, {3}, GroupTypeVector::uniform(1, d.v), 1, witness_cap));
      break;
    case Kind::KTS:
      merge(check_gdd(d, {3}, GroupTypeVector::uniform(1, d.v), 1, witness_cap));
      merge(check_resolution(d, witness_cap));
      r.class_count = static_cast<int>(d.classes.size());
      break;
    case Kind::PBD: {
      std::set<int> K;
      for (auto& b : d.blocks) K.insert(static_cast<int>(b.size()));
      merge(check_gdd(d, K, GroupTypeVector::uniform(1, d.v), 1, witness_cap));
      break;
    }
    case Kind::GDD:
    case Kind::TD: {
      std::set<int> K;
      for (auto& b : d.blocks) K.insert(static_cast<int>(b.size()));
      merge(check_gdd(d, K, d.group_type(), 1, witness_cap));
      break;
    }
    case Kind::RTD: {
      std::set<int> K;
      for (auto& b : d.blocks) K.insert(static_cast<int>(b.size()));
      merge(check_gdd(d, K, d.group_type(), 1, witness_cap));
      // classes of an RTD are Full classes
      merge(check_resolution(d, witness_cap));
      r.class_count = static_cast<int>(d.classes.size());
      break;
    }
    case Kind::Frame:
    case Kind::FrameWithSub:
      merge(check_frame_resolution(d, witness_cap));
      r.class_count = static_cast<int>(d.classes.size());
      break;
  }
  for (auto& s : d.subs) merge(check_subdesign(d, s, witness_cap));
  r.finish();
  return r;
}

}  // namespace kirkman
