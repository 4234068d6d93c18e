#include "kirkman/design.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace kirkman {

Label Label::residue(long r, int copy, bool primed) {
  Label l;
  l.kind = Kind::Residue;
  l.value = r;
  l.copy = copy;
  l.primed = primed;
  return l;
}

Label Label::infinity(long index) {
  Label l;
  l.kind = Kind::Infinity;
  l.value = index;
  return l;
}

Label Label::product(const Label& inner, int factor) {
  Label l;
  l.kind = Kind::Product;
  l.text = inner.str();
  l.copy = factor;
  return l;
}

Label Label::opaque(std::string s) {
  Label l;
  l.kind = Kind::Opaque;
  l.text = std::move(s);
  return l;
}

std::string Label::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Residue:
      os << value;
      if (copy != 0 || primed) os << '_' << copy;
      if (primed) os << '\'';
      break;
    case Kind::Infinity:
      os << "inf" << value;
      break;
    case Kind::Product:
      os << '(' << text << '*' << copy << ')';
      break;
    case Kind::Opaque:
      os << text;
      break;
  }
  return os.str();
}

Label Label::parse(const std::string& s) {
  if (s.empty()) throw DesignError("BadLabel", "empty label");
  if (s.front() == '(') {
    // Product: (<inner>*<factor>) with the factor after the last '*'.
    if (s.back() != ')') throw DesignError("BadLabel", s);
    auto star = s.rfind('*');
    if (star == std::string::npos) throw DesignError("BadLabel", s);
    Label inner = parse(s.substr(1, star - 1));
    return product(inner, std::stoi(s.substr(star + 1, s.size() - star - 2)));
  }
  if (s.rfind("inf", 0) == 0 && s.size() > 3 &&
      std::isdigit(static_cast<unsigned char>(s[3]))) {
    return infinity(std::stol(s.substr(3)));
  }
  bool numeric = std::isdigit(static_cast<unsigned char>(s[0])) ||
                 (s[0] == '-' && s.size() > 1);
  if (numeric) {
    size_t i = (s[0] == '-') ? 1 : 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) i++;
    long r = std::stol(s.substr(0, i));
    int copy = 0;
    bool primed = false;
    if (i < s.size() && s[i] == '_') {
      size_t j = ++i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) j++;
      if (j == i) throw DesignError("BadLabel", s);
      copy = std::stoi(s.substr(i, j - i));
      i = j;
    }
    if (i < s.size() && s[i] == '\'') {
      primed = true;
      i++;
    }
    if (i != s.size()) throw DesignError("BadLabel", s);
    return residue(r, copy, primed);
  }
  return opaque(s);
}

GroupTypeVector GroupTypeVector::of_sizes(const std::vector<int>& sizes) {
  std::map<int, int, std::greater<int>> m;
  for (int s : sizes) m[s]++;
  GroupTypeVector t;
  for (auto& [g, u] : m) t.parts.push_back({g, u});
  return t;
}

long GroupTypeVector::total() const {
  long s = 0;
  for (auto& [g, u] : parts) s += static_cast<long>(g) * u;
  return s;
}

int GroupTypeVector::group_count() const {
  int s = 0;
  for (auto& [g, u] : parts) s += u;
  return s;
}

std::string GroupTypeVector::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [g, u] : parts) {
    if (!first) os << ' ';
    first = false;
    os << g << '^' << u;
  }
  return os.str();
}

GroupTypeVector GroupTypeVector::parse(const std::string& s) {
  std::istringstream is(s);
  std::string tok;
  std::vector<int> sizes;
  while (is >> tok) {
    auto caret = tok.find('^');
    int g, u;
    if (caret == std::string::npos) {
      g = std::stoi(tok);
      u = 1;
    } else {
      g = std::stoi(tok.substr(0, caret));
      u = std::stoi(tok.substr(caret + 1));
    }
    for (int i = 0; i < u; i++) sizes.push_back(g);
  }
  return of_sizes(sizes);
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::STS: return "STS";
    case Kind::KTS: return "KTS";
    case Kind::GDD: return "GDD";
    case Kind::PBD: return "PBD";
    case Kind::TD: return "TD";
    case Kind::RTD: return "RTD";
    case Kind::Frame: return "Frame";
    case Kind::FrameWithSub: return "FrameWithSub";
  }
  return "?";
}

Kind kind_parse(const std::string& s) {
  for (Kind k : {Kind::STS, Kind::KTS, Kind::GDD, Kind::PBD, Kind::TD,
                 Kind::RTD, Kind::Frame, Kind::FrameWithSub})
    if (kind_name(k) == s) return k;
  throw DesignError("UnknownKind", s);
}

int DesignInstance::point_by_label(const Label& l) const {
  for (int i = 0; i < v; i++)
    if (labels[i] == l) return i;
  return -1;
}

int DesignInstance::find_block(const Block& b) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), b);
  if (it != blocks.end() && *it == b) return static_cast<int>(it - blocks.begin());
  return -1;
}

GroupTypeVector DesignInstance::group_type() const {
  std::vector<int> sizes;
  for (auto& g : groups) sizes.push_back(static_cast<int>(g.size()));
  return GroupTypeVector::of_sizes(sizes);
}

namespace {

// Sort blocks lexicographically, keep a remap from old index to new id.
void sort_blocks(DesignInstance& d, std::vector<int>& remap) {
  const size_t n = d.blocks.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d.blocks[a] < d.blocks[b]; });
  std::vector<Block> sorted(n);
  remap.assign(n, -1);
  for (size_t i = 0; i < n; i++) {
    sorted[i] = d.blocks[order[i]];
    remap[order[i]] = static_cast<int>(i);
  }
  for (size_t i = 0; i + 1 < n; i++)
    if (sorted[i] == sorted[i + 1]) {
      std::ostringstream os;
      os << "block {";
      for (int p : sorted[i]) os << ' ' << p;
      os << " } listed twice";
      throw DesignError("DuplicateBlock", os.str());
    }
  d.blocks = std::move(sorted);
}

}  // namespace

DesignInstance canonicalize(const RawDesign& raw) {
  DesignInstance d;
  d.kind = raw.kind;
  d.v = static_cast<int>(raw.points.size());
  d.labels = raw.points;
  std::map<std::string, int> by_label;
  for (int i = 0; i < d.v; i++) {
    auto [it, fresh] = by_label.insert({d.labels[i].str(), i});
    if (!fresh) throw DesignError("DuplicateLabel", d.labels[i].str());
  }
  auto resolve = [&](const Label& l) {
    auto it = by_label.find(l.str());
    if (it == by_label.end()) throw DesignError("UnknownPoint", l.str());
    return it->second;
  };
  for (auto& rb : raw.blocks) {
    Block b;
    for (auto& l : rb) b.push_back(resolve(l));
    std::sort(b.begin(), b.end());
    if (b.size() < 2) throw DesignError("BadBlock", "block size < 2");
    if (std::adjacent_find(b.begin(), b.end()) != b.end())
      throw DesignError("BadBlock", "repeated point in block");
    d.blocks.push_back(std::move(b));
  }
  for (auto& rg : raw.groups) {
    std::vector<int> g;
    for (auto& l : rg) g.push_back(resolve(l));
    std::sort(g.begin(), g.end());
    d.groups.push_back(std::move(g));
  }
  std::vector<int> remap;
  sort_blocks(d, remap);
  for (auto& rc : raw.classes) {
    if (rc.block_indices.empty()) throw DesignError("EmptyClass", "class with no blocks");
    DesignInstance::Class c;
    c.hole = rc.hole;
    for (int i : rc.block_indices) {
      if (i < 0 || i >= static_cast<int>(remap.size()))
        throw DesignError("UnknownBlock", std::to_string(i));
      c.block_ids.push_back(remap[i]);
    }
    std::sort(c.block_ids.begin(), c.block_ids.end());
    d.classes.push_back(std::move(c));
  }
  return d;
}

DesignInstance canonicalize(DesignInstance d) {
  for (auto& b : d.blocks) std::sort(b.begin(), b.end());
  std::vector<int> remap;
  sort_blocks(d, remap);
  for (auto& c : d.classes) {
    if (c.block_ids.empty()) throw DesignError("EmptyClass", "class with no blocks");
    for (auto& id : c.block_ids) id = remap.at(id);
    std::sort(c.block_ids.begin(), c.block_ids.end());
  }
  for (auto& g : d.groups) std::sort(g.begin(), g.end());
  for (auto& s : d.subs) {
    for (auto& id : s.block_ids) id = remap.at(id);
    std::sort(s.block_ids.begin(), s.block_ids.end());
    std::sort(s.points.begin(), s.points.end());
    for (auto& g : s.sub_groups) std::sort(g.begin(), g.end());
  }
  return d;
}

DesignInstance induced_subdesign(const DesignInstance& d, const std::vector<int>& pts) {
  std::vector<int> sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> dense(d.v, -1);
  DesignInstance out;
  out.v = static_cast<int>(sorted.size());
  for (int i = 0; i < out.v; i++) {
    if (sorted[i] < 0 || sorted[i] >= d.v)
      throw DesignError("UnknownPoint", std::to_string(sorted[i]));
    dense[sorted[i]] = i;
    out.labels.push_back(d.labels[sorted[i]]);
  }
  for (auto& b : d.blocks) {
    Block nb;
    for (int p : b) {
      if (dense[p] < 0) { nb.clear(); break; }
      nb.push_back(dense[p]);
    }
    if (!nb.empty()) out.blocks.push_back(std::move(nb));
  }
  out.kind = Kind::STS;
  return canonicalize(std::move(out));
}

std::vector<Label> relabel_product(const DesignInstance& d, int w) {
  if (w < 1) throw DesignError("BadWeight", "weight must be >= 1");
  if (w == 1) return d.labels;
  std::vector<Label> out;
  out.reserve(static_cast<size_t>(d.v) * w);
  for (int x = 0; x < d.v; x++)
    for (int j = 1; j <= w; j++) out.push_back(Label::product(d.labels[x], j));
  return out;
}

}  // namespace kirkman
