#include "kirkman/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace kirkman {

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  std::string s = (hash == std::string::npos) ? line : line.substr(0, hash);
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<int> split_ints(const std::string& s, char sep = ',') {
  std::vector<int> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(std::stoi(cur));
  return out;
}

// "p,q;r,s" -> {{p,q},{r,s}} with '|' as the outer separator
std::vector<std::vector<int>> split_groups(const std::string& s) {
  std::vector<std::vector<int>> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, '|')) out.push_back(split_ints(cur));
  return out;
}

}  // namespace

DesignInstance parse_design(std::istream& in) {
  DesignInstance d;
  bool header_seen = false;
  std::map<int, Label> points;
  std::map<int, Block> blocks;
  std::map<int, std::vector<int>> groups;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string word;
    is >> word;
    if (word == "design") {
      std::string tok;
      while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
          throw DesignError("ParseError", "expected key=value: " + tok);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "v")
          d.v = std::stoi(val);
        else if (key == "kind")
          d.kind = kind_parse(val);
        else
          throw DesignError("ParseError", "unknown design header key: " + key);
      }
      header_seen = true;
    } else if (word == "point") {
      int id;
      std::string lab;
      if (!(is >> id >> lab)) throw DesignError("ParseError", "bad point line: " + line);
      if (!points.insert({id, Label::parse(lab)}).second)
        throw DesignError("DuplicateLabel", "point id " + std::to_string(id));
    } else if (word == "block") {
      std::string idtok;
      is >> idtok;
      if (idtok.empty() || idtok.back() != ':')
        throw DesignError("ParseError", "bad block line: " + line);
      int id = std::stoi(idtok.substr(0, idtok.size() - 1));
      Block b;
      int p;
      while (is >> p) b.push_back(p);
      if (!blocks.insert({id, std::move(b)}).second)
        throw DesignError("DuplicateBlock", "block id " + std::to_string(id));
    } else if (word == "group") {
      std::string idtok;
      is >> idtok;
      if (idtok.empty() || idtok.back() != ':')
        throw DesignError("ParseError", "bad group line: " + line);
      int id = std::stoi(idtok.substr(0, idtok.size() - 1));
      std::vector<int> g;
      int p;
      while (is >> p) g.push_back(p);
      groups[id] = std::move(g);
    } else if (word == "class") {
      DesignInstance::Class c;
      std::string tok;
      is >> tok;
      if (tok.rfind("hole=", 0) == 0) {
        std::string rest = tok.substr(5);
        if (rest.back() != ':') throw DesignError("ParseError", "bad class line: " + line);
        c.hole = std::stoi(rest.substr(0, rest.size() - 1));
      } else if (tok != ":") {
        // "class: b b ..." arrives with ':' glued to nothing; tok may be "b"
        // only when the colon was omitted -- reject that.
        if (tok.back() == ':' && tok.size() == 1) {
          ;  // plain full class
        } else {
          throw DesignError("ParseError", "bad class line: " + line);
        }
      }
      int bid;
      while (is >> bid) c.block_ids.push_back(bid);
      d.classes.push_back(std::move(c));
    } else if (word == "sub") {
      SubdesignEmbedding emb;
      is >> emb.name;
      std::string tok;
      std::string tail;
      // key=value pairs up to the token ending in ':'
      while (is >> tok) {
        bool last = !tok.empty() && tok.back() == ':';
        if (last) tok.pop_back();
        if (!tok.empty()) {
          auto eq = tok.find('=');
          if (eq == std::string::npos)
            throw DesignError("ParseError", "expected key=value in sub line: " + tok);
          std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
          if (key == "kind") {
            emb.sub_kind = kind_parse(val);
          } else if (key == "align") {
            if (val == "split")
              emb.alignment = SubdesignEmbedding::Alignment::SplitGroups;
            else if (val == "whole")
              emb.alignment = SubdesignEmbedding::Alignment::WholeGroups;
            else if (val == "plain")
              emb.alignment = SubdesignEmbedding::Alignment::PlainSubset;
            else
              throw DesignError("ParseError", "bad align: " + val);
          } else if (key == "type") {
            std::replace(val.begin(), val.end(), ',', ' ');
            emb.sub_type = GroupTypeVector::parse(val);
          } else if (key == "t") {
            emb.whole_group_indices = split_ints(val);
          } else {
            throw DesignError("ParseError", "unknown sub key: " + key);
          }
        }
        if (last) break;
      }
      std::getline(is, tail);
      // tail: points=...; blocks=...[; groups=...]
      std::istringstream ts(tail);
      std::string part;
      while (std::getline(ts, part, ';')) {
        part = strip_comment(part);
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos)
          throw DesignError("ParseError", "bad sub section: " + part);
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "points")
          emb.points = split_ints(val);
        else if (key == "blocks")
          emb.block_ids = split_ints(val);
        else if (key == "groups")
          emb.sub_groups = split_groups(val);
        else
          throw DesignError("ParseError", "unknown sub section: " + key);
      }
      d.subs.push_back(std::move(emb));
    } else {
      throw DesignError("ParseError", "unknown design line: " + line);
    }
  }
  if (!header_seen) throw DesignError("ParseError", "missing design header");

  // densify: ids must be 0..count-1
  auto densify = [&](auto& m, const char* what) {
    int want = 0;
    for (auto& [id, _] : m)
      if (id != want++)
        throw DesignError("ParseError", std::string(what) + " ids must be dense from 0");
  };
  densify(points, "point");
  densify(blocks, "block");
  densify(groups, "group");
  if (static_cast<int>(points.size()) != d.v)
    throw DesignError("ParseError", "point count disagrees with v");
  for (auto& [id, l] : points) d.labels.push_back(l);
  for (auto& [id, b] : blocks) d.blocks.push_back(b);
  for (auto& [id, g] : groups) d.groups.push_back(g);
  return canonicalize(std::move(d));
}

void print_design(const DesignInstance& d, std::ostream& out) {
  out << "design v=" << d.v << " kind=" << kind_name(d.kind) << "\n";
  for (int p = 0; p < d.v; p++) out << "point " << p << ' ' << d.labels[p].str() << "\n";
  for (size_t i = 0; i < d.blocks.size(); i++) {
    out << "block " << i << ':';
    for (int p : d.blocks[i]) out << ' ' << p;
    out << "\n";
  }
  for (size_t i = 0; i < d.groups.size(); i++) {
    out << "group " << i << ':';
    for (int p : d.groups[i]) out << ' ' << p;
    out << "\n";
  }
  for (auto& c : d.classes) {
    out << "class ";
    if (c.hole >= 0) out << "hole=" << c.hole;
    out << ':';
    for (int b : c.block_ids) out << ' ' << b;
    out << "\n";
  }
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); i++) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  for (auto& s : d.subs) {
    out << "sub " << s.name << " kind=" << kind_name(s.sub_kind) << " align=";
    switch (s.alignment) {
      case SubdesignEmbedding::Alignment::SplitGroups: out << "split"; break;
      case SubdesignEmbedding::Alignment::WholeGroups: out << "whole"; break;
      case SubdesignEmbedding::Alignment::PlainSubset: out << "plain"; break;
    }
    if (!s.sub_type.parts.empty()) {
      std::string t = s.sub_type.str();
      std::replace(t.begin(), t.end(), ' ', ',');
      out << " type=" << t;
    }
    if (!s.whole_group_indices.empty()) out << " t=" << join(s.whole_group_indices);
    out << ": points=" << join(s.points) << "; blocks=" << join(s.block_ids);
    if (!s.sub_groups.empty()) {
      out << "; groups=";
      for (size_t i = 0; i < s.sub_groups.size(); i++)
        out << (i ? "|" : "") << join(s.sub_groups[i]);
    }
    out << "\n";
  }
}

DesignInstance read_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DesignError("FileNotFound", path);
  return parse_design(in);
}

void write_design_file(const DesignInstance& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DesignError("FileWriteError", path);
  print_design(d, out);
}

std::vector<std::vector<std::vector<int>>> parse_mols_file(std::istream& in, int& n) {
  n = 0;
  int k = 0;
  std::string line;
  std::vector<int> cells;
  bool header_seen = false;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    std::istringstream is(line);
    if (!header_seen) {
      std::string word, tok;
      is >> word;
      if (word != "mols") throw DesignError("ParseError", "expected mols header");
      while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
          throw DesignError("ParseError", "expected key=value: " + tok);
        if (tok.substr(0, eq) == "n")
          n = std::stoi(tok.substr(eq + 1));
        else if (tok.substr(0, eq) == "k")
          k = std::stoi(tok.substr(eq + 1));
      }
      if (n <= 0 || k <= 0) throw DesignError("ParseError", "mols header needs n= and k=");
      header_seen = true;
      continue;
    }
    int x;
    while (is >> x) cells.push_back(x);
  }
  if (!header_seen) throw DesignError("ParseError", "missing mols header");
  if (static_cast<int>(cells.size()) != k * n * n)
    throw DesignError("ParseError", "mols file has " + std::to_string(cells.size()) +
                                        " cells, expected " + std::to_string(k * n * n));
  std::vector<std::vector<std::vector<int>>> squares(
      k, std::vector<std::vector<int>>(n, std::vector<int>(n)));
  size_t idx = 0;
  for (int s = 0; s < k; s++)
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) squares[s][i][j] = cells[idx++];
  return squares;
}

std::vector<std::vector<std::vector<int>>> read_mols_file(const std::string& path, int& n) {
  std::ifstream in(path);
  if (!in) throw DesignError("FileNotFound", path);
  return parse_mols_file(in, n);
}

void print_report(const Report& r, std::ostream& out) {
  out << "# checked: " << r.checked_kind << "\n";
  out << "# pairs covered: " << r.pairs_covered << "\n";
  out << "# classes: " << r.class_count << "\n";
  out << "# violations: " << r.violation_count << "\n";
  for (auto& w : r.witnesses) out << "# witness: " << w << "\n";
  if (r.violation_count > static_cast<long>(r.witnesses.size()))
    out << "# (further witnesses suppressed)\n";
  out << (r.pass ? "PASS" : "FAIL") << "\n";
}

}  // namespace kirkman
