// Exact, exhaustive certification.  Every check enumerates all pairs and all
// class memberships; nothing is trusted from construction logic.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "kirkman/design.hpp"

namespace kirkman {

struct Report {
  bool pass = false;
  std::string checked_kind;
  long pairs_covered = 0;
  int class_count = 0;
  long violation_count = 0;
  std::vector<std::string> witnesses;  // first <= witness_cap violations
  int witness_cap = 10;

  void add(const std::string& w) {
    violation_count++;
    if (static_cast<int>(witnesses.size()) < witness_cap) witnesses.push_back(w);
  }
  void finish() { pass = (violation_count == 0); }
  std::string summary() const;
};

// Cross-group pairs covered exactly lambda times, no within-group pair,
// block sizes in K.  A PBD is type 1^v; an STS(v) is a PBD with K={3}.
Report check_gdd(const DesignInstance& d, const std::set<int>& K,
                 const GroupTypeVector& type, int lambda = 1, int witness_cap = 10);

// Full classes partition the block set; each class partitions the points;
// a claimed KTS additionally needs (v-1)/2 classes.
Report check_resolution(const DesignInstance& d, int witness_cap = 10);

// HoleAligned classes: class tagged hole i partitions points minus group i,
// every block in exactly one class, hole i gets |group_i|/2 classes.
// Also certifies the underlying GDD (block size 3).
Report check_frame_resolution(const DesignInstance& d, int witness_cap = 10);

// The embedded block set is itself a valid design of the claimed sub-kind and
// the alignment constraint holds.
Report check_subdesign(const DesignInstance& host, const SubdesignEmbedding& emb,
                       int witness_cap = 10);

// Latin + pairwise orthogonality, squares over symbols 0..n-1.
Report check_mols(int n, const std::vector<std::vector<std::vector<int>>>& squares,
                  int witness_cap = 10);

// Pure arithmetic admissibility predicate.
struct Admissible {
  bool ok = false;
  std::string reason;
};
Admissible admissible_sts(long v);
Admissible admissible_kts(long v);
Admissible admissible_gdd3(long g, long u);
Admissible admissible_frame(long t, long u);
Admissible admissible_sts_in_sts(long u, long v);

// Full certification of a design and all its declared subdesigns, dispatching
// on d.kind.  Used as the mandatory post-condition of every construction.
Report certify(const DesignInstance& d, int witness_cap = 10);

}  // namespace kirkman
