// Recursive constructions: every operation consumes verified ingredients and
// emits a design that is re-verified from scratch before being returned.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kirkman/design.hpp"

namespace kirkman {

// Weight-w inflation by an RTD(3,w).  Frames (g;h)^u become (gw;hw)^u with
// the sub-GDD inflated alongside.  KTS inputs require w=3 and yield
// KTS(3v) with every declared sub-STS(u) tripled to STS(3u).
// For plain frames, with_level_sub=true additionally embeds the copy of the
// input frame on the first inflation copy as a sub-GDD (the (g;gw)^u shape).
DesignInstance inflate_by_rtd(const DesignInstance& x, int w,
                              bool with_level_sub = false);

// Replaces the lexicographically least suitable block of a KTS filler by
// infinity labels inf1..inf3 so fill_frame_holes can align it on the z new
// points; sub_meet is the number of sub-STS points the chosen block must
// contain (0, 1, or 3).  The sub point (if any) becomes inf1.
DesignInstance designate_z_block(const DesignInstance& filler, int sub_meet);

// z=1 variant: marks the lexicographically first point as inf1.
DesignInstance designate_z_point(const DesignInstance& filler);

// Relabels the listed points to inf1..infk (in order) and every other point
// to a fresh residue label; ids and block structure are untouched.
DesignInstance mark_infinities(const DesignInstance& d, const std::vector<int>& ids);

// Appends a PlainSubset embedding on `points` (blocks inferred) and
// re-certifies; used for the paper's intersection annotations.
DesignInstance annotate_sub(const DesignInstance& d, const std::vector<int>& points,
                            Kind sub_kind, const std::string& name);

// Fills hole i of the frame with fillers[i], a KTS(|group_i| + z) whose z
// infinity points carry the shared block Z.  The Z-classes merge into one
// class; filler sub-STS blocks assemble with the frame's sub-GDD into the
// output's sub-STS.
DesignInstance fill_frame_holes(const DesignInstance& frame, int z,
                                const std::vector<DesignInstance>& fillers);

// Frame (3;6)^n: adjoin 3 new points, fill holes with RTD(3,3) copies, append
// the groups of the resulting resolvable 3-GDD as one class.  Yields
// KTS(6n+3) with sub-STS(3n) and a sub-KTS(9) on Y_n and the new points.
DesignInstance mainframe_kts(const DesignInstance& frame);

// Prop 3.2: frame (gm;2gm)^n plus patch frame (g;2g)^{m+1} -> (g;2g)^{mn+1}.
DesignInstance add_group_fill(const DesignInstance& big, const DesignInstance& patch);

// Thm 3.3: replace every block of the PBD by a frame (g;2g)^{|block|} on
// block x (g unprimed + g primed) points; supplier maps block size -> frame.
DesignInstance pbd_expand_frames(const DesignInstance& pbd, int g,
                                 const std::function<DesignInstance(int)>& supplier);

// MK(2u+1) <-> frame (1;2)^u.
DesignInstance frame_to_mk(const DesignInstance& frame);
DesignInstance mk_to_frame(const DesignInstance& mk);

// Lemma 5.2 preface: delete a point of the sub-STS(v) of an MK(2v+1); the
// result is a frame 2^v whose sub-GDD 2^{(v-1)/2} groups are whole frame
// groups (WholeGroups alignment).
DesignInstance puncture_sub(const DesignInstance& mk);

// Lemma 5.2(a): w = 1 (mod 6), w >= 7 -> KTS(v(w+1)+1) with sub-STS and a
// sub-KTS(w+2) meeting it in one point.
DesignInstance singular_product_a(const DesignInstance& mk, int w);
// Lemma 5.2(b): w = 3 (mod 6), z in {3,9,15}, w >= z, w+z >= 18 ->
// KTS(v(w+z)+z) with sub-STS and a sub-KTS(w+2z) meeting it in a KTS(z).
DesignInstance singular_product_b(const DesignInstance& mk, int w, int z);

// Lemma 5.1 (KTS filler case): MK(2v+1) and a KTS(w) -> KTS(2vw+w) with
// sub-STS(vw).
DesignInstance flat_product(const DesignInstance& mk, int w, const DesignInstance& kts_w);

// Prop 5.6: swap the host's sub-KTS(w) blocks for another KTS(w)'s, class by
// class; the host inherits the replacement's subdesigns.
DesignInstance replace_subsystem(const DesignInstance& host,
                                 const DesignInstance& replacement);

// §6: the PBD(13,{3,4})-based frame m^13 with a WholeGroups sub-GDD m^3.
DesignInstance adhoc_frame_m13(int m);
// +1-point closure: KTS(13m+1) with sub-STS(3m+1) (m = 2 mod 6).
DesignInstance adhoc_kts_closure(const DesignInstance& frame13);

// Prop 5.3 shape: truncate two groups of a TD(9,n) to p and q points, weight
// every point by (6;12), replace blocks by frames from the supplier.
DesignInstance truncated_td_frame(int n, int p, int q,
                                  const std::function<DesignInstance(int)>& supplier);

}  // namespace kirkman
