#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpd/geometry.hpp"

namespace tpd {

// A straight (two-pin) piece of a feature.  vertical: long axis is y.
struct TwoPinRun {
  Rect rect;
  bool vertical = false;
};

// Splits a rectilinear feature into maximal straight runs.  Runs touch each
// other at junctions; junctions never carry stitches.
std::vector<TwoPinRun> decompose_multipin(const Feature& f);

struct ProjSegment {
  Coord lo = 0, hi = 0;  // [lo,hi] on the run axis, hi >= lo
  int label = 0;         // number of distinct neighbors projecting here
};

struct ProjectionSequence {
  bool vertical = false;
  Coord lo = 0, hi = 0;                // run extent on the axis
  std::vector<ProjSegment> segments;   // contiguous; first and last label 0
  std::string label_string() const;    // e.g. "01212101010"
};

// Neighbor geometry expanded by dis_m and intersected with the run determines
// per-point coverage counts; one neighbor counts at most once per point.
ProjectionSequence compute_projection_sequence(
    const TwoPinRun& run, const std::vector<const Feature*>& neighbors,
    Coord dis_m);

// Convenience for straight features; throws if the feature is multi-pin.
ProjectionSequence compute_projection_sequence(
    const Feature& f, const std::vector<const Feature*>& neighbors, Coord dis_m);

enum class StitchKind { dpl, lost };

struct StitchCandidate {
  std::uint32_t feature = 0;  // index into LayoutSpec::features
  bool vertical = false;
  Coord pos = 0;              // cut coordinate, strictly inside the run
  Rect run{};                 // run being cut
  StitchKind kind = StitchKind::dpl;
};

// Candidate rules, in order:
//  - one DPL candidate at the midpoint of every interior zero segment;
//  - drop the first/last of those when the sequence starts/ends with 01010;
//  - per bunch (maximal non-zero run of >= 3 segments), one lost candidate at
//    the midpoint of the first interior dip x > y < z.
std::vector<StitchCandidate> generate_stitch_candidates(
    const ProjectionSequence& ps, const TwoPinRun& run);

// All candidates of one feature across its runs, capped at max_per_feature
// (first by run order, then by position).
std::vector<StitchCandidate> feature_stitch_candidates(
    const Feature& f, std::uint32_t feature_idx,
    const std::vector<const Feature*>& neighbors, Coord dis_m,
    int max_per_feature);

}  // namespace tpd
