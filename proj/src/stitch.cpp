#include "tpd/stitch.hpp"

#include <algorithm>

#include "tpd/errors.hpp"

namespace tpd {

namespace {

bool try_merge(const Rect& a, const Rect& b, Rect& out) {
  // Containment.
  if (a.x0 <= b.x0 && a.y0 <= b.y0 && a.x1 >= b.x1 && a.y1 >= b.y1) {
    out = a;
    return true;
  }
  if (b.x0 <= a.x0 && b.y0 <= a.y0 && b.x1 >= a.x1 && b.y1 >= a.y1) {
    out = b;
    return true;
  }
  // Collinear with touching/overlapping extents: union is a rect.
  if (a.y0 == b.y0 && a.y1 == b.y1 && a.x0 <= b.x1 && b.x0 <= a.x1) {
    out = Rect{std::min(a.x0, b.x0), a.y0, std::max(a.x1, b.x1), a.y1};
    return true;
  }
  if (a.x0 == b.x0 && a.x1 == b.x1 && a.y0 <= b.y1 && b.y0 <= a.y1) {
    out = Rect{a.x0, std::min(a.y0, b.y0), a.x1, std::max(a.y1, b.y1)};
    return true;
  }
  return false;
}

}  // namespace

std::vector<TwoPinRun> decompose_multipin(const Feature& f) {
  std::vector<Rect> runs = f.rects;
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < runs.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < runs.size() && !merged; ++j) {
        Rect m;
        if (try_merge(runs[i], runs[j], m)) {
          runs[i] = m;
          runs.erase(runs.begin() + std::ptrdiff_t(j));
          merged = true;
        }
      }
  }
  std::sort(runs.begin(), runs.end(), [](const Rect& a, const Rect& b) {
    return std::tie(a.y0, a.x0, a.y1, a.x1) < std::tie(b.y0, b.x0, b.y1, b.x1);
  });
  std::vector<TwoPinRun> out;
  out.reserve(runs.size());
  for (const Rect& r : runs) out.push_back({r, r.height() >= r.width()});
  return out;
}

std::string ProjectionSequence::label_string() const {
  std::string s;
  for (const ProjSegment& seg : segments) s += std::to_string(seg.label);
  return s;
}

ProjectionSequence compute_projection_sequence(
    const TwoPinRun& run, const std::vector<const Feature*>& neighbors,
    Coord dis_m) {
  ProjectionSequence ps;
  ps.vertical = run.vertical;
  ps.lo = run.vertical ? run.rect.y0 : run.rect.x0;
  ps.hi = run.vertical ? run.rect.y1 : run.rect.x1;

  // Per-neighbor union of axis intervals, then a coverage sweep.  Each
  // neighbor contributes at most one count per point.
  std::vector<std::pair<Coord, int>> events;  // (coord, +1/-1)
  for (const Feature* nb : neighbors) {
    std::vector<std::pair<Coord, Coord>> ivs;
    for (const Rect& nr : nb->rects) {
      Rect e{nr.x0 - dis_m, nr.y0 - dis_m, nr.x1 + dis_m, nr.y1 + dis_m};
      if (e.x0 >= run.rect.x1 || e.x1 <= run.rect.x0 || e.y0 >= run.rect.y1 ||
          e.y1 <= run.rect.y0)
        continue;
      Coord lo = run.vertical ? std::max(e.y0, ps.lo) : std::max(e.x0, ps.lo);
      Coord hi = run.vertical ? std::min(e.y1, ps.hi) : std::min(e.x1, ps.hi);
      if (lo < hi) ivs.emplace_back(lo, hi);
    }
    if (ivs.empty()) continue;
    std::sort(ivs.begin(), ivs.end());
    Coord lo = ivs[0].first, hi = ivs[0].second;
    for (auto [a, b] : ivs) {
      if (a > hi) {
        events.emplace_back(lo, +1);
        events.emplace_back(hi, -1);
        lo = a;
        hi = b;
      } else {
        hi = std::max(hi, b);
      }
    }
    events.emplace_back(lo, +1);
    events.emplace_back(hi, -1);
  }

  std::sort(events.begin(), events.end());
  std::vector<ProjSegment> segs;
  Coord cur = ps.lo;
  int depth = 0;
  std::size_t k = 0;
  while (k < events.size()) {
    Coord x = events[k].first;
    if (x > cur) segs.push_back({cur, x, depth});
    while (k < events.size() && events[k].first == x) depth += events[k++].second;
    cur = std::max(cur, x);
  }
  if (cur < ps.hi) segs.push_back({cur, ps.hi, 0});
  if (segs.empty()) segs.push_back({ps.lo, ps.hi, 0});

  // Merge equal-label neighbors, then force zero-label terminals.
  std::vector<ProjSegment> merged;
  for (const ProjSegment& s : segs) {
    if (!merged.empty() && merged.back().label == s.label)
      merged.back().hi = s.hi;
    else
      merged.push_back(s);
  }
  if (merged.front().label != 0)
    merged.insert(merged.begin(), ProjSegment{ps.lo, ps.lo, 0});
  if (merged.back().label != 0) merged.push_back(ProjSegment{ps.hi, ps.hi, 0});
  ps.segments = std::move(merged);
  return ps;
}

ProjectionSequence compute_projection_sequence(
    const Feature& f, const std::vector<const Feature*>& neighbors,
    Coord dis_m) {
  auto runs = decompose_multipin(f);
  if (runs.size() != 1)
    throw ValidationError("feature '" + f.id +
                          "' is multi-pin; decompose it into runs first");
  return compute_projection_sequence(runs[0], neighbors, dis_m);
}

std::vector<StitchCandidate> generate_stitch_candidates(
    const ProjectionSequence& ps, const TwoPinRun& run) {
  const auto& seg = ps.segments;
  const std::size_t m = seg.size();

  auto matches_01010 = [&](std::size_t at) {
    if (m < at + 5) return false;
    static const int pat[5] = {0, 1, 0, 1, 0};
    for (std::size_t k = 0; k < 5; ++k)
      if (seg[at + k].label != pat[k]) return false;
    return true;
  };

  std::vector<std::size_t> dpl;  // interior zero segments
  for (std::size_t i = 1; i + 1 < m; ++i)
    if (seg[i].label == 0) dpl.push_back(i);

  // A DPL stitch next to a 01010 head/tail only re-creates what a third mask
  // already solves; drop it.
  if (!dpl.empty() && matches_01010(0)) dpl.erase(dpl.begin());
  if (!dpl.empty() && m >= 5 && matches_01010(m - 5)) dpl.pop_back();

  std::vector<StitchCandidate> out;
  auto emit = [&](std::size_t i, StitchKind kind) {
    Coord pos = (seg[i].lo + seg[i].hi) / 2;
    if (pos <= ps.lo || pos >= ps.hi) return;
    StitchCandidate c;
    c.vertical = ps.vertical;
    c.pos = pos;
    c.run = run.rect;
    c.kind = kind;
    out.push_back(c);
  };
  for (std::size_t i : dpl) emit(i, StitchKind::dpl);

  // Lost stitches: inside every bunch of >= 3 non-zero segments, the first
  // dip x > y < z gets one candidate; never more than one per bunch.
  std::size_t i = 0;
  while (i < m) {
    if (seg[i].label == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < m && seg[j].label != 0) ++j;
    if (j - i >= 3) {
      for (std::size_t k = i; k + 2 < j; ++k)
        if (seg[k].label > seg[k + 1].label &&
            seg[k + 2].label > seg[k + 1].label) {
          emit(k + 1, StitchKind::lost);
          break;
        }
    }
    i = j;
  }

  std::sort(out.begin(), out.end(),
            [](const StitchCandidate& a, const StitchCandidate& b) {
              return a.pos < b.pos;
            });
  return out;
}

std::vector<StitchCandidate> feature_stitch_candidates(
    const Feature& f, std::uint32_t feature_idx,
    const std::vector<const Feature*>& neighbors, Coord dis_m,
    int max_per_feature) {
  std::vector<StitchCandidate> all;
  for (const TwoPinRun& run : decompose_multipin(f)) {
    ProjectionSequence ps = compute_projection_sequence(run, neighbors, dis_m);
    for (StitchCandidate c : generate_stitch_candidates(ps, run)) {
      c.feature = feature_idx;
      all.push_back(c);
    }
  }
  if (max_per_feature >= 0 && all.size() > std::size_t(max_per_feature))
    all.resize(std::size_t(max_per_feature));
  return all;
}

}  // namespace tpd
