#pragma once

#include "bldg/infinity.hpp"

namespace bldg {

/// Retraction onto a chart centered at a chamber germ contained in it.
/// Evaluation picks a chart g containing both the argument and the germ
/// (breadth-first from the germ's canonical chart, so witnesses are
/// deterministic) and applies the transition into the target chart.
struct Retraction {
  int apartment = 0;
  Germ center;
  std::vector<int> search_order;      // charts containing the germ
  std::map<int, AffineMap> to_target; // chart -> transition into `apartment`
};

/// throws std::invalid_argument when the germ is not contained in the chart
Retraction make_retraction(const BuildingInstance& b, int apartment, const Germ& center);

/// result lies in the target chart; nullopt when no chart contains both the
/// point and the germ (an (A3'')-family defect on a supposedly valid instance)
std::optional<BPoint> retract(const BuildingInstance& b, const Retraction& r, const BPoint& y);

/// distance between two points of the glued space, evaluated in the first
/// common chart; nullopt when no chart contains both
std::optional<Scalar> distance(const BuildingInstance& b, const BPoint& x, const BPoint& y,
                               Metric which);

/// every sampled point, every pair of admissible charts: the two evaluations
/// coincide; restrictions to germ-containing charts are isometries onto the
/// target (checked on the sampled pairs inside such charts)
CheckReport check_well_defined(const BuildingInstance& b, const Retraction& r,
                               const std::vector<BPoint>& samples);

/// d(r x, r y) <= d(x, y) on the sampled pairs, plus the fixed-fibre
/// condition: no sampled point other than the center's base retracts onto it
CheckReport check_nonexpansive(const BuildingInstance& b, const Retraction& r, Metric which,
                               const std::vector<std::pair<BPoint, BPoint>>& pairs);

} // namespace bldg
