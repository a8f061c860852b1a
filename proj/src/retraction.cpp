#include "bldg/retraction.hpp"

#include <deque>

namespace bldg {

Retraction make_retraction(const BuildingInstance& b, int apartment, const Germ& center) {
  const RootSystem& rs = *b.rs;
  Retraction r;
  r.apartment = apartment;
  r.center = canonical_germ(b, center.chart, center.base, center.elem, center.face);
  GermReach reach = germ_reach(b, r.center.chart, r.center.base, r.center.elem, r.center.face);
  if (!reach.count(apartment))
    throw std::invalid_argument("retraction: the germ is not contained in the target apartment");

  // transitions into the target along germ-containing gluings
  r.to_target.emplace(apartment, affine_identity(rs, b.lambda));
  std::deque<int> queue{apartment};
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    for (const auto& g : b.gluings) {
      if (g.i != c || r.to_target.count(g.j) || !reach.count(g.j)) continue;
      const auto& [base, elem] = reach.at(c);
      if (!germ_in_region(rs, g.region, WeylSimplex{base, elem, r.center.face})) continue;
      r.to_target.emplace(g.j, compose(rs, r.to_target.at(c), inverse(rs, g.map)));
      queue.push_back(g.j);
    }
  }

  // deterministic evaluation order: breadth-first from the canonical chart
  std::deque<int> order{r.center.chart};
  std::vector<int> seen(b.apartments, 0);
  seen[r.center.chart] = 1;
  while (!order.empty()) {
    int c = order.front();
    order.pop_front();
    r.search_order.push_back(c);
    for (const auto& g : b.gluings)
      if (g.i == c && !seen[g.j] && r.to_target.count(g.j)) {
        const auto& [base, elem] = reach.at(c);
        if (germ_in_region(rs, g.region, WeylSimplex{base, elem, r.center.face})) {
          seen[g.j] = 1;
          order.push_back(g.j);
        }
      }
  }
  return r;
}

std::optional<BPoint> retract(const BuildingInstance& b, const Retraction& r, const BPoint& y) {
  auto table = chart_table(b, y);
  for (int g : r.search_order) {
    auto it = table.find(g);
    if (it == table.end()) continue;
    return BPoint{r.apartment, apply(*b.rs, r.to_target.at(g), it->second)};
  }
  return std::nullopt;
}

std::optional<Scalar> distance(const BuildingInstance& b, const BPoint& x, const BPoint& y,
                               Metric which) {
  auto tx = chart_table(b, x);
  auto ty = chart_table(b, y);
  for (const auto& [c, cx] : tx) {
    auto it = ty.find(c);
    if (it != ty.end()) return metric(*b.rs, cx, it->second, which);
  }
  return std::nullopt;
}

CheckReport check_well_defined(const BuildingInstance& b, const Retraction& r,
                               const std::vector<BPoint>& samples) {
  const RootSystem& rs = *b.rs;
  CheckReport rep;
  rep.name = "retraction-well-defined";
  for (const auto& y : samples) {
    auto table = chart_table(b, y);
    std::vector<std::pair<int, Coords>> evals;
    for (int g : r.search_order) {
      auto it = table.find(g);
      if (it != table.end()) evals.emplace_back(g, apply(rs, r.to_target.at(g), it->second));
    }
    for (size_t a = 0; a + 1 < evals.size(); ++a)
      for (size_t c = a + 1; c < evals.size(); ++c) {
        ++rep.cases;
        if (!coords_eq(evals[a].second, evals[c].second)) {
          rep.fail_with({{"op", "retract"},
                         {"y", bpoint_to_string(y)},
                         {"g1", evals[a].first},
                         {"g2", evals[c].first},
                         {"r1", coords_to_string(evals[a].second)},
                         {"r2", coords_to_string(evals[c].second)}});
          return rep;
        }
      }
  }
  // restriction to a germ-containing chart is an isometric bijection onto the
  // target: affine maps are bijections, distances checked on sample pairs
  for (int g : r.search_order) {
    for (size_t a = 0; a + 1 < samples.size(); ++a) {
      auto xa = transport(b, samples[a], g);
      auto xb = transport(b, samples[a + 1], g);
      if (!xa || !xb) continue;
      ++rep.cases;
      for (Metric m : {Metric::d1, Metric::dinf}) {
        Scalar before = metric(rs, *xa, *xb, m);
        Scalar after = metric(rs, apply(rs, r.to_target.at(g), *xa),
                              apply(rs, r.to_target.at(g), *xb), m);
        if (!eq(before, after)) {
          rep.fail_with({{"op", "retract-isometry"},
                         {"chart", g},
                         {"x", bpoint_to_string(samples[a])},
                         {"y", bpoint_to_string(samples[a + 1])}});
          return rep;
        }
      }
    }
  }
  return rep;
}

CheckReport check_nonexpansive(const BuildingInstance& b, const Retraction& r, Metric which,
                               const std::vector<std::pair<BPoint, BPoint>>& pairs) {
  CheckReport rep;
  rep.name = "retraction-nonexpansive";
  const BPoint center_base{r.center.chart, r.center.base};
  for (const auto& [x, y] : pairs) {
    ++rep.cases;
    auto rx = retract(b, r, x);
    auto ry = retract(b, r, y);
    if (!rx || !ry) {
      rep.fail_with({{"op", "retract"},
                     {"defect", "no chart contains the point and the germ"},
                     {"point", bpoint_to_string(!rx ? x : y)}});
      return rep;
    }
    auto before = distance(b, x, y, which);
    if (!before) {
      rep.fail_with({{"op", "distance"},
                     {"defect", "no common chart for the sampled pair"},
                     {"x", bpoint_to_string(x)},
                     {"y", bpoint_to_string(y)}});
      return rep;
    }
    Scalar after = metric(*b.rs, rx->local, ry->local, which);
    if (!le(after, *before)) {
      rep.fail_with({{"op", "retract"},
                     {"x", bpoint_to_string(x)},
                     {"y", bpoint_to_string(y)},
                     {"d_before", to_string(*before)},
                     {"d_after", to_string(after)}});
      return rep;
    }
    // fixed fibre at the center's base point
    for (const BPoint* p : {&x, &y}) {
      auto rp = p == &x ? rx : ry;
      if (same_point(b, BPoint{r.apartment, rp->local}, center_base) &&
          !same_point(b, *p, center_base)) {
        rep.fail_with({{"op", "retract"},
                       {"defect", "fixed-fibre violation at the center"},
                       {"y", bpoint_to_string(*p)}});
        return rep;
      }
    }
  }
  return rep;
}

} // namespace bldg
