#include "bldg/atlas.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace bldg {

const char* tmode_name(TMode t) { return t == TMode::full ? "full" : "lattice"; }

TMode tmode_from_name(const std::string& s) {
  if (s == "full") return TMode::full;
  if (s == "lattice") return TMode::lattice;
  throw parse_error("unknown t_mode: " + s);
}

const Gluing* BuildingInstance::gluing(int i, int j) const {
  for (const auto& g : gluings)
    if (g.i == i && g.j == j) return &g;
  return nullptr;
}

std::optional<ConvexRegion> BuildingInstance::overlap_region(int i, int j) const {
  if (i == j) return ConvexRegion::all();
  const Gluing* g = gluing(i, j);
  if (!g) return std::nullopt;
  return g->region;
}

std::optional<AffineMap> BuildingInstance::overlap_map(int i, int j) const {
  if (i == j) return affine_identity(*rs, lambda);
  const Gluing* g = gluing(i, j);
  if (!g) return std::nullopt;
  return g->map;
}

void add_gluing(BuildingInstance& b, Gluing g) {
  Gluing back;
  back.i = g.j;
  back.j = g.i;
  back.region = canonicalize(*b.rs, region_pushforward(*b.rs, g.region, g.map), b.lambda);
  back.map = inverse(*b.rs, g.map);
  g.region = canonicalize(*b.rs, g.region, b.lambda);
  b.gluings.push_back(std::move(g));
  b.gluings.push_back(std::move(back));
}

void sort_gluings(BuildingInstance& b) {
  std::stable_sort(b.gluings.begin(), b.gluings.end(), [](const Gluing& a, const Gluing& c) {
    return a.i != c.i ? a.i < c.i : a.j < c.j;
  });
}

std::string bpoint_to_string(const BPoint& p) {
  return std::to_string(p.chart) + ":" + coords_to_string(p.local);
}

BPoint parse_bpoint(const BuildingInstance& b, const std::string& text) {
  size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw parse_error("point must look like chart:(c1,...,cn): '" + text + "'");
  BPoint p;
  try {
    p.chart = std::stoi(text.substr(0, colon));
  } catch (const std::exception&) {
    throw parse_error("bad chart index in point: '" + text + "'");
  }
  if (p.chart < 0 || p.chart >= b.apartments)
    throw parse_error("chart index out of range in point: '" + text + "'");
  p.local = parse_coords(b.lambda, b.rs->rank, text.substr(colon + 1));
  return p;
}

std::map<int, Coords> chart_table(const BuildingInstance& b, const BPoint& p) {
  std::map<int, Coords> seen;
  seen.emplace(p.chart, p.local);
  std::deque<int> queue{p.chart};
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    const Coords& x = seen.at(c);
    for (const auto& g : b.gluings) {
      if (g.i != c || seen.count(g.j)) continue;
      if (region_contains(*b.rs, g.region, x)) {
        seen.emplace(g.j, apply(*b.rs, g.map, x));
        queue.push_back(g.j);
      }
    }
  }
  return seen;
}

std::optional<Coords> transport(const BuildingInstance& b, const BPoint& p, int target) {
  auto table = chart_table(b, p);
  auto it = table.find(target);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool same_point(const BuildingInstance& b, const BPoint& p, const BPoint& q) {
  if (p.chart == q.chart && coords_eq(p.local, q.local)) return true;
  auto t = transport(b, p, q.chart);
  return t && coords_eq(*t, q.local);
}

BPoint canonical_point(const BuildingInstance& b, const BPoint& p) {
  auto table = chart_table(b, p);
  auto it = table.begin(); // lowest chart index
  return BPoint{it->first, it->second};
}

CheckReport validate_atlas(const BuildingInstance& b) {
  CheckReport rep;
  rep.name = "validate";
  const RootSystem& rs = *b.rs;

  for (const auto& g : b.gluings) {
    ++rep.cases;
    json id = {{"i", g.i}, {"j", g.j}};
    if (g.i < 0 || g.i >= b.apartments || g.j < 0 || g.j >= b.apartments || g.i == g.j) {
      rep.fail_with({{"check", "indices"}, {"gluing", id}});
      return rep;
    }
    if (region_empty(rs, g.region, b.lambda)) {
      rep.fail_with({{"check", "region-nonempty"}, {"gluing", id}});
      return rep;
    }
    if (b.tmode == TMode::lattice && !translation_in_lattice(g.map)) {
      rep.fail_with({{"check", "map-in-translation-group"},
                     {"gluing", id},
                     {"translation", coords_to_string(g.map.translation)}});
      return rep;
    }
    const Gluing* back = b.gluing(g.j, g.i);
    if (!back) {
      rep.fail_with({{"check", "symmetric-entry"}, {"gluing", id}});
      return rep;
    }
    ConvexRegion image = region_pushforward(rs, g.region, g.map);
    if (!region_equal(rs, back->region, image, b.lambda)) {
      rep.fail_with({{"check", "symmetric-region"}, {"gluing", id}});
      return rep;
    }
    if (!maps_agree_on(rs, back->region, back->map, inverse(rs, g.map), b.lambda)) {
      rep.fail_with({{"check", "symmetric-map"}, {"gluing", id}});
      return rep;
    }
  }
  // one gluing per ordered pair
  for (size_t a = 0; a + 1 < b.gluings.size(); ++a)
    for (size_t c = a + 1; c < b.gluings.size(); ++c)
      if (b.gluings[a].i == b.gluings[c].i && b.gluings[a].j == b.gluings[c].j) {
        rep.fail_with({{"check", "single-gluing-per-pair"},
                       {"i", b.gluings[a].i},
                       {"j", b.gluings[a].j}});
        return rep;
      }

  // cocycle: transition maps compose consistently on every triple overlap
  for (int i = 0; i < b.apartments; ++i)
    for (int j = 0; j < b.apartments; ++j)
      for (int k = 0; k < b.apartments; ++k) {
        if (i == j || j == k || i == k) continue;
        const Gluing* gij = b.gluing(i, j);
        const Gluing* gjk = b.gluing(j, k);
        const Gluing* gik = b.gluing(i, k);
        if (!gij || !gjk || !gik) continue;
        ++rep.cases;
        ConvexRegion triple = region_intersect(region_intersect(gij->region, gik->region),
                                               region_pullback(rs, gjk->region, gij->map));
        if (!maps_agree_on(rs, triple, gik->map, compose(rs, gjk->map, gij->map), b.lambda)) {
          auto w = pick_point(rs, triple, b.lambda);
          rep.fail_with({{"check", "cocycle"},
                         {"triple", {i, j, k}},
                         {"point", w ? coords_to_string(*w) : "?"}});
          return rep;
        }
      }
  rep.notes.push_back("regions closed and convex by half-space representation");
  return rep;
}

bool apartments_equal(const BuildingInstance& b, int i, int j) {
  if (i == j) return true;
  auto r = b.overlap_region(i, j);
  return r && region_is_all(*b.rs, *r, b.lambda);
}

// ---------------------------------------------------------------------------
// exchange closure

namespace {

struct GluingPiece {
  ConvexRegion region;
  AffineMap map;
  bool empty = true;
};

// one convex gluing covering both identification pieces, if that is possible
std::optional<std::pair<ConvexRegion, AffineMap>> merge_pieces(const RootSystem& rs,
                                                               LambdaKind kind,
                                                               const GluingPiece& a,
                                                               const GluingPiece& b) {
  if (a.empty && b.empty) return std::nullopt;
  if (a.empty) return std::make_pair(b.region, b.map);
  if (b.empty) return std::make_pair(a.region, a.map);
  if (region_subset(rs, a.region, b.region, kind) && maps_agree_on(rs, a.region, a.map, b.map, kind))
    return std::make_pair(b.region, b.map);
  if (region_subset(rs, b.region, a.region, kind) && maps_agree_on(rs, b.region, a.map, b.map, kind))
    return std::make_pair(a.region, a.map);
  throw ec_error("induced overlap is not a single convex gluing");
}

GluingPiece make_piece(const RootSystem& rs, LambdaKind kind, ConvexRegion region, AffineMap map) {
  GluingPiece p;
  p.empty = region_empty(rs, region, kind);
  if (!p.empty) {
    p.region = canonicalize(rs, region, kind);
    p.map = std::move(map);
  }
  return p;
}

} // namespace

BuildingInstance ec_closure(const BuildingInstance& input) {
  BuildingInstance b = input;
  const RootSystem& rs = *b.rs;
  const LambdaKind kind = b.lambda;
  const int cap = 4096;

  bool grew = true;
  int rounds = 0;
  while (grew) {
    if (++rounds > 64) throw ec_error("exchange closure did not stabilize within 64 rounds");
    grew = false;
    // snapshot: candidate pairs present at the start of the round
    std::vector<std::pair<int, int>> pairs;
    for (const auto& g : b.gluings)
      if (g.i < g.j) pairs.emplace_back(g.i, g.j);
    for (auto [i, j] : pairs) {
      const Gluing* g = b.gluing(i, j);
      if (!g) continue;
      Classification cls = classify_region(rs, g->region, kind);
      if (cls.cls != RegionClass::half_apartment) continue;

      // template chart: chart-i coordinates; the M side {alpha sense k} is
      // re-read through chart j after reflecting across the wall
      Sense s = cls.sense;
      Sense anti = s == Sense::geq ? Sense::leq : Sense::geq;
      ConvexRegion s_half = ConvexRegion::half(cls.root, s, cls.k);
      ConvexRegion anti_half = ConvexRegion::half(cls.root, anti, cls.k);
      AffineMap rho = affine_reflection(rs, cls.root, cls.k);
      AffineMap via_j = compose(rs, g->map, rho); // N coords -> chart-j coords, M side

      // piece l of the would-be overlap of the new chart with chart l
      auto piece1 = [&](int l) {
        auto r = b.overlap_region(i, l);
        if (!r) return GluingPiece{};
        return make_piece(rs, kind, region_intersect(anti_half, *r), *b.overlap_map(i, l));
      };
      auto piece2 = [&](int l) {
        auto r = b.overlap_region(j, l);
        if (!r) return GluingPiece{};
        return make_piece(rs, kind,
                          region_intersect(s_half, region_pullback(rs, *r, via_j)),
                          compose(rs, *b.overlap_map(j, l), via_j));
      };

      // already present? (equal apartment = overlap would be everything)
      bool exists = false;
      for (int l = 0; l < b.apartments && !exists; ++l) {
        GluingPiece p1 = piece1(l), p2 = piece2(l);
        exists = !p1.empty && !p2.empty &&
                 region_subset(rs, anti_half, p1.region, kind) &&
                 region_subset(rs, s_half, p2.region, kind);
      }
      if (exists) continue;

      if (b.apartments >= cap) throw ec_error("exchange closure exceeded the apartment cap");
      int n = b.apartments++;
      for (int l = 0; l < n; ++l) {
        auto merged = merge_pieces(rs, kind, piece1(l), piece2(l));
        if (!merged) continue;
        Gluing ng;
        ng.i = n;
        ng.j = l;
        ng.region = std::move(merged->first);
        ng.map = std::move(merged->second);
        add_gluing(b, std::move(ng));
      }
      sort_gluings(b);
      grew = true;
    }
  }
  b.provenance += b.provenance.empty() ? "ec_closure" : "; ec_closure";
  return b;
}

// ---------------------------------------------------------------------------
// instance factory

BuildingInstance generate_thin(const std::string& rs_name, LambdaKind lambda, TMode tmode) {
  BuildingInstance b;
  b.rs = &root_system(rs_name);
  b.lambda = lambda;
  b.tmode = tmode;
  b.apartments = 1;
  b.name = "thin-" + rs_name + "-" + lambda_name(lambda);
  b.provenance = "thin(" + rs_name + "," + lambda_name(lambda) + ")";
  return b;
}

BuildingInstance generate_star(const std::string& rs_name, LambdaKind lambda, int wall_root,
                               int branches, TMode tmode, bool seed_only) {
  const RootSystem& rs = root_system(rs_name);
  if (wall_root < 0 || wall_root >= rs.positive_count)
    throw parse_error("wall root index out of range");
  if (branches < 2) throw parse_error("star needs at least 2 branches");

  BuildingInstance b;
  b.rs = &rs;
  b.lambda = lambda;
  b.tmode = tmode;

  // apartments are pairs (p, q) of halves, p < q; half p is the side
  // {alpha >= 0} of the chart, half q the side {alpha <= 0}
  std::vector<std::pair<int, int>> pairs;
  if (seed_only) {
    for (int q = 1; q < branches; ++q) pairs.emplace_back(0, q);
  } else {
    for (int p = 0; p < branches; ++p)
      for (int q = p + 1; q < branches; ++q) pairs.emplace_back(p, q);
  }
  b.apartments = (int)pairs.size();

  Scalar zero = Scalar::zero(lambda);
  ConvexRegion pos = ConvexRegion::half(wall_root, Sense::geq, zero);
  ConvexRegion neg = ConvexRegion::half(wall_root, Sense::leq, zero);
  ConvexRegion wall = ConvexRegion::wall(wall_root, zero);
  AffineMap id = affine_identity(rs, lambda);
  AffineMap refl = affine_reflection(rs, wall_root, zero);

  for (int a = 0; a < (int)pairs.size(); ++a)
    for (int c = a + 1; c < (int)pairs.size(); ++c) {
      auto [p1, q1] = pairs[a];
      auto [p2, q2] = pairs[c];
      Gluing g;
      g.i = a;
      g.j = c;
      if (p1 == p2) { // shared positive halves
        g.region = pos;
        g.map = id;
      } else if (q1 == q2) { // shared negative halves
        g.region = neg;
        g.map = id;
      } else if (q1 == p2) { // negative side of a is positive side of c
        g.region = neg;
        g.map = refl;
      } else if (p1 == q2) { // positive side of a is negative side of c
        g.region = pos;
        g.map = refl;
      } else { // only the wall is shared
        g.region = wall;
        g.map = id;
      }
      add_gluing(b, std::move(g));
    }
  sort_gluings(b);

  std::ostringstream name;
  name << "star" << branches << "-" << rs_name << "-" << lambda_name(lambda);
  if (seed_only) name << "-seed";
  b.name = name.str();
  std::ostringstream prov;
  prov << (seed_only ? "star-seed(" : "star(") << rs_name << "," << lambda_name(lambda)
       << ",wall=" << wall_root + 1 << ",branches=" << branches << ")";
  b.provenance = prov.str();
  return b;
}

BuildingInstance generate(const std::string& kind, const std::string& rs_name, LambdaKind lambda,
                          int wall_root, int branches, TMode tmode) {
  if (kind == "thin") return generate_thin(rs_name, lambda, tmode);
  if (kind == "star") return generate_star(rs_name, lambda, wall_root, branches, tmode, false);
  if (kind == "star-seed") return generate_star(rs_name, lambda, wall_root, branches, tmode, true);
  throw parse_error("unsupported generator kind: " + kind);
}

} // namespace bldg
