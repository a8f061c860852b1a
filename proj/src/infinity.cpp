#include "bldg/infinity.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace bldg {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a < b) parent[b] = a;
    else if (b < a) parent[a] = b;
  }
};

std::string rayset_key(const RootSystem& rs, int elem, unsigned face) {
  std::ostringstream os;
  for (const auto& ray : rs.face_rays(elem, face)) {
    for (const auto& x : ray) os << x << ",";
    os << "/";
  }
  return os.str();
}

} // namespace

ChamberClasses chamber_classes(const BuildingInstance& b) {
  const RootSystem& rs = *b.rs;
  ChamberClasses cc;
  cc.charts = b.apartments;
  cc.group = rs.size();
  int n = cc.charts * cc.group;
  UnionFind uf(n);
  for (const auto& g : b.gluings) {
    if (region_empty(rs, g.region, b.lambda)) continue;
    for (int w = 0; w < rs.size(); ++w)
      if (cone_fits_directions(rs, g.region, w, 0))
        uf.unite(cc.node(g.i, w), cc.node(g.j, rs.mult[g.map.elem][w]));
  }
  cc.component.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    int root = uf.find(v);
    if (cc.component[root] < 0) {
      cc.component[root] = (int)cc.members.size();
      cc.members.emplace_back();
    }
    cc.component[v] = cc.component[root];
    cc.members[cc.component[v]].push_back({v / cc.group, v % cc.group});
  }
  return cc;
}

namespace {

// all chambers having the (elem, face) cone among their faces at slot `face`
std::vector<int> containing_chambers(const RootSystem& rs, int elem, unsigned face) {
  std::vector<int> out;
  std::string want = rayset_key(rs, elem, face);
  for (int w = 0; w < rs.size(); ++w)
    if (rayset_key(rs, w, face) == want) out.push_back(w);
  return out;
}

// (chart, corresponding-face rayset) pairs visible from a simplex through the
// corresponding-face construction; parallel simplices are the ones whose sets
// meet
std::set<std::pair<int, std::string>> face_reach(const BuildingInstance& b,
                                                 const ChamberClasses& cc, int chart, int elem,
                                                 unsigned face) {
  const RootSystem& rs = *b.rs;
  std::set<std::pair<int, std::string>> out;
  for (int w : containing_chambers(rs, elem, face)) {
    int cls = cc.class_of(chart, w);
    for (const auto& node : cc.members[cls])
      out.emplace(node.chart, rayset_key(rs, node.elem, face));
  }
  return out;
}

} // namespace

bool parallel(const BuildingInstance& b, int chart_s, const WeylSimplex& s, int chart_t,
              const WeylSimplex& t) {
  if (s.face != t.face)
    throw std::invalid_argument("parallel: simplices have different face types");
  ChamberClasses cc = chamber_classes(b);
  if (s.face == 0) return cc.class_of(chart_s, s.elem) == cc.class_of(chart_t, t.elem);
  auto rs_set = face_reach(b, cc, chart_s, s.elem, s.face);
  auto rt_set = face_reach(b, cc, chart_t, t.elem, t.face);
  for (const auto& e : rs_set)
    if (rt_set.count(e)) return true;
  return false;
}

ParallelTester make_parallel_tester(const BuildingInstance& b) {
  const RootSystem& rs = *b.rs;
  ParallelTester pt;
  pt.b = &b;
  pt.cc = chamber_classes(b);
  for (unsigned face = 0; face < (1u << rs.rank); ++face) {
    auto& per_face = pt.reach[face];
    per_face.assign(b.apartments, std::vector<std::set<std::pair<int, std::string>>>(rs.size()));
    for (int chart = 0; chart < b.apartments; ++chart)
      for (int w = 0; w < rs.size(); ++w) {
        if (rs.canon_elem[w][face] != w) continue;
        per_face[chart][w] = face_reach(b, pt.cc, chart, w, face);
      }
  }
  return pt;
}

bool ParallelTester::test(int chart_s, const WeylSimplex& s, int chart_t,
                          const WeylSimplex& t) const {
  if (s.face != t.face)
    throw std::invalid_argument("parallel: simplices have different face types");
  if (s.face == 0) return cc.class_of(chart_s, s.elem) == cc.class_of(chart_t, t.elem);
  const RootSystem& rs = *b->rs;
  const auto& rs_set = reach.at(s.face)[chart_s][rs.canon_elem[s.elem][s.face]];
  const auto& rt_set = reach.at(t.face)[chart_t][rs.canon_elem[t.elem][t.face]];
  for (const auto& e : rs_set)
    if (rt_set.count(e)) return true;
  return false;
}

BoundaryComplex boundary_complex(const BuildingInstance& b) {
  const RootSystem& rs = *b.rs;
  BoundaryComplex bc;
  bc.cc = chamber_classes(b);
  bc.building_check.name = "boundary-building";

  int nclasses = (int)bc.cc.members.size();
  for (int c = 0; c < nclasses; ++c) {
    const ChamberNode& rep = bc.cc.members[c].front();
    bc.chambers.push_back({c, rep.chart, rep.elem, 0});
  }

  // panel classes per wall slot, driven by the chamber components
  // (a transported chamber carries each of its faces with it)
  int W = rs.size();
  std::vector<std::vector<int>> panel_class_of_slot(rs.rank); // [slot][node]
  bc.chamber_panels.assign(nclasses, std::vector<int>(rs.rank, -1));
  for (int j = 0; j < rs.rank; ++j) {
    unsigned face = 1u << j;
    UnionFind uf(b.apartments * W);
    auto node = [&](int chart, int elem) { return chart * W + rs.canon_elem[elem][face]; };
    for (int c = 0; c < nclasses; ++c) {
      const auto& members = bc.cc.members[c];
      for (size_t m = 1; m < members.size(); ++m)
        uf.unite(node(members[0].chart, members[0].elem), node(members[m].chart, members[m].elem));
    }
    panel_class_of_slot[j].assign(b.apartments * W, -1);
    for (int chart = 0; chart < b.apartments; ++chart)
      for (int w = 0; w < W; ++w) {
        int v = node(chart, w);
        int root = uf.find(v);
        if (panel_class_of_slot[j][root] < 0) {
          panel_class_of_slot[j][root] = (int)bc.panels.size();
          bc.panels.push_back({(int)bc.panels.size(), root / W, rs.canon_elem[root % W][face], face});
        }
        panel_class_of_slot[j][v] = panel_class_of_slot[j][root];
      }
    for (int c = 0; c < nclasses; ++c) {
      const ChamberNode& rep = bc.cc.members[c].front();
      bc.chamber_panels[c][j] = panel_class_of_slot[j][node(rep.chart, rep.elem)];
    }
  }

  bc.adjacency.resize(nclasses);
  for (int c1 = 0; c1 < nclasses; ++c1)
    for (int c2 = c1 + 1; c2 < nclasses; ++c2) {
      bool shared = false;
      for (int p1 : bc.chamber_panels[c1])
        for (int p2 : bc.chamber_panels[c2]) shared = shared || p1 == p2;
      if (shared) {
        bc.adjacency[c1].push_back(c2);
        bc.adjacency[c2].push_back(c1);
      }
    }

  bc.dist.assign(nclasses, std::vector<int>(nclasses, -1));
  for (int s = 0; s < nclasses; ++s) {
    bc.dist[s][s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : bc.adjacency[u])
        if (bc.dist[s][v] < 0) {
          bc.dist[s][v] = bc.dist[s][u] + 1;
          queue.push_back(v);
        }
    }
  }

  for (int chart = 0; chart < b.apartments; ++chart) {
    std::vector<int> classes;
    for (int w = 0; w < W; ++w) classes.push_back(bc.cc.class_of(chart, w));
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    bc.apartments.push_back(std::move(classes));
  }

  // spherical-building verification
  CheckReport& rep = bc.building_check;
  for (int chart = 0; chart < b.apartments; ++chart) {
    ++rep.cases;
    if ((int)bc.apartments[chart].size() != W) {
      rep.fail_with({{"check", "apartment-chamber-count"}, {"chart", chart}});
      return bc;
    }
    for (int w1 = 0; w1 < W && rep.ok(); ++w1)
      for (int w2 = 0; w2 < W; ++w2) {
        int g1 = bc.cc.class_of(chart, w1), g2 = bc.cc.class_of(chart, w2);
        bool adjacent = std::count(bc.adjacency[g1].begin(), bc.adjacency[g1].end(), g2) > 0;
        if (adjacent != (gallery_distance(rs, w1, w2) == 1)) {
          rep.fail_with({{"check", "apartment-coxeter-adjacency"},
                         {"chart", chart},
                         {"w1", w1},
                         {"w2", w2}});
          break;
        }
      }
  }
  // the boundary apartments correspond one to one to the atlas apartments
  for (int c1 = 0; c1 < b.apartments && rep.ok(); ++c1)
    for (int c2 = c1 + 1; c2 < b.apartments; ++c2) {
      ++rep.cases;
      if (bc.apartments[c1] == bc.apartments[c2] && !apartments_equal(b, c1, c2)) {
        rep.fail_with({{"check", "apartment-correspondence-injective"}, {"charts", {c1, c2}}});
        return bc;
      }
    }
  // every two chambers lie in a common apartment
  for (int g1 = 0; g1 < nclasses && rep.ok(); ++g1)
    for (int g2 = g1 + 1; g2 < nclasses; ++g2) {
      ++rep.cases;
      bool common = false;
      for (int chart = 0; chart < b.apartments; ++chart) {
        const auto& ap = bc.apartments[chart];
        common = common || (std::binary_search(ap.begin(), ap.end(), g1) &&
                            std::binary_search(ap.begin(), ap.end(), g2));
      }
      if (!common) {
        rep.fail_with({{"check", "common-apartment"}, {"classes", {g1, g2}}});
        break;
      }
    }
  // apartments sharing a chamber are isomorphic via an isomorphism fixing the
  // intersection
  for (int c1 = 0; c1 < b.apartments && rep.ok(); ++c1)
    for (int c2 = c1 + 1; c2 < b.apartments; ++c2) {
      std::vector<int> shared;
      for (int g : bc.apartments[c1])
        if (std::binary_search(bc.apartments[c2].begin(), bc.apartments[c2].end(), g))
          shared.push_back(g);
      if (shared.empty()) continue;
      ++rep.cases;
      bool some_anchor_fixes = false;
      for (int anchor : shared) {
        int w1 = -1, w2 = -1;
        for (int w = 0; w < W; ++w) {
          if (bc.cc.class_of(c1, w) == anchor) w1 = w;
          if (bc.cc.class_of(c2, w) == anchor) w2 = w;
        }
        bool fixes = true;
        for (int g : shared) {
          int w = -1;
          for (int u = 0; u < W; ++u)
            if (bc.cc.class_of(c1, u) == g) w = u;
          int img = rs.mult[rs.mult[w2][rs.inv[w1]]][w];
          fixes = fixes && bc.cc.class_of(c2, img) == g;
        }
        some_anchor_fixes = some_anchor_fixes || fixes;
      }
      if (!some_anchor_fixes)
        rep.fail_with(
            {{"check", "apartment-isomorphism-fixing-intersection"}, {"charts", {c1, c2}}});
    }
  return bc;
}

std::optional<Germ> project_pi_x(const BuildingInstance& b, const BoundaryComplex& bc, int cls,
                                 const BPoint& x) {
  auto table = chart_table(b, x);
  std::optional<Germ> found;
  for (const auto& node : bc.cc.members[cls]) {
    auto it = table.find(node.chart);
    if (it == table.end()) continue;
    Germ g = canonical_germ(b, node.chart, it->second, node.elem, 0);
    if (!found)
      found = g;
    else if (!(*found == g))
      return std::nullopt; // conflicting x-based representatives: defect
  }
  return found;
}

std::optional<std::pair<int, WeylSimplex>> based_representative(const BuildingInstance& b,
                                                                const ChamberClasses& cc, int cls,
                                                                const BPoint& x) {
  auto table = chart_table(b, x);
  for (const auto& [chart, coords] : table)
    for (const auto& node : cc.members[cls])
      if (node.chart == chart)
        return std::make_pair(chart, WeylSimplex{coords, node.elem, 0});
  return std::nullopt;
}

std::optional<WeylSimplex> chamber_in_chart(const BuildingInstance& b, int chart,
                                            const WeylSimplex& s, int target) {
  if (chart == target) return s;
  const Gluing* g = b.gluing(chart, target);
  if (!g) return std::nullopt;
  if (!region_subset(*b.rs, simplex_region(*b.rs, s), g->region, b.lambda)) return std::nullopt;
  WeylSimplex out;
  out.base = apply(*b.rs, g->map, s.base);
  out.elem = b.rs->mult[g->map.elem][s.elem];
  out.face = s.face;
  return out;
}

std::optional<SundialResult> sundial(const BuildingInstance& b, const BoundaryComplex& bc,
                                     int apartment, int cls) {
  const RootSystem& rs = *b.rs;
  if (apartment < 0 || apartment >= b.apartments || cls < 0 || cls >= (int)bc.chambers.size())
    throw std::invalid_argument("sundial: no such apartment or chamber class");
  const auto& ap = bc.apartments[apartment];
  if (std::binary_search(ap.begin(), ap.end(), cls))
    throw std::invalid_argument("sundial: chamber lies in the boundary of the apartment");
  std::set<int> ap_panels;
  for (int g : ap)
    for (int p : bc.chamber_panels[g]) ap_panels.insert(p);
  bool has_panel = false;
  for (int p : bc.chamber_panels[cls]) has_panel = has_panel || ap_panels.count(p);
  if (!has_panel)
    throw std::invalid_argument("sundial: chamber shares no panel with the apartment boundary");

  SundialResult out;
  std::vector<int> opposite;
  for (int g : ap)
    if (bc.dist[cls][g] == rs.diameter) opposite.push_back(g);
  if (opposite.size() != 2) return std::nullopt;
  out.d1 = opposite[0];
  out.d2 = opposite[1];

  auto find_apartment = [&](int d) {
    for (int chart = 0; chart < b.apartments; ++chart) {
      const auto& cs = bc.apartments[chart];
      if (std::binary_search(cs.begin(), cs.end(), cls) &&
          std::binary_search(cs.begin(), cs.end(), d))
        return chart;
    }
    return -1;
  };
  out.a1 = find_apartment(out.d1);
  out.a2 = find_apartment(out.d2);
  if (out.a1 < 0 || out.a2 < 0) return std::nullopt; // likely missing exchange closure

  auto r1 = b.overlap_region(apartment, out.a1);
  auto r2 = b.overlap_region(apartment, out.a2);
  auto r12 = b.overlap_region(out.a1, out.a2);
  if (!r1 || !r2 || !r12) return std::nullopt;
  if (classify_region(rs, *r1, b.lambda).cls != RegionClass::half_apartment ||
      classify_region(rs, *r2, b.lambda).cls != RegionClass::half_apartment ||
      classify_region(rs, *r12, b.lambda).cls != RegionClass::half_apartment)
    return std::nullopt;
  out.triple_region = region_intersect(*r1, *r2);
  out.triple = classify_region(rs, out.triple_region, b.lambda);
  return out;
}

std::optional<int> lift_gallery(const BuildingInstance& b, const BoundaryComplex& bc,
                                const BPoint& x, const std::vector<int>& gallery) {
  if (gallery.empty()) throw std::invalid_argument("lift_gallery: empty gallery");
  for (int c : gallery)
    if (c < 0 || c >= (int)bc.chambers.size())
      throw std::invalid_argument("lift_gallery: no such chamber class");
  int k = (int)gallery.size() - 1;
  for (int i = 0; i < k; ++i)
    if (bc.dist[gallery[i]][gallery[i + 1]] != 1)
      throw std::invalid_argument("lift_gallery: consecutive chambers are not adjacent");
  if (bc.dist[gallery.front()][gallery.back()] != k)
    throw std::invalid_argument("lift_gallery: gallery is not minimal at infinity");

  // x-based representatives and minimality of the projected gallery
  ResidueComplex rc = residue(b, x);
  std::vector<std::pair<int, WeylSimplex>> reps;
  std::vector<Germ> projected;
  for (int c : gallery) {
    auto rep = based_representative(b, bc.cc, c, x);
    auto g = project_pi_x(b, bc, c, x);
    if (!rep || !g) return std::nullopt;
    reps.push_back(*rep);
    projected.push_back(*g);
  }
  for (int i = 0; i < k; ++i)
    if (delta_x(rc, projected[i], projected[i + 1]) != 1)
      throw std::invalid_argument("lift_gallery: projected gallery is not a gallery at x");
  if (k > 0 && delta_x(rc, projected.front(), projected.back()) != k)
    throw std::invalid_argument("lift_gallery: projected gallery is not minimal at x");

  for (int chart = 0; chart < b.apartments; ++chart) {
    bool all = true;
    for (const auto& [c, s] : reps) all = all && chamber_in_chart(b, c, s, chart).has_value();
    if (all) return chart;
  }
  return std::nullopt;
}

} // namespace bldg
