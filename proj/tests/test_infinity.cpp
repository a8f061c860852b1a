#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bldg/infinity.hpp"

#include <set>

using namespace bldg;

namespace {

BuildingInstance star3() { return generate_star("A1", LambdaKind::integers, 0, 3, TMode::full); }
BuildingInstance sundial3() { return generate_star("A2", LambdaKind::rationals, 0, 3, TMode::full); }

Coords c1(const BuildingInstance& b, Rational v) { return {Scalar::of(b.lambda, v)}; }

} // namespace

TEST_CASE("parallel chambers on STAR3") {
  BuildingInstance b = star3();
  WeylSimplex e0_in_A01{c1(b, 0), 0, 0};
  CHECK(parallel(b, 0, e0_in_A01, 0, e0_in_A01));
  // branch 0 rays seen from A01 and A02 are equal point sets eventually
  WeylSimplex e0_in_A02{c1(b, 3), 0, 0};
  CHECK(parallel(b, 0, e0_in_A01, 1, e0_in_A02));
  // rays toward different ends are not parallel
  WeylSimplex e1_in_A01{c1(b, 0), 1, 0};
  WeylSimplex e2_in_A02{c1(b, 0), 1, 0};
  CHECK_FALSE(parallel(b, 0, e1_in_A01, 1, e2_in_A02));
  // base points do not matter
  CHECK(parallel(b, 0, WeylSimplex{c1(b, -7), 0, 0}, 1, WeylSimplex{c1(b, 5), 0, 0}));
}

TEST_CASE("face-type mismatch is a typed error") {
  BuildingInstance b = generate_thin("A2", LambdaKind::rationals, TMode::full);
  WeylSimplex f1{coords_zero(b.lambda, 2), 0, 1u};
  WeylSimplex f2{coords_zero(b.lambda, 2), 0, 2u};
  CHECK_THROWS_AS((void)parallel(b, 0, f1, 0, f2), std::invalid_argument);
}

TEST_CASE("sub-Weyl chambers are translates of their chamber") {
  BuildingInstance b = sundial3();
  const RootSystem& rs = *b.rs;
  // same direction data = translate; the deeper simplex is a subset
  for (int w = 0; w < rs.size(); ++w) {
    WeylSimplex s{coords_zero(b.lambda, 2), w, 0};
    Coords deeper = coords_add(s.base, coords_of(b.lambda, rs.rays[w][0]));
    WeylSimplex sub{deeper, w, 0};
    CHECK(region_subset(rs, simplex_region(rs, sub), simplex_region(rs, s), b.lambda));
    CHECK(parallel(b, 0, s, 0, sub));
  }
}

TEST_CASE("boundary of a thin instance is one Coxeter complex") {
  for (const char* name : {"A1", "A2", "B2"}) {
    BuildingInstance b = generate_thin(name, LambdaKind::rationals, TMode::full);
    BoundaryComplex bc = boundary_complex(b);
    CHECK((int)bc.chambers.size() == b.rs->size());
    CHECK(bc.apartments.size() == 1);
    CHECK(bc.building_check.ok());
    // gallery diameter at infinity matches the Coxeter diameter
    int maxd = 0;
    for (auto& row : bc.dist)
      for (int d : row) maxd = std::max(maxd, d);
    CHECK(maxd == b.rs->diameter);
  }
}

TEST_CASE("boundary of stars: chamber and apartment counts") {
  for (int k : {3, 4, 5}) {
    BuildingInstance b = generate_star("A1", LambdaKind::integers, 0, k, TMode::full);
    BoundaryComplex bc = boundary_complex(b);
    CHECK((int)bc.chambers.size() == k);
    CHECK((int)bc.apartments.size() == k * (k - 1) / 2);
    CHECK(bc.building_check.ok());
    CHECK(bc.panels.size() == 1); // rank 1: a single basepoint class
    // apartments are exactly the unordered pairs of ends
    std::set<std::vector<int>> seen;
    for (auto& ap : bc.apartments) {
      CHECK(ap.size() == 2);
      seen.insert(ap);
    }
    CHECK((int)seen.size() == k * (k - 1) / 2);
  }
  BuildingInstance s = sundial3();
  BoundaryComplex bc = boundary_complex(s);
  CHECK(bc.chambers.size() == 9); // three halves, three cone classes each
  CHECK(bc.apartments.size() == 3);
  CHECK(bc.building_check.ok());
  BuildingInstance lx = generate_star("A1", LambdaKind::lex_pair, 0, 3, TMode::full);
  BoundaryComplex bclx = boundary_complex(lx);
  CHECK(bclx.chambers.size() == 3);
  CHECK(bclx.building_check.ok());
}

TEST_CASE("parallelism is an equivalence, exhaustively over simplex nodes") {
  for (auto make : {+[] { return star3(); }, +[] { return sundial3(); },
                    +[] { return generate_star("A1", LambdaKind::integers, 0, 4, TMode::full); },
                    +[] { return generate_thin("B2", LambdaKind::rationals, TMode::full); }}) {
    BuildingInstance b = make();
    const RootSystem& rs = *b.rs;
    struct Node { int chart; WeylSimplex s; };
    std::vector<Node> nodes;
    for (int chart = 0; chart < b.apartments; ++chart)
      for (unsigned face = 0; face < (1u << rs.rank); ++face)
        for (int w = 0; w < rs.size(); ++w)
          if (rs.canon_elem[w][face] == w)
            nodes.push_back({chart, WeylSimplex{coords_zero(b.lambda, rs.rank), w, face}});
    auto par = [&](const Node& x, const Node& y) {
      if (x.s.face != y.s.face) return false;
      return parallel(b, x.chart, x.s, y.chart, y.s);
    };
    for (auto& x : nodes) CHECK(par(x, x));
    for (auto& x : nodes)
      for (auto& y : nodes) {
        CHECK(par(x, y) == par(y, x));
        if (!par(x, y)) continue;
        for (auto& z : nodes)
          if (par(y, z)) CHECK(par(x, z));
      }
  }
}

TEST_CASE("triple intersections are half-apartments or hyperplanes") {
  for (auto make : {+[] { return star3(); },
                    +[] { return generate_star("A1", LambdaKind::integers, 0, 4, TMode::full); },
                    +[] { return sundial3(); }}) {
    BuildingInstance b = make();
    bool saw_half = false, saw_wall = false;
    for (int i = 0; i < b.apartments; ++i)
      for (int j = i + 1; j < b.apartments; ++j)
        for (int k = j + 1; k < b.apartments; ++k) {
          auto rij = b.overlap_region(i, j), rik = b.overlap_region(i, k),
               rjk = b.overlap_region(j, k);
          if (!rij || !rik || !rjk) continue;
          auto half = [&](const ConvexRegion& r) {
            return classify_region(*b.rs, r, b.lambda).cls == RegionClass::half_apartment;
          };
          if (!half(*rij) || !half(*rik) || !half(*rjk)) continue;
          Classification c =
              classify_region(*b.rs, region_intersect(*rij, *rik), b.lambda);
          CHECK((c.cls == RegionClass::half_apartment || c.cls == RegionClass::hyperplane));
          saw_half = saw_half || c.cls == RegionClass::half_apartment;
          saw_wall = saw_wall || c.cls == RegionClass::hyperplane;
        }
    if (b.apartments >= 6) CHECK(saw_half); // the four-end star realizes both cases
    if (b.apartments >= 3) CHECK(saw_wall);
  }
}

TEST_CASE("sundial on STAR3") {
  BuildingInstance b = star3();
  BoundaryComplex bc = boundary_complex(b);
  int e0 = bc.chamber_class_of(0, 0); // branch 0's end
  int e1 = bc.chamber_class_of(0, 1);
  int e2 = bc.chamber_class_of(1, 1);
  auto res = sundial(b, bc, 2, e0); // apartment A12 does not contain e0
  REQUIRE(res);
  CHECK(((res->d1 == e1 && res->d2 == e2) || (res->d1 == e2 && res->d2 == e1)));
  CHECK(((res->a1 == 0 && res->a2 == 1) || (res->a1 == 1 && res->a2 == 0)));
  CHECK(res->triple.cls == RegionClass::hyperplane); // a point, in rank one
  CHECK(is_zero(res->triple.k));
  // precondition: chamber inside the boundary apartment
  CHECK_THROWS_AS((void)sundial(b, bc, 0, e0), std::invalid_argument);
}

TEST_CASE("sundial on the rank-2 star") {
  BuildingInstance b = sundial3();
  BoundaryComplex bc = boundary_complex(b);
  // chart 2 covers halves 1 and 2; the fundamental cone of chart 0 lies in
  // half 0 and touches the wall
  int c = bc.chamber_class_of(0, 0);
  auto res = sundial(b, bc, 2, c);
  REQUIRE(res);
  CHECK(res->triple.cls == RegionClass::hyperplane);
  CHECK(res->triple.root == 0);
  CHECK(is_zero(res->triple.k));
  CHECK(((res->a1 == 0 && res->a2 == 1) || (res->a1 == 1 && res->a2 == 0)));
  // the middle cone of half 0 does not touch the wall: precondition fails
  int middle = bc.chamber_class_of(0, 2);
  CHECK_THROWS_AS((void)sundial(b, bc, 2, middle), std::invalid_argument);
  // thin instance: every chamber is in the only boundary apartment
  BuildingInstance t = generate_thin("A2", LambdaKind::rationals, TMode::full);
  BoundaryComplex tb = boundary_complex(t);
  CHECK_THROWS_AS((void)sundial(t, tb, 0, tb.chamber_class_of(0, 0)), std::invalid_argument);
}

TEST_CASE("project_pi_x") {
  BuildingInstance b = star3();
  BoundaryComplex bc = boundary_complex(b);
  int e0 = bc.chamber_class_of(0, 0), e1 = bc.chamber_class_of(0, 1), e2 = bc.chamber_class_of(1, 1);
  // on an edge point the projections of the two far ends agree
  BPoint x{2, c1(b, 2)};
  auto p0 = project_pi_x(b, bc, e0, x);
  auto p2 = project_pi_x(b, bc, e2, x);
  REQUIRE((p0 && p2));
  CHECK(*p0 == *p2);
  auto p1 = project_pi_x(b, bc, e1, x);
  REQUIRE(p1);
  CHECK_FALSE(*p0 == *p1);
  // at the branch point the three ends project to three distinct germs
  BPoint o{0, c1(b, 0)};
  std::set<std::string> keys;
  for (int cls : {e0, e1, e2}) {
    auto g = project_pi_x(b, bc, cls, o);
    REQUIRE(g);
    keys.insert(germ_key(*g));
  }
  CHECK(keys.size() == 3);
}

TEST_CASE("lift_gallery") {
  BuildingInstance b = star3();
  BoundaryComplex bc = boundary_complex(b);
  int e1 = bc.chamber_class_of(0, 1), e2 = bc.chamber_class_of(1, 1);
  BPoint o{0, c1(b, 0)};
  auto single = lift_gallery(b, bc, o, {e1});
  REQUIRE(single);
  CHECK(*single == 0); // least chart containing the branch-1 chamber
  auto lifted = lift_gallery(b, bc, o, {e1, e2});
  REQUIRE(lifted);
  CHECK(*lifted == 2); // only A12 contains both chambers
  CHECK_THROWS_AS((void)lift_gallery(b, bc, o, {e1, e1}), std::invalid_argument);

  // rank 2: a two-step minimal gallery inside one boundary apartment lifts to
  // that apartment
  BuildingInstance s = sundial3();
  BoundaryComplex sb = boundary_complex(s);
  BPoint wallpt{0, {Scalar::of(s.lambda, 1), Scalar::of(s.lambda, 2)}};
  int g0 = sb.chamber_class_of(0, 0);
  int g1 = sb.chamber_class_of(0, 1);        // r1 * fundamental
  int g2 = sb.chamber_class_of(0, s.rs->mult[1][2]); // r1 r2
  REQUIRE(sb.dist[g0][g1] == 1);
  REQUIRE(sb.dist[g1][g2] == 1);
  REQUIRE(sb.dist[g0][g2] == 2);
  auto lifted2 = lift_gallery(s, sb, wallpt, {g0, g1, g2});
  REQUIRE(lifted2);
  CHECK(*lifted2 == 0);
}
