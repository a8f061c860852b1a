#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bldg/checks.hpp"

using namespace bldg;

namespace {

BuildingInstance star3() { return generate_star("A1", LambdaKind::integers, 0, 3, TMode::full); }

SampleWindow small_window() { return SampleWindow{4, 2, 60, 7}; }

} // namespace

TEST_CASE("axiom aliases") {
  CHECK(canonical_axiom("A3p") == "A3'");
  CHECK(canonical_axiom("A3''") == "A3''");
  CHECK(canonical_axiom("FCpp") == "FC''");
  CHECK_THROWS_AS((void)canonical_axiom("A9"), parse_error);
}

TEST_CASE("every axiom family passes on STAR3") {
  BuildingInstance b = star3();
  SampleWindow win = small_window();
  for (const auto& axiom : all_axioms()) {
    CheckReport rep = check_axiom(b, axiom, win, Metric::d1);
    INFO(axiom);
    CHECK(rep.ok());
    if (axiom == "A1") CHECK(rep.verdict == Verdict::not_applicable);
  }
}

TEST_CASE("the (GG) check and the residue common-apartment property agree") {
  SampleWindow win = small_window();
  BuildingInstance seed = generate_star("A1", LambdaKind::integers, 0, 3, TMode::full, true);
  BPoint branch{0, {Scalar::of(seed.lambda, 0)}};
  CHECK_FALSE(check_axiom(seed, "GG", win, Metric::d1).ok());
  CHECK_FALSE(residue(seed, branch).building_check.ok());
  BuildingInstance closed = ec_closure(seed);
  CHECK(check_axiom(closed, "GG", win, Metric::d1).ok());
  CHECK(residue(closed, branch).building_check.ok());
}

TEST_CASE("removing the derived apartment breaks (A3) with a replayable witness") {
  BuildingInstance seed = generate_star("A1", LambdaKind::integers, 0, 3, TMode::full, true);
  SampleWindow win = small_window();
  CheckReport rep = check_axiom(seed, "A3", win, Metric::d1);
  REQUIRE_FALSE(rep.ok());
  BPoint x = parse_bpoint(seed, rep.witness.at("x").get<std::string>());
  BPoint y = parse_bpoint(seed, rep.witness.at("y").get<std::string>());
  // replay: the two points really admit no common chart
  auto tx = chart_table(seed, x);
  auto ty = chart_table(seed, y);
  for (const auto& [c, coords] : tx) {
    (void)coords;
    CHECK_FALSE(ty.count(c));
  }
  // and the degenerate pair x = y stays trivially fine
  CHECK(check_axiom(generate_thin("A1", LambdaKind::integers, TMode::full), "A3", win, Metric::d1)
            .ok());
}

TEST_CASE("the main matrix passes on valid instances and fails coherently on mutations") {
  SampleWindow win = small_window();
  for (auto make : {+[] { return star3(); },
                    +[] { return generate_star("A2", LambdaKind::rationals, 0, 3, TMode::full); },
                    +[] { return generate_thin("B2", LambdaKind::rationals, TMode::full); },
                    +[] { return generate_star("A1", LambdaKind::lex_pair, 0, 3, TMode::full); }}) {
    BuildingInstance b = make();
    MatrixResult m = bundle_matrix(b, win, Metric::d1);
    INFO(b.name);
    CHECK(m.all_pass());
    CHECK(m.bundles.size() == 6);
  }
  // the pre-closure seed: every bundle that can see the missing apartment fails
  BuildingInstance seed = generate_star("A1", LambdaKind::integers, 0, 3, TMode::full, true);
  MatrixResult m = bundle_matrix(seed, win, Metric::d1);
  CHECK_FALSE(m.all_pass());
  for (const auto& bundle : m.bundles) CHECK(bundle.verdict == Verdict::fail);
  for (const auto& rep : m.axioms)
    if (rep.verdict == Verdict::fail) CHECK_FALSE(rep.witness.is_null());
}

TEST_CASE("both metrics give a well-defined distance with the triangle inequality") {
  SampleWindow win = small_window();
  CHECK(check_metric_independence(star3(), win).ok());
  CHECK(check_metric_independence(generate_star("A2", LambdaKind::rationals, 0, 3, TMode::full), win)
            .ok());
  CHECK(check_metric_independence(generate_star("A1", LambdaKind::lex_pair, 0, 3, TMode::full), win)
            .ok());
  // worked example: a cross-apartment triple on STAR3
  BuildingInstance b = star3();
  BPoint x{2, {Scalar::of(b.lambda, 2)}};   // branch 1
  BPoint y{2, {Scalar::of(b.lambda, -3)}};  // branch 2
  BPoint z{0, {Scalar::of(b.lambda, 3)}};   // branch 0
  for (Metric m : {Metric::d1, Metric::dinf}) {
    auto dxy = distance(b, x, y, m);
    auto dxz = distance(b, x, z, m);
    auto dzy = distance(b, z, y, m);
    REQUIRE((dxy && dxz && dzy));
    CHECK(le(*dxy, add(*dxz, *dzy)));
  }
}

TEST_CASE("witness searches") {
  BuildingInstance b = star3();
  BoundaryComplex bc = boundary_complex(b);
  // germ at the origin toward branch 1, chamber class of branch 2's end
  Germ mu = germ_of(b, 0, WeylSimplex{{Scalar::of(b.lambda, 0)}, 1, 0});
  int e2 = bc.chamber_class_of(1, 1);
  auto apartment = witness_germ_and_chamber(b, bc, mu, e2);
  REQUIRE(apartment);
  CHECK(*apartment == 2);

  auto triple = witness_triple_intersection(b, 0, 1, 2);
  REQUIRE(triple);
  CHECK(triple->cls == RegionClass::hyperplane);
  CHECK(is_zero(triple->k));

  BuildingInstance thin = generate_thin("A2", LambdaKind::rationals, TMode::full);
  WeylSimplex s{coords_zero(thin.lambda, 2), 0, 0};
  WeylSimplex t{coords_zero(thin.lambda, 2), thin.rs->longest, 0};
  auto both = witness_chamber_and_germ(thin, 0, s, 0, t);
  REQUIRE(both);
  CHECK(*both == 0);

  // an apartment containing a germ and a sub-chamber of a far-away chamber
  ChamberClasses cc = chamber_classes(b);
  WeylSimplex toward_e2{{Scalar::of(b.lambda, -4)}, 1, 0}; // in A02
  auto sub = witness_germ_and_subchamber(b, cc, mu, 1, toward_e2);
  REQUIRE(sub);
  CHECK(*sub == 2); // A12 holds the germ toward branch 1 and all of branch 2
}

TEST_CASE("segment covers: the chamber family and the apartment cover") {
  BuildingInstance b = star3();
  BoundaryComplex bc = boundary_complex(b);
  // x, y in A01 spanning the origin; z out on branch 2
  BPoint x{0, {Scalar::of(b.lambda, 3)}};
  BPoint y{0, {Scalar::of(b.lambda, -2)}};
  BPoint z{1, {Scalar::of(b.lambda, -3)}};
  SegmentCover cover = segment_cover(b, bc, 0, x, y, z, Metric::d1, 4);
  CHECK(cover.family.size() == 2); // = chambers of the boundary apartment
  CHECK(cover.covered_by_chambers);
  CHECK(cover.covered_by_apartments);
  CHECK(cover.segment_points > 0);
  for (const auto& [chart, simplex] : cover.family) CHECK(coords_eq(simplex.base, {Scalar::of(b.lambda, -3)}));
  // z inside the apartment is the trivial case
  SegmentCover inside = segment_cover(b, bc, 0, x, y, BPoint{0, {Scalar::of(b.lambda, 1)}},
                                      Metric::d1, 4);
  CHECK(inside.covered_by_chambers);
}

TEST_CASE("reports are byte-identical across runs with one seed") {
  BuildingInstance b = star3();
  SampleWindow win = small_window();
  auto run = [&] {
    json out = json::array();
    for (const auto& axiom : all_axioms()) out.push_back(check_axiom(b, axiom, win, Metric::d1).to_json());
    out.push_back(bundle_matrix(b, win, Metric::dinf).to_json());
    return out.dump();
  };
  std::string first = run();
  std::string second = run();
  CHECK(first == second);
  SampleWindow other = win;
  other.seed = 8;
  json changed = json::array();
  for (const auto& axiom : all_axioms()) changed.push_back(check_axiom(b, axiom, other, Metric::d1).to_json());
  CHECK(first != changed.dump() + "x"); // different seed allowed to differ; no crash either way
}

TEST_CASE("B2 star instance passes the matrix") {
  // exercises the rank-2 type with two root lengths end to end
  BuildingInstance b = generate_star("B2", LambdaKind::rationals, 0, 3, TMode::full);
  SampleWindow win{2, 2, 25, 11};
  MatrixResult m = bundle_matrix(b, win, Metric::dinf);
  CHECK(m.all_pass());
}
