#pragma once

#include "bldg/model.hpp"
#include "bldg/report.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace bldg {

enum class TMode { full, lattice };
const char* tmode_name(TMode t);
TMode tmode_from_name(const std::string&);

/// Identification of two charts: points of chart i inside `region` equal the
/// image of `map` read in chart j. Instances store both orientations; files
/// store one and the loader synthesizes the other.
struct Gluing {
  int i = 0, j = 0;
  ConvexRegion region; // in chart-i coordinates
  AffineMap map;       // chart-i coords -> chart-j coords
};

/// A finitely-presented space modeled on the model apartment: `apartments`
/// copies of it, glued along convex regions by affine Weyl elements. Charts
/// are stored modulo precomposition with the affine Weyl group, which is what
/// makes the atlas invariance axiom structural rather than checkable.
struct BuildingInstance {
  std::string name;
  const RootSystem* rs = nullptr;
  LambdaKind lambda = LambdaKind::rationals;
  TMode tmode = TMode::full;
  int apartments = 0;
  std::vector<Gluing> gluings; // sorted by (i, j)
  std::string provenance;

  const Gluing* gluing(int i, int j) const;
  /// declared overlap of charts i and j in i-coordinates (all() when i == j)
  std::optional<ConvexRegion> overlap_region(int i, int j) const;
  std::optional<AffineMap> overlap_map(int i, int j) const;
};

/// adds g and its synthesized symmetric entry
void add_gluing(BuildingInstance& b, Gluing g);
void sort_gluings(BuildingInstance& b);

/// A point of the glued space, named by a chart and local coordinates.
struct BPoint {
  int chart = 0;
  Coords local;
};

std::string bpoint_to_string(const BPoint& p);
BPoint parse_bpoint(const BuildingInstance& b, const std::string& text);

/// every chart containing the point, with its coordinates there
/// (breadth-first transport over the gluing graph)
std::map<int, Coords> chart_table(const BuildingInstance& b, const BPoint& p);
std::optional<Coords> transport(const BuildingInstance& b, const BPoint& p, int target);
bool same_point(const BuildingInstance& b, const BPoint& p, const BPoint& q);
/// lowest chart index containing the point, with transported coordinates
BPoint canonical_point(const BuildingInstance& b, const BPoint& p);

/// structural validation: region convexity/closedness and nonemptiness,
/// symmetry of gluings, transition maps in the declared translation group,
/// and the cocycle condition on every declared triple overlap (checked
/// exactly on the overlap region, not just at samples)
CheckReport validate_atlas(const BuildingInstance& b);

struct ec_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Saturates the atlas under the exchange construction: whenever two charts
/// meet in exactly a half-apartment M with wall H, the symmetric difference
/// together with H is adjoined as a new chart (with induced gluings) unless an
/// equal apartment already exists. Throws ec_error if the growth cap is hit or
/// an induced overlap fails to be a single convex gluing.
BuildingInstance ec_closure(const BuildingInstance& b);

/// one apartment, no gluings
BuildingInstance generate_thin(const std::string& rs_name, LambdaKind lambda, TMode tmode);
/// k half-apartments bounded by the wall of `wall_root` through the origin,
/// glued pairwise along the wall and closed under the exchange construction:
/// apartments are the pairs of halves. For A1 this is the k-end star tree, in
/// rank 2 the sundial space. `seed_only` emits the pre-closure atlas
/// (halves 1..k-1 each paired with half 0).
BuildingInstance generate_star(const std::string& rs_name, LambdaKind lambda, int wall_root,
                               int branches, TMode tmode, bool seed_only = false);
BuildingInstance generate(const std::string& kind, const std::string& rs_name, LambdaKind lambda,
                          int wall_root, int branches, TMode tmode);

/// true iff the two charts name the same apartment (declared overlap is everything)
bool apartments_equal(const BuildingInstance& b, int i, int j);

// instance files (UTF-8 JSON; see README for the schema)
std::string save_instance(const BuildingInstance& b);
BuildingInstance load_instance(const std::string& text);
void write_instance_file(const BuildingInstance& b, const std::string& path);
BuildingInstance load_instance_file(const std::string& path);

} // namespace bldg
