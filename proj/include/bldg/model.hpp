#pragma once

#include "bldg/rootsystem.hpp"
#include "bldg/scalar.hpp"

#include <optional>
#include <vector>

namespace bldg {

/// A point of the model apartment in coroot coordinates.
using Coords = std::vector<Scalar>;

Coords coords_zero(LambdaKind kind, int rank);
Coords coords_of(LambdaKind kind, const Vec& v);
Coords coords_add(const Coords& a, const Coords& b);
Coords coords_sub(const Coords& a, const Coords& b);
bool coords_eq(const Coords& a, const Coords& b);
Coords apply_matrix(const Mat& m, const Coords& x);
/// sum f[i] * x[i]
Scalar eval_functional(const Vec& f, const Coords& x);
Scalar eval_root(const RootSystem& rs, int root, const Coords& x);

std::string coords_to_string(const Coords& x);
Coords parse_coords(LambdaKind kind, int rank, const std::string& text);

/// An element of the affine Weyl group: x -> elements[elem].matrix * x + translation.
struct AffineMap {
  int elem = 0;
  Coords translation;

  bool operator==(const AffineMap&) const = default;
};

AffineMap affine_identity(const RootSystem& rs, LambdaKind kind);
Coords apply(const RootSystem& rs, const AffineMap& m, const Coords& x);
AffineMap compose(const RootSystem& rs, const AffineMap& m1, const AffineMap& m2);
AffineMap inverse(const RootSystem& rs, const AffineMap& m);
/// the reflection fixing { alpha(x) = k } pointwise
AffineMap affine_reflection(const RootSystem& rs, int root, const Scalar& k);
/// lattice translations have all coordinates in Lambda itself
bool translation_in_lattice(const AffineMap& m);

enum class Sense { geq, leq };

/// { x : alpha(x) >= k } or { x : alpha(x) <= k }; walls only occur in root
/// directions, so `root` indexes the root system's table.
struct HalfSpace {
  int root = 0;
  Sense sense = Sense::geq;
  Scalar k;

  bool operator==(const HalfSpace&) const = default;
};

/// Finite intersection of half-apartments. Closed and convex by construction;
/// emptiness is decidable (Fourier-Motzkin over the divisible hull).
struct ConvexRegion {
  std::vector<HalfSpace> halves;

  static ConvexRegion all() { return {}; }
  static ConvexRegion half(int root, Sense s, Scalar k) { return {{{root, s, std::move(k)}}}; }
  static ConvexRegion wall(int root, const Scalar& k) {
    return {{{root, Sense::geq, k}, {root, Sense::leq, k}}};
  }
  bool operator==(const ConvexRegion&) const = default; // syntactic; see region_equal
};

struct Support {
  bool feasible = true;
  std::optional<Scalar> lo, hi; // absent = unbounded on that side
};

/// exact range of functional f over the region
Support support(const RootSystem& rs, const ConvexRegion& r, const Vec& f, LambdaKind kind);
bool region_empty(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind);
bool region_contains(const RootSystem& rs, const ConvexRegion& r, const Coords& x);
/// a subset of b (empty regions are subsets of everything)
bool region_subset(const RootSystem& rs, const ConvexRegion& a, const ConvexRegion& b, LambdaKind kind);
bool region_equal(const RootSystem& rs, const ConvexRegion& a, const ConvexRegion& b, LambdaKind kind);
bool region_is_all(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind);
ConvexRegion region_intersect(const ConvexRegion& a, const ConvexRegion& b);
/// redundant constraints removed, half-spaces normalised to positive roots and
/// sorted by (root, sense, constant); nonempty regions only
ConvexRegion canonicalize(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind);
/// preimage under m: { x : m(x) in r }
ConvexRegion region_pullback(const RootSystem& rs, const ConvexRegion& r, const AffineMap& m);
ConvexRegion region_pushforward(const RootSystem& rs, const ConvexRegion& r, const AffineMap& m);
/// deterministic witness point, coordinates clamped toward `pref` (rationals)
std::optional<Coords> pick_point(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind,
                                 const Vec& pref);
std::optional<Coords> pick_point(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind);
/// do the affine maps agree on every point of the region?
bool maps_agree_on(const RootSystem& rs, const ConvexRegion& r, const AffineMap& m1,
                   const AffineMap& m2, LambdaKind kind);

enum class RegionClass { empty, all, half_apartment, hyperplane, proper };

struct Classification {
  RegionClass cls = RegionClass::proper;
  int root = -1; // positive root of the bounding wall, for half/hyperplane
  Sense sense = Sense::geq;
  Scalar k;
};

Classification classify_region(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind);

/// base + w * (face of the fundamental chamber); face is a bitmask over simple
/// indices, empty = full Weyl chamber, full = the basepoint alone.
struct WeylSimplex {
  Coords base;
  int elem = 0;
  unsigned face = 0;

  bool operator==(const WeylSimplex&) const = default;
};

ConvexRegion simplex_region(const RootSystem& rs, const WeylSimplex& s);
/// true iff the direction cone of (elem, face) satisfies every constraint of r
/// directionally (extreme-ray sign test)
bool cone_fits_directions(const RootSystem& rs, const ConvexRegion& r, int elem, unsigned face);
/// witness apex of a translate of the cone inside r, if any
std::optional<Coords> region_contains_cone(const RootSystem& rs, const ConvexRegion& r, int elem,
                                           unsigned face, LambdaKind kind);
/// active-constraint germ test: some eps-initial piece of s lies in r
bool germ_in_region(const RootSystem& rs, const ConvexRegion& r, const WeylSimplex& s);

enum class Metric { d1, dinf };
Metric metric_from_name(const std::string&);
const char* metric_name(Metric m);

/// d1 = sum over positive roots of |alpha(x-y)|, dinf = max. Both are
/// affine-Weyl-invariant Lambda-metrics on the model space.
Scalar metric(const RootSystem& rs, const Coords& x, const Coords& y, Metric which);
bool segment_membership(const RootSystem& rs, const Coords& x, const Coords& y, const Coords& z,
                        Metric which);

} // namespace bldg
