#pragma once

#include "bldg/retraction.hpp"

namespace bldg {

/// Finite verification surface: a deterministic coarse grid (integer
/// coordinates, radius capped as documented in the README) together with
/// `samples` seeded random draws with |coordinate| <= radius and denominators
/// <= den. Reports are byte-identical for identical windows.
struct SampleWindow {
  long radius = 8;
  int den = 4;
  int samples = 1000;
  uint64_t seed = 1;
};

const std::vector<std::string>& all_axioms();
/// canonical name ("A3p" -> "A3'", "FCpp" -> "FC''"); throws parse_error
std::string canonical_axiom(const std::string& name);

/// windowed verification of one axiom family
CheckReport check_axiom(const BuildingInstance& b, const std::string& axiom,
                        const SampleWindow& win, Metric metric);

struct MatrixBundle {
  std::string name;
  std::vector<std::string> axioms;
  Verdict verdict = Verdict::pass;
};

/// the six equivalent axiom bundles, evaluated on one shared sample surface
struct MatrixResult {
  std::vector<CheckReport> axioms; // baseline + every axiom used by a bundle
  std::vector<MatrixBundle> bundles;
  bool all_pass() const;
  json to_json() const;
};

MatrixResult bundle_matrix(const BuildingInstance& b, const SampleWindow& win, Metric metric);

/// both metrics induce a well-defined distance on the glued space satisfying
/// the triangle inequality on sampled cross-apartment triples
CheckReport check_metric_independence(const BuildingInstance& b, const SampleWindow& win);

// --- witness searches ------------------------------------------------------

/// an apartment containing the germ whose boundary contains the chamber class
std::optional<int> witness_germ_and_chamber(const BuildingInstance& b, const BoundaryComplex& bc,
                                            const Germ& mu, int cls);
/// an apartment containing the chamber s and a germ of t (both full chambers)
std::optional<int> witness_chamber_and_germ(const BuildingInstance& b, int chart_s,
                                            const WeylSimplex& s, int chart_t,
                                            const WeylSimplex& t);
/// an apartment containing the germ and a sub-Weyl chamber of s
std::optional<int> witness_germ_and_subchamber(const BuildingInstance& b, const ChamberClasses& cc,
                                               const Germ& mu, int chart_s, const WeylSimplex& s);
/// classification of the triple intersection when the pairwise overlaps are
/// half-apartments; nullopt when the precondition fails
std::optional<Classification> witness_triple_intersection(const BuildingInstance& b, int i, int j,
                                                          int k);

/// The finite family of z-based chambers parallel to a chamber of the given
/// apartment, the windowed points of seg_A(x, y) they must cover, and the
/// constructive apartment cover through a germ at z.
struct SegmentCover {
  std::vector<std::pair<int, WeylSimplex>> family; // (chart, z-based chamber)
  std::vector<int> apartments;                     // cover by charts containing mu
  long segment_points = 0;
  bool covered_by_chambers = false;
  bool covered_by_apartments = false;
  json defect;
};

SegmentCover segment_cover(const BuildingInstance& b, const BoundaryComplex& bc, int apartment,
                           const BPoint& x, const BPoint& y, const BPoint& z, Metric metric,
                           long window_radius);

} // namespace bldg
