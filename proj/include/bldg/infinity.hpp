#pragma once

#include "bldg/local.hpp"

namespace bldg {

/// A chamber direction in a chart. Two nodes name parallel chambers exactly
/// when they lie in one connected component of the transport graph, whose
/// edges are the direction-compatible gluings (for full-dimensional cones the
/// extreme-ray sign test on the gluing region is exact).
struct ChamberNode {
  int chart = 0;
  int elem = 0;
};

struct ChamberClasses {
  int charts = 0, group = 0;
  std::vector<int> component;                    // node -> class id
  std::vector<std::vector<ChamberNode>> members; // class -> nodes, ascending
  int node(int chart, int elem) const { return chart * group + elem; }
  int class_of(int chart, int elem) const { return component[node(chart, elem)]; }
};

ChamberClasses chamber_classes(const BuildingInstance& b);

/// combinatorial parallelism (sub-chambers that are translates in a common
/// chart; proper simplices go through the corresponding-face construction,
/// trying every containing chamber). Throws std::invalid_argument when the
/// face types differ.
bool parallel(const BuildingInstance& b, int chart_s, const WeylSimplex& s, int chart_t,
              const WeylSimplex& t);

/// the same predicate with the transport graph and corresponding-face reach
/// sets precomputed, for exhaustive sweeps
struct ParallelTester {
  const BuildingInstance* b = nullptr;
  ChamberClasses cc;
  // reach[face][chart][canonical elem] -> set of (chart, face-cone key)
  std::map<unsigned, std::vector<std::vector<std::set<std::pair<int, std::string>>>>> reach;

  bool test(int chart_s, const WeylSimplex& s, int chart_t, const WeylSimplex& t) const;
};

ParallelTester make_parallel_tester(const BuildingInstance& b);

/// Simplex at infinity, named by its least (chart, element) representative.
struct ParallelClass {
  int id = 0;
  int chart = 0;
  int elem = 0;
  unsigned face = 0;
};

/// The building at infinity: parallel classes of Weyl chambers and their
/// panels, apartments in correspondence with the atlas apartments, plus the
/// spherical-building verification report.
struct BoundaryComplex {
  ChamberClasses cc;
  std::vector<ParallelClass> chambers;
  std::vector<ParallelClass> panels;
  std::vector<std::vector<int>> chamber_panels; // chamber class -> panel class per wall slot
  std::vector<std::vector<int>> adjacency;
  std::vector<std::vector<int>> dist;
  std::vector<std::vector<int>> apartments; // per chart: sorted chamber class ids
  CheckReport building_check;

  int chamber_class_of(int chart, int elem) const { return cc.class_of(chart, elem); }
};

BoundaryComplex boundary_complex(const BuildingInstance& b);

/// germ at x of the x-based Weyl chamber representing the class; nullopt when
/// no chart contains both (an (A3)-family defect) or the candidates disagree
std::optional<Germ> project_pi_x(const BuildingInstance& b, const BoundaryComplex& bc, int cls,
                                 const BPoint& x);

/// the x-based Weyl chamber representing the class, in the least chart that
/// carries both; distinct classes can share the germ at x but not the chamber
std::optional<std::pair<int, WeylSimplex>> based_representative(const BuildingInstance& b,
                                                                const ChamberClasses& cc, int cls,
                                                                const BPoint& x);

/// the simplex read in chart `target`, when its point set lies in that
/// apartment (decided against the declared gluing region)
std::optional<WeylSimplex> chamber_in_chart(const BuildingInstance& b, int chart,
                                            const WeylSimplex& s, int target);

struct SundialResult {
  int d1 = -1, d2 = -1; // the two chambers of the boundary apartment opposite c
  int a1 = -1, a2 = -1; // atlas apartments with boundary containing {d_i, c}
  Classification triple;
  ConvexRegion triple_region; // in chart-`apartment` coordinates
};

/// c must not lie in the boundary of `apartment` but must contain one of its
/// panels; throws std::invalid_argument when the precondition fails, returns
/// nullopt (defect, e.g. missing exchange closure) when the apartments are
/// not in the atlas
std::optional<SundialResult> sundial(const BuildingInstance& b, const BoundaryComplex& bc,
                                     int apartment, int cls);

/// an apartment containing every x-based representative of a minimal gallery
/// at infinity whose projection to the residue at x is minimal; nullopt is a
/// defect report for the caller
std::optional<int> lift_gallery(const BuildingInstance& b, const BoundaryComplex& bc,
                                const BPoint& x, const std::vector<int>& gallery);

} // namespace bldg
