#pragma once

#include "bldg/atlas.hpp"

#include <map>

namespace bldg {

/// Germ of a Weyl simplex at a point, in canonical form: the least
/// (chart, element, face) over all charts whose apartment contains the germ,
/// elements ordered by the group enumeration and canonicalised within a chart
/// over the face-cone stabiliser.
struct Germ {
  int chart = 0;
  Coords base;
  int elem = 0;
  unsigned face = 0;

  bool operator==(const Germ& o) const {
    return chart == o.chart && elem == o.elem && face == o.face && coords_eq(base, o.base);
  }
};

std::string germ_key(const Germ& g);
std::string germ_to_string(const Germ& g, const RootSystem& rs);

/// chart -> (base there, canonical element there); every chart whose
/// apartment contains the germ, found by breadth-first transport through
/// gluings whose region locally contains the germ
using GermReach = std::map<int, std::pair<Coords, int>>;

GermReach germ_reach(const BuildingInstance& b, int chart, const Coords& base, int elem,
                     unsigned face);
Germ canonical_germ(const BuildingInstance& b, int chart, const Coords& base, int elem,
                    unsigned face);
Germ germ_of(const BuildingInstance& b, int chart, const WeylSimplex& s);

/// same germ test for two simplices based at the same building point
/// (throws std::invalid_argument when the bases differ as points of X)
bool germ_equal(const BuildingInstance& b, int chart_s, const WeylSimplex& s, int chart_t,
                const WeylSimplex& t);

/// The residue at x: all germs of Weyl simplices at x, chambers and panels
/// materialised, with apartment subcomplexes induced by the atlas and the
/// spherical-building verification report.
struct ResidueComplex {
  BPoint at;
  int diameter = 0;                            // Coxeter diameter of the type
  std::vector<Germ> chambers;                  // face 0, deterministic discovery order
  std::vector<Germ> panels;                    // one wall in the face
  std::vector<std::vector<int>> chamber_panels;
  std::vector<std::vector<int>> adjacency;     // chamber indices sharing a panel
  std::vector<std::vector<int>> dist;          // chamber-graph distance, -1 unreachable
  std::vector<int> apartment_chart;            // chart behind each apartment
  std::vector<std::vector<int>> apartments;    // chamber indices per apartment
  std::vector<GermReach> chamber_reach;
  CheckReport building_check;
};

ResidueComplex residue(const BuildingInstance& b, const BPoint& x);

int chamber_index(const ResidueComplex& rc, const Germ& g); // -1 if absent

/// minimal gallery length between two chamber germs at the same point
int delta_x(const ResidueComplex& rc, const Germ& a, const Germ& b);
bool opposite_at(const ResidueComplex& rc, const Germ& a, const Germ& b);

/// residues computed from `seed` and from an instance extending it (the
/// exchange closure) are compared as complexes: seed germs re-canonicalised in
/// the extension must give a bijection of chambers preserving adjacency
bool residues_isomorphic(const BuildingInstance& seed, const BuildingInstance& extension,
                         const BPoint& x_in_seed);

} // namespace bldg
