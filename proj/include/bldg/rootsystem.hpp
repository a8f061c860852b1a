#pragma once

#include "bldg/scalar.hpp"

#include <string>
#include <vector>

namespace bldg {

using Vec = std::vector<Rational>;
using Mat = std::vector<std::vector<Rational>>;

Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& m, const Vec& v);
Rational dot(const Vec& a, const Vec& b);
/// scale to integer entries with gcd 1, sign of the direction kept
Vec primitive(const Vec& v);

/// A root in coroot coordinates. `functional` gives the evaluation
/// alpha(x) = sum functional[i] * x_i on points x = sum x_i alpha_i^vee;
/// `coroot` are the coordinates of alpha^vee in the simple-coroot basis and
/// `vec` those of alpha itself.
struct Root {
  Vec functional;
  Vec coroot;
  Vec vec;
  bool positive = false;
  int negative_of = -1;
};

struct WeylElement {
  std::vector<int> word; // reduced, 1-based simple reflection indices, shortlex-least
  Mat matrix;            // action on points
};

/// Finite root system together with its enumerated spherical Weyl group.
/// Supported types: A1, A2, B2 (B2 with alpha_1 short, alpha_2 long; G2 is a
/// documented extension point, everything below is closure-generated from the
/// simple-root tables).
struct RootSystem {
  std::string name;
  int rank = 0;
  std::vector<Root> roots; // positives first
  int positive_count = 0;
  std::vector<std::vector<Rational>> pairing; // pairing[a][b] = <alpha_a, alpha_b^vee>

  std::vector<WeylElement> elements; // BFS (shortlex) order, identity first
  int diameter = 0;
  int longest = 0;
  std::vector<std::vector<int>> mult;        // element composition
  std::vector<int> inv;                      // element inverse
  std::vector<std::vector<int>> root_action; // root_action[w][r] = index of w(alpha_r)
  std::vector<int> reflection;               // reflection[r] = element index of r_alpha_r

  std::vector<Vec> coweight; // primitive extreme rays of the fundamental chamber
  // rays[w][j] = primitive direction of w * coweight_j
  std::vector<std::vector<Vec>> rays;
  // canon_elem[w][face] = least element carrying the same face cone; `face` is a
  // bitmask over simple indices (bit j set = the wall of alpha_j is part of the face)
  std::vector<std::vector<int>> canon_elem;

  int length(int w) const { return (int)elements[w].word.size(); }
  int size() const { return (int)elements.size(); }
  int negate_root(int r) const { return roots[r].negative_of; }
  /// ray set (sorted primitive directions) of the face cone w * (C_f face)
  std::vector<Vec> face_rays(int w, unsigned face) const;
};

/// Cached lookup by name ("A1" | "A2" | "B2"); throws parse_error otherwise.
const RootSystem& root_system(const std::string& name);

/// x - alpha(x) alpha^vee on rational vectors; maps roots to roots.
Vec reflect_vec(const RootSystem& rs, int root, const Vec& x);

int find_root_by_vec(const RootSystem& rs, const Vec& v); // -1 if absent

/// reduced length of w1^{-1} w2
int gallery_distance(const RootSystem& rs, int w1, int w2);

} // namespace bldg
