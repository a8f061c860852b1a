#include "bldg/model.hpp"

#include <algorithm>
#include <sstream>

namespace bldg {

Coords coords_zero(LambdaKind kind, int rank) {
  return Coords(rank, Scalar::zero(kind));
}

Coords coords_of(LambdaKind kind, const Vec& v) {
  Coords c;
  c.reserve(v.size());
  for (const auto& x : v) c.push_back(Scalar::of(kind, x));
  return c;
}

Coords coords_add(const Coords& a, const Coords& b) {
  Coords r(a.size(), Scalar{});
  for (size_t i = 0; i < a.size(); ++i) r[i] = add(a[i], b[i]);
  return r;
}

Coords coords_sub(const Coords& a, const Coords& b) {
  Coords r(a.size(), Scalar{});
  for (size_t i = 0; i < a.size(); ++i) r[i] = sub(a[i], b[i]);
  return r;
}

bool coords_eq(const Coords& a, const Coords& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i])) return false;
  return true;
}

Coords apply_matrix(const Mat& m, const Coords& x) {
  Coords r(x.size(), Scalar::zero(x.empty() ? LambdaKind::rationals : x[0].kind));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) r[i] = add(r[i], scale(m[i][j], x[j]));
  return r;
}

Scalar eval_functional(const Vec& f, const Coords& x) {
  Scalar s = Scalar::zero(x.empty() ? LambdaKind::rationals : x[0].kind);
  for (size_t i = 0; i < f.size(); ++i) s = add(s, scale(f[i], x[i]));
  return s;
}

Scalar eval_root(const RootSystem& rs, int root, const Coords& x) {
  return eval_functional(rs.roots[root].functional, x);
}

std::string coords_to_string(const Coords& x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += to_string(x[i]);
  }
  return s + ")";
}

Coords parse_coords(LambdaKind kind, int rank, const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw parse_error("coordinates must look like (c1,...,cn): '" + text + "'");
  std::string body = text.substr(1, text.size() - 2);
  // split on commas at paren depth 0 (lex scalars contain parenthesised pairs)
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : body) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if ((int)parts.size() != rank)
    throw parse_error("expected " + std::to_string(rank) + " coordinates: '" + text + "'");
  Coords c;
  for (auto& p : parts) c.push_back(parse_scalar(kind, p));
  return c;
}

AffineMap affine_identity(const RootSystem& rs, LambdaKind kind) {
  return AffineMap{0, coords_zero(kind, rs.rank)};
}

Coords apply(const RootSystem& rs, const AffineMap& m, const Coords& x) {
  if ((int)x.size() != rs.rank) throw spec_mismatch();
  return coords_add(apply_matrix(rs.elements[m.elem].matrix, x), m.translation);
}

AffineMap compose(const RootSystem& rs, const AffineMap& m1, const AffineMap& m2) {
  AffineMap r;
  r.elem = rs.mult[m1.elem][m2.elem];
  r.translation = coords_add(apply_matrix(rs.elements[m1.elem].matrix, m2.translation), m1.translation);
  return r;
}

AffineMap inverse(const RootSystem& rs, const AffineMap& m) {
  AffineMap r;
  r.elem = rs.inv[m.elem];
  Coords t = apply_matrix(rs.elements[r.elem].matrix, m.translation);
  for (auto& s : t) s = neg(s);
  r.translation = std::move(t);
  return r;
}

AffineMap affine_reflection(const RootSystem& rs, int root, const Scalar& k) {
  // x - (alpha(x) - k) alpha^vee = r_alpha(x) + k alpha^vee
  AffineMap m;
  m.elem = rs.reflection[root];
  m.translation.reserve(rs.rank);
  for (int i = 0; i < rs.rank; ++i) m.translation.push_back(scale(rs.roots[root].coroot[i], k));
  return m;
}

bool translation_in_lattice(const AffineMap& m) {
  for (const auto& s : m.translation)
    if (!in_lambda(s)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// half-space regions, decided by Fourier-Motzkin elimination over the hull

namespace {

struct LinRow {
  Vec c; // c . x >= k
  Scalar k;
};

std::vector<LinRow> region_rows(const RootSystem& rs, const ConvexRegion& r) {
  std::vector<LinRow> rows;
  rows.reserve(r.halves.size());
  for (const auto& h : r.halves) {
    const Vec& f = rs.roots[h.root].functional;
    if (h.sense == Sense::geq) {
      rows.push_back({f, h.k});
    } else {
      Vec neg_f(f.size());
      for (size_t i = 0; i < f.size(); ++i) neg_f[i] = -f[i];
      rows.push_back({neg_f, neg(h.k)});
    }
  }
  return rows;
}

bool row_is_zero(const Vec& c) {
  for (const auto& x : c)
    if (x != 0) return false;
  return true;
}

// eliminate variable `var`; pairs of opposite-sign rows combine with positive
// multipliers so the senses are preserved
std::vector<LinRow> eliminate(const std::vector<LinRow>& rows, int var) {
  std::vector<LinRow> lowers, uppers, rest;
  for (const auto& r : rows) {
    if (r.c[var] > 0)
      lowers.push_back(r);
    else if (r.c[var] < 0)
      uppers.push_back(r);
    else
      rest.push_back(r);
  }
  for (const auto& l : lowers)
    for (const auto& u : uppers) {
      Rational a = -u.c[var]; // > 0
      Rational b = l.c[var];  // > 0
      LinRow out;
      out.c.resize(l.c.size());
      for (size_t i = 0; i < l.c.size(); ++i) out.c[i] = a * l.c[i] + b * u.c[i];
      out.k = add(scale(a, l.k), scale(b, u.k));
      rest.push_back(std::move(out));
    }
  return rest;
}

bool rows_feasible(std::vector<LinRow> rows, int n) {
  for (int v = 0; v < n; ++v) rows = eliminate(rows, v);
  for (const auto& r : rows)
    if (sign(r.k) > 0) return false;
  return true;
}

} // namespace

static Support support_rows(int n, std::vector<LinRow> rows, const Vec& f, LambdaKind kind) {
  Support out;
  if (row_is_zero(f)) {
    out.feasible = rows_feasible(rows, n);
    out.lo = out.hi = Scalar::zero(kind);
    return out;
  }
  int p = 0;
  while (f[p] == 0) ++p;
  // substitute x_p = (u - sum_{j != p} f_j x_j) / f_p; coordinate p now holds u
  for (auto& row : rows) {
    Rational cp = row.c[p];
    Vec c(n);
    c[p] = cp / f[p];
    for (int j = 0; j < n; ++j)
      if (j != p) c[j] = row.c[j] - cp * f[j] / f[p];
    row.c = std::move(c);
  }
  for (int v = 0; v < n; ++v)
    if (v != p) rows = eliminate(rows, v);
  for (const auto& row : rows) {
    const Rational& a = row.c[p];
    if (a == 0) {
      if (sign(row.k) > 0) {
        out.feasible = false;
        return out;
      }
      continue;
    }
    Scalar bound = scale(Rational(1) / a, row.k);
    if (a > 0) {
      if (!out.lo || lt(*out.lo, bound)) out.lo = bound;
    } else {
      if (!out.hi || lt(bound, *out.hi)) out.hi = bound;
    }
  }
  if (out.lo && out.hi && lt(*out.hi, *out.lo)) out.feasible = false;
  return out;
}

Support support(const RootSystem& rs, const ConvexRegion& r, const Vec& f, LambdaKind kind) {
  return support_rows(rs.rank, region_rows(rs, r), f, kind);
}

bool region_empty(const RootSystem& rs, const ConvexRegion& r, LambdaKind) {
  return !rows_feasible(region_rows(rs, r), rs.rank);
}

bool region_contains(const RootSystem& rs, const ConvexRegion& r, const Coords& x) {
  for (const auto& h : r.halves) {
    Scalar v = eval_root(rs, h.root, x);
    if (h.sense == Sense::geq ? lt(v, h.k) : lt(h.k, v)) return false;
  }
  return true;
}

bool region_subset(const RootSystem& rs, const ConvexRegion& a, const ConvexRegion& b, LambdaKind kind) {
  if (region_empty(rs, a, kind)) return true;
  for (const auto& h : b.halves) {
    Support s = support(rs, a, rs.roots[h.root].functional, kind);
    if (h.sense == Sense::geq) {
      if (!s.lo || lt(*s.lo, h.k)) return false;
    } else {
      if (!s.hi || lt(h.k, *s.hi)) return false;
    }
  }
  return true;
}

bool region_equal(const RootSystem& rs, const ConvexRegion& a, const ConvexRegion& b, LambdaKind kind) {
  bool ea = region_empty(rs, a, kind), eb = region_empty(rs, b, kind);
  if (ea || eb) return ea == eb;
  return region_subset(rs, a, b, kind) && region_subset(rs, b, a, kind);
}

bool region_is_all(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind) {
  return region_subset(rs, ConvexRegion::all(), r, kind);
}

ConvexRegion region_intersect(const ConvexRegion& a, const ConvexRegion& b) {
  ConvexRegion r = a;
  r.halves.insert(r.halves.end(), b.halves.begin(), b.halves.end());
  return r;
}

static HalfSpace normalize_half(const RootSystem& rs, const HalfSpace& h) {
  if (rs.roots[h.root].positive) return h;
  // (-alpha)(x) >= k  <=>  alpha(x) <= -k
  return HalfSpace{rs.negate_root(h.root), h.sense == Sense::geq ? Sense::leq : Sense::geq,
                   neg(h.k)};
}

static bool half_less(const HalfSpace& a, const HalfSpace& b) {
  if (a.root != b.root) return a.root < b.root;
  if (a.sense != b.sense) return a.sense == Sense::geq && b.sense == Sense::leq;
  return lt(a.k, b.k);
}

ConvexRegion canonicalize(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind) {
  if (region_empty(rs, r, kind)) return r;
  ConvexRegion norm;
  for (const auto& h : r.halves) norm.halves.push_back(normalize_half(rs, h));
  std::sort(norm.halves.begin(), norm.halves.end(), half_less);
  norm.halves.erase(std::unique(norm.halves.begin(), norm.halves.end()), norm.halves.end());
  // drop constraints implied by the rest, scanning in sorted order
  for (size_t i = 0; i < norm.halves.size();) {
    ConvexRegion rest;
    for (size_t j = 0; j < norm.halves.size(); ++j)
      if (j != i) rest.halves.push_back(norm.halves[j]);
    if (region_subset(rs, rest, ConvexRegion{{norm.halves[i]}}, kind))
      norm = std::move(rest);
    else
      ++i;
  }
  return norm;
}

ConvexRegion region_pullback(const RootSystem& rs, const ConvexRegion& r, const AffineMap& m) {
  // alpha(m x) sense k  <=>  (w^{-1} alpha)(x) sense k - alpha(t)
  ConvexRegion out;
  int winv = rs.inv[m.elem];
  for (const auto& h : r.halves) {
    HalfSpace nh;
    nh.root = rs.root_action[winv][h.root];
    nh.sense = h.sense;
    nh.k = sub(h.k, eval_root(rs, h.root, m.translation));
    out.halves.push_back(std::move(nh));
  }
  return out;
}

ConvexRegion region_pushforward(const RootSystem& rs, const ConvexRegion& r, const AffineMap& m) {
  return region_pullback(rs, r, inverse(rs, m));
}

std::optional<Coords> pick_point(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind,
                                 const Vec& pref) {
  int n = rs.rank;
  auto rows = region_rows(rs, r);
  if (!rows_feasible(rows, n)) return std::nullopt;
  Coords out;
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    Support s = support_rows(n, rows, e, kind);
    Scalar v = Scalar::of(kind, pref[i]);
    if (s.lo && lt(v, *s.lo)) v = *s.lo;
    if (s.hi && lt(*s.hi, v)) v = *s.hi;
    out.push_back(v);
    // pin x_i = v before choosing the next coordinate
    rows.push_back({e, v});
    Vec ne(n, 0);
    ne[i] = -1;
    rows.push_back({ne, neg(v)});
  }
  return out;
}

std::optional<Coords> pick_point(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind) {
  return pick_point(rs, r, kind, Vec(rs.rank, 0));
}

bool maps_agree_on(const RootSystem& rs, const ConvexRegion& r, const AffineMap& m1,
                   const AffineMap& m2, LambdaKind kind) {
  if (region_empty(rs, r, kind)) return true;
  const Mat& a = rs.elements[m1.elem].matrix;
  const Mat& b = rs.elements[m2.elem].matrix;
  for (int i = 0; i < rs.rank; ++i) {
    Vec d(rs.rank);
    for (int j = 0; j < rs.rank; ++j) d[j] = a[i][j] - b[i][j];
    Scalar rhs = sub(m2.translation[i], m1.translation[i]);
    Support s = support(rs, r, d, kind);
    if (row_is_zero(d)) {
      if (!is_zero(rhs)) return false;
      continue;
    }
    if (!s.lo || !s.hi || !eq(*s.lo, rhs) || !eq(*s.hi, rhs)) return false;
  }
  return true;
}

Classification classify_region(const RootSystem& rs, const ConvexRegion& r, LambdaKind kind) {
  Classification c;
  c.k = Scalar::zero(kind);
  if (region_empty(rs, r, kind)) {
    c.cls = RegionClass::empty;
    return c;
  }
  if (region_is_all(rs, r, kind)) {
    c.cls = RegionClass::all;
    return c;
  }
  for (int root = 0; root < rs.positive_count; ++root) {
    Support s = support(rs, r, rs.roots[root].functional, kind);
    if (s.lo && s.hi && eq(*s.lo, *s.hi) &&
        region_equal(rs, r, ConvexRegion::wall(root, *s.lo), kind)) {
      c.cls = RegionClass::hyperplane;
      c.root = root;
      c.k = *s.lo;
      return c;
    }
  }
  for (int root = 0; root < rs.positive_count; ++root) {
    Support s = support(rs, r, rs.roots[root].functional, kind);
    if (s.lo && region_equal(rs, r, ConvexRegion::half(root, Sense::geq, *s.lo), kind)) {
      c.cls = RegionClass::half_apartment;
      c.root = root;
      c.sense = Sense::geq;
      c.k = *s.lo;
      return c;
    }
    if (s.hi && region_equal(rs, r, ConvexRegion::half(root, Sense::leq, *s.hi), kind)) {
      c.cls = RegionClass::half_apartment;
      c.root = root;
      c.sense = Sense::leq;
      c.k = *s.hi;
      return c;
    }
  }
  c.cls = RegionClass::proper;
  return c;
}

ConvexRegion simplex_region(const RootSystem& rs, const WeylSimplex& s) {
  ConvexRegion r;
  for (int j = 0; j < rs.rank; ++j) {
    int root = rs.root_action[s.elem][j];
    Scalar k = eval_root(rs, root, s.base);
    r.halves.push_back({root, Sense::geq, k});
    if (s.face & (1u << j)) r.halves.push_back({root, Sense::leq, k});
  }
  return r;
}

bool cone_fits_directions(const RootSystem& rs, const ConvexRegion& r, int elem, unsigned face) {
  for (const auto& h : r.halves) {
    const Vec& f = rs.roots[h.root].functional;
    for (int j = 0; j < rs.rank; ++j) {
      if (face & (1u << j)) continue;
      Rational d = dot(f, rs.rays[elem][j]);
      if (h.sense == Sense::geq ? d < 0 : d > 0) return false;
    }
  }
  return true;
}

std::optional<Coords> region_contains_cone(const RootSystem& rs, const ConvexRegion& r, int elem,
                                           unsigned face, LambdaKind kind) {
  if (!cone_fits_directions(rs, r, elem, face)) return std::nullopt;
  return pick_point(rs, r, kind);
}

bool germ_in_region(const RootSystem& rs, const ConvexRegion& r, const WeylSimplex& s) {
  if (!region_contains(rs, r, s.base)) return false;
  for (const auto& h : r.halves) {
    if (!eq(eval_root(rs, h.root, s.base), h.k)) continue; // slack constraint
    const Vec& f = rs.roots[h.root].functional;
    for (int j = 0; j < rs.rank; ++j) {
      if (s.face & (1u << j)) continue;
      Rational d = dot(f, rs.rays[s.elem][j]);
      if (h.sense == Sense::geq ? d < 0 : d > 0) return false;
    }
  }
  return true;
}

Metric metric_from_name(const std::string& s) {
  if (s == "d1") return Metric::d1;
  if (s == "dinf") return Metric::dinf;
  throw parse_error("unknown metric: " + s);
}

const char* metric_name(Metric m) { return m == Metric::d1 ? "d1" : "dinf"; }

Scalar metric(const RootSystem& rs, const Coords& x, const Coords& y, Metric which) {
  Coords diff = coords_sub(x, y);
  Scalar acc = Scalar::zero(diff.empty() ? LambdaKind::rationals : diff[0].kind);
  for (int root = 0; root < rs.positive_count; ++root) {
    Scalar v = abs(eval_root(rs, root, diff));
    if (which == Metric::d1)
      acc = add(acc, v);
    else if (lt(acc, v))
      acc = v;
  }
  return acc;
}

bool segment_membership(const RootSystem& rs, const Coords& x, const Coords& y, const Coords& z,
                        Metric which) {
  return eq(add(metric(rs, x, z, which), metric(rs, z, y, which)), metric(rs, x, y, which));
}

} // namespace bldg
