#include "bldg/rootsystem.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>

namespace bldg {

Mat mat_identity(int n) {
  Mat m(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  int n = (int)a.size();
  Mat c(n, Vec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Vec mat_vec(const Mat& m, const Vec& v) {
  int n = (int)m.size();
  Vec r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += m[i][j] * v[j];
  return r;
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec primitive(const Vec& v) {
  BigInt l = 1;
  for (const auto& x : v) l = lcm(l, denominator(x));
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, numerator(x) * (l / denominator(x)));
  if (g == 0) return Vec(v.size(), 0);
  Vec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] * Rational(l, g);
  return r;
}

static std::string vec_key(const Vec& v) {
  std::ostringstream os;
  for (const auto& x : v) os << x << ";";
  return os.str();
}

static std::string mat_key(const Mat& m) {
  std::ostringstream os;
  for (const auto& row : m) os << vec_key(row) << "|";
  return os.str();
}

// reflection in the wall of `root` as a matrix on points
static Mat reflection_matrix(const Root& root, int n) {
  Mat m = mat_identity(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[a][b] -= root.coroot[a] * root.functional[b];
  return m;
}

static bool vec_nonneg(const Vec& v) {
  for (const auto& x : v)
    if (x < 0) return false;
  return true;
}

namespace {

struct Builder {
  RootSystem rs;

  // closes the simple-root triples (functional, coroot, vec) under all
  // simple reflections; positivity = vec componentwise >= 0 (holds for the
  // supported types)
  void close_roots(const std::vector<Root>& simple) {
    int n = rs.rank;
    std::vector<Root> all = simple;
    std::map<std::string, int> seen;
    for (int i = 0; i < (int)all.size(); ++i) seen[vec_key(all[i].vec)] = i;
    for (size_t head = 0; head < all.size(); ++head) {
      for (int s = 0; s < n; ++s) {
        Root img;
        const Root& beta = all[head];
        const Root& alpha = simple[s];
        Rational c = dot(beta.functional, alpha.coroot); // <beta, alpha^vee>
        img.functional.resize(n);
        for (int k = 0; k < n; ++k) img.functional[k] = beta.functional[k] - c * alpha.functional[k];
        img.coroot.resize(n);
        Rational ca = dot(alpha.functional, beta.coroot);
        for (int k = 0; k < n; ++k) img.coroot[k] = beta.coroot[k] - ca * alpha.coroot[k];
        img.vec.resize(n);
        Rational cv = dot(alpha.functional, beta.vec);
        for (int k = 0; k < n; ++k) img.vec[k] = beta.vec[k] - cv * alpha.coroot[k];
        if (!seen.count(vec_key(img.vec))) {
          seen[vec_key(img.vec)] = (int)all.size();
          all.push_back(img);
        }
      }
    }
    for (auto& r : all) r.positive = vec_nonneg(r.vec);
    std::stable_partition(all.begin(), all.end(), [](const Root& r) { return r.positive; });
    rs.positive_count = (int)std::count_if(all.begin(), all.end(), [](const Root& r) { return r.positive; });
    rs.roots = all;
    std::map<std::string, int> index;
    for (int i = 0; i < (int)rs.roots.size(); ++i) index[vec_key(rs.roots[i].vec)] = i;
    for (int i = 0; i < (int)rs.roots.size(); ++i) {
      Vec negv(n);
      for (int k = 0; k < n; ++k) negv[k] = -rs.roots[i].vec[k];
      rs.roots[i].negative_of = index.at(vec_key(negv));
    }
  }

  void enumerate_group() {
    int n = rs.rank;
    std::vector<Mat> gens(n);
    for (int s = 0; s < n; ++s) gens[s] = reflection_matrix(rs.roots[s], n);

    std::map<std::string, int> seen;
    rs.elements.push_back({{}, mat_identity(n)});
    seen[mat_key(rs.elements[0].matrix)] = 0;
    for (size_t head = 0; head < rs.elements.size(); ++head) {
      for (int s = 0; s < n; ++s) {
        Mat m = mat_mul(rs.elements[head].matrix, gens[s]);
        std::string k = mat_key(m);
        if (!seen.count(k)) {
          WeylElement e;
          e.word = rs.elements[head].word;
          e.word.push_back(s + 1);
          e.matrix = m;
          seen[k] = (int)rs.elements.size();
          rs.elements.push_back(std::move(e));
        }
      }
    }
    int W = (int)rs.elements.size();
    rs.diameter = rs.length(W - 1);
    rs.longest = W - 1;

    rs.mult.assign(W, std::vector<int>(W, 0));
    for (int a = 0; a < W; ++a)
      for (int b = 0; b < W; ++b)
        rs.mult[a][b] = seen.at(mat_key(mat_mul(rs.elements[a].matrix, rs.elements[b].matrix)));
    rs.inv.assign(W, 0);
    for (int a = 0; a < W; ++a)
      for (int b = 0; b < W; ++b)
        if (rs.mult[a][b] == 0) rs.inv[a] = b;

    std::map<std::string, int> root_index;
    for (int r = 0; r < (int)rs.roots.size(); ++r) root_index[vec_key(rs.roots[r].vec)] = r;
    rs.root_action.assign(W, std::vector<int>((int)rs.roots.size(), -1));
    for (int w = 0; w < W; ++w)
      for (int r = 0; r < (int)rs.roots.size(); ++r)
        rs.root_action[w][r] = root_index.at(vec_key(mat_vec(rs.elements[w].matrix, rs.roots[r].vec)));

    rs.reflection.assign(rs.roots.size(), -1);
    for (int r = 0; r < (int)rs.roots.size(); ++r)
      rs.reflection[r] = seen.at(mat_key(reflection_matrix(rs.roots[r], n)));
  }

  // fundamental coweights = columns of the inverse of the simple functional
  // matrix (rank <= 2, inverted directly)
  void coweights() {
    int n = rs.rank;
    Mat f(n, Vec(n));
    for (int i = 0; i < n; ++i) f[i] = rs.roots[i].functional;
    Mat inv(n, Vec(n));
    if (n == 1) {
      inv[0][0] = Rational(1) / f[0][0];
    } else {
      Rational det = f[0][0] * f[1][1] - f[0][1] * f[1][0];
      inv[0][0] = f[1][1] / det;
      inv[0][1] = -f[0][1] / det;
      inv[1][0] = -f[1][0] / det;
      inv[1][1] = f[0][0] / det;
    }
    rs.coweight.resize(n);
    for (int j = 0; j < n; ++j) {
      Vec col(n);
      for (int i = 0; i < n; ++i) col[i] = inv[i][j];
      rs.coweight[j] = primitive(col);
    }
  }

  void cone_tables() {
    int W = rs.size(), n = rs.rank;
    rs.rays.assign(W, std::vector<Vec>(n));
    for (int w = 0; w < W; ++w)
      for (int j = 0; j < n; ++j)
        rs.rays[w][j] = primitive(mat_vec(rs.elements[w].matrix, rs.coweight[j]));

    unsigned faces = 1u << n;
    rs.canon_elem.assign(W, std::vector<int>(faces, -1));
    std::vector<std::vector<std::string>> keys(W, std::vector<std::string>(faces));
    for (int w = 0; w < W; ++w)
      for (unsigned face = 0; face < faces; ++face) {
        auto set = rs.face_rays(w, face);
        std::ostringstream os;
        for (auto& r : set) os << vec_key(r) << "/";
        keys[w][face] = os.str();
      }
    for (unsigned face = 0; face < faces; ++face) {
      std::map<std::string, int> first;
      for (int w = 0; w < W; ++w) {
        auto it = first.find(keys[w][face]);
        if (it == first.end()) first[keys[w][face]] = w;
      }
      for (int w = 0; w < W; ++w) rs.canon_elem[w][face] = first.at(keys[w][face]);
    }
  }

  void pairing_table() {
    int R = (int)rs.roots.size();
    rs.pairing.assign(R, std::vector<Rational>(R));
    for (int a = 0; a < R; ++a)
      for (int b = 0; b < R; ++b) rs.pairing[a][b] = dot(rs.roots[a].functional, rs.roots[b].coroot);
  }
};

} // namespace

std::vector<Vec> RootSystem::face_rays(int w, unsigned face) const {
  std::vector<Vec> set;
  for (int j = 0; j < rank; ++j)
    if (!(face & (1u << j))) set.push_back(rays[w][j]);
  std::sort(set.begin(), set.end());
  return set;
}

static RootSystem build(const std::string& name) {
  Builder b;
  b.rs.name = name;
  std::vector<Root> simple;
  auto mk = [](Vec f, Vec c, Vec v) {
    Root r;
    r.functional = std::move(f);
    r.coroot = std::move(c);
    r.vec = std::move(v);
    return r;
  };
  if (name == "A1") {
    b.rs.rank = 1;
    simple = {mk({2}, {1}, {1})};
  } else if (name == "A2") {
    b.rs.rank = 2;
    simple = {mk({2, -1}, {1, 0}, {1, 0}), mk({-1, 2}, {0, 1}, {0, 1})};
  } else if (name == "B2") {
    // alpha_1 short (norm^2 = 1), alpha_2 long (norm^2 = 2)
    b.rs.rank = 2;
    simple = {mk({2, -1}, {1, 0}, {Rational(1, 2), 0}), mk({-2, 2}, {0, 1}, {0, 1})};
  } else {
    throw parse_error("unsupported root system: " + name);
  }
  b.close_roots(simple);
  b.enumerate_group();
  b.coweights();
  b.cone_tables();
  b.pairing_table();
  return b.rs;
}

const RootSystem& root_system(const std::string& name) {
  static std::map<std::string, std::unique_ptr<RootSystem>> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, std::make_unique<RootSystem>(build(name))).first;
  return *it->second;
}

Vec reflect_vec(const RootSystem& rs, int root, const Vec& x) {
  Rational c = dot(rs.roots[root].functional, x);
  Vec r = x;
  for (int k = 0; k < rs.rank; ++k) r[k] -= c * rs.roots[root].coroot[k];
  return r;
}

int find_root_by_vec(const RootSystem& rs, const Vec& v) {
  for (int r = 0; r < (int)rs.roots.size(); ++r)
    if (rs.roots[r].vec == v) return r;
  return -1;
}

int gallery_distance(const RootSystem& rs, int w1, int w2) {
  return rs.length(rs.mult[rs.inv[w1]][w2]);
}

} // namespace bldg
