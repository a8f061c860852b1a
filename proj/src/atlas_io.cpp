#include "bldg/atlas.hpp"

#include <fstream>
#include <sstream>

namespace bldg {

namespace {

// signed 1-based index into the positive roots
int encode_root(const RootSystem& rs, int root) {
  if (rs.roots[root].positive) return root + 1;
  return -(rs.roots[root].negative_of + 1);
}

int decode_root(const RootSystem& rs, int signed_index) {
  int a = signed_index < 0 ? -signed_index : signed_index;
  if (a < 1 || a > rs.positive_count)
    throw parse_error("root index out of range: " + std::to_string(signed_index));
  int pos = a - 1;
  return signed_index > 0 ? pos : rs.roots[pos].negative_of;
}

json half_to_json(const RootSystem& rs, const HalfSpace& h) {
  json j;
  j["root"] = encode_root(rs, h.root);
  j["sense"] = h.sense == Sense::geq ? ">=" : "<=";
  j["k"] = to_string(h.k);
  return j;
}

HalfSpace half_from_json(const RootSystem& rs, LambdaKind kind, const json& j) {
  HalfSpace h;
  h.root = decode_root(rs, j.at("root").get<int>());
  std::string sense = j.at("sense").get<std::string>();
  if (sense == ">=")
    h.sense = Sense::geq;
  else if (sense == "<=")
    h.sense = Sense::leq;
  else
    throw parse_error("bad sense: " + sense);
  h.k = parse_scalar(kind, j.at("k").get<std::string>());
  return h;
}

json map_to_json(const RootSystem& rs, const AffineMap& m) {
  json j;
  j["word"] = rs.elements[m.elem].word;
  json tr = json::array();
  for (const auto& s : m.translation) tr.push_back(to_string(s));
  j["translation"] = tr;
  return j;
}

AffineMap map_from_json(const RootSystem& rs, LambdaKind kind, const json& j) {
  AffineMap m;
  m.elem = 0;
  for (const auto& e : j.at("word")) {
    int s = e.get<int>();
    if (s < 1 || s > rs.rank) throw parse_error("word letter out of range: " + std::to_string(s));
    m.elem = rs.mult[m.elem][rs.reflection[s - 1]];
  }
  const json& tr = j.at("translation");
  if ((int)tr.size() != rs.rank) throw parse_error("translation has wrong length");
  for (const auto& e : tr) m.translation.push_back(parse_scalar(kind, e.get<std::string>()));
  return m;
}

void position_of(const std::string& text, size_t byte, int& line, int& col) {
  line = 1;
  col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

} // namespace

std::string save_instance(const BuildingInstance& b) {
  json j;
  j["format"] = "building-instance";
  j["version"] = 1;
  j["name"] = b.name;
  j["root_system"] = b.rs->name;
  j["lambda"] = lambda_name(b.lambda);
  j["t_mode"] = tmode_name(b.tmode);
  j["apartments"] = b.apartments;
  j["provenance"] = b.provenance;
  json gl = json::array();
  for (const auto& g : b.gluings) {
    if (g.i >= g.j) continue; // one direction stored; the loader synthesizes the other
    json rec;
    rec["i"] = g.i;
    rec["j"] = g.j;
    json region = json::array();
    for (const auto& h : g.region.halves) region.push_back(half_to_json(*b.rs, h));
    rec["region"] = region;
    rec["map"] = map_to_json(*b.rs, g.map);
    gl.push_back(std::move(rec));
  }
  j["gluings"] = gl;
  return j.dump(2) + "\n";
}

BuildingInstance load_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 0, col = 0;
    position_of(text, e.byte ? e.byte - 1 : 0, line, col);
    throw parse_error(std::string("instance file: ") + e.what(), line, col);
  }
  try {
    if (j.at("format").get<std::string>() != "building-instance")
      throw parse_error("not a building-instance file");
    if (j.at("version").get<int>() != 1) throw parse_error("unsupported file version");
    BuildingInstance b;
    b.name = j.at("name").get<std::string>();
    b.rs = &root_system(j.at("root_system").get<std::string>());
    b.lambda = lambda_from_name(j.at("lambda").get<std::string>());
    b.tmode = tmode_from_name(j.at("t_mode").get<std::string>());
    b.apartments = j.at("apartments").get<int>();
    if (b.apartments < 1) throw parse_error("apartments must be positive");
    b.provenance = j.value("provenance", std::string());
    for (const auto& rec : j.at("gluings")) {
      Gluing g;
      g.i = rec.at("i").get<int>();
      g.j = rec.at("j").get<int>();
      if (g.i < 0 || g.i >= b.apartments || g.j < 0 || g.j >= b.apartments || g.i == g.j)
        throw parse_error("gluing indices out of range");
      if (b.gluing(g.i, g.j) || b.gluing(g.j, g.i))
        throw parse_error("duplicate gluing for pair (" + std::to_string(g.i) + "," +
                          std::to_string(g.j) + ")");
      for (const auto& h : rec.at("region")) g.region.halves.push_back(half_from_json(*b.rs, b.lambda, h));
      g.map = map_from_json(*b.rs, b.lambda, rec.at("map"));
      add_gluing(b, std::move(g));
    }
    sort_gluings(b);
    return b;
  } catch (const json::exception& e) {
    throw parse_error(std::string("instance file: ") + e.what());
  }
}

void write_instance_file(const BuildingInstance& b, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write " + path);
  out << save_instance(b);
}

BuildingInstance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_instance(ss.str());
}

} // namespace bldg
