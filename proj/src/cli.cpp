#include "bldg/cli.hpp"

#include "CLI11.hpp"
#include "bldg/checks.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace bldg {

namespace {

struct RunConfig {
  std::string instance_path;
  std::string output_path;
  std::string format = "text";
  long radius = 8;
  int den = 4;
  int samples = 1000;
  uint64_t seed = 1;
  std::string metric_name = "d1";

  SampleWindow window() const { return SampleWindow{radius, den, samples, seed}; }
  Metric metric() const { return metric_from_name(metric_name); }

  json echo() const {
    json j;
    j["window"] = radius;
    j["den"] = den;
    j["samples"] = samples;
    j["seed"] = seed;
    j["metric"] = metric_name;
    return j;
  }
};

void add_window_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--window", cfg.radius, "coordinate bound R of the sample window");
  cmd->add_option("--den", cfg.den, "denominator bound q of the sample window");
  cmd->add_option("--samples", cfg.samples, "random sample count N");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--metric", cfg.metric_name, "d1 | dinf")
      ->check(CLI::IsMember({"d1", "dinf"}));
}

void add_format_flag(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));
}

BuildingInstance load_for(const RunConfig& cfg) {
  if (cfg.instance_path.empty()) throw parse_error("--instance FILE is required");
  return load_instance_file(cfg.instance_path);
}

void print_reports(const RunConfig& cfg, const std::string& command,
                   const BuildingInstance& b, const std::vector<CheckReport>& reports,
                   bool pass, std::ostream& out) {
  if (cfg.format == "json") {
    json j;
    j["command"] = command;
    j["instance"] = b.name;
    j["config"] = cfg.echo();
    json rs = json::array();
    for (const auto& r : reports) rs.push_back(r.to_json());
    j["reports"] = rs;
    j["verdict"] = pass ? "pass" : "fail";
    out << j.dump(2) << "\n";
    return;
  }
  out << command << " " << b.name << "\n";
  for (const auto& r : reports) {
    out << "  " << r.name;
    for (size_t i = r.name.size(); i < 18; ++i) out << ' ';
    out << verdict_name(r.verdict) << "  cases=" << r.cases << " (grid " << r.grid_cases
        << ", random " << r.random_cases << ")";
    if (!r.witness.is_null()) out << "  witness " << r.witness.dump();
    out << "\n";
  }
  out << "overall: " << (pass ? "pass" : "fail") << "\n";
}

// germ id: "chart:(coords):word" with word a string of simple-reflection
// digits, or "e" for the identity
Germ parse_germ(const BuildingInstance& b, const std::string& text) {
  size_t first = text.find(':');
  size_t last = text.rfind(':');
  if (first == std::string::npos || last == first)
    throw parse_error("germ must look like chart:(coords):word: '" + text + "'");
  BPoint base = parse_bpoint(b, text.substr(0, last));
  std::string word = text.substr(last + 1);
  int elem = 0;
  if (word != "e")
    for (char ch : word) {
      if (ch < '1' || ch > '0' + b.rs->rank) throw parse_error("bad word letter in germ id");
      elem = b.rs->mult[elem][b.rs->reflection[ch - '1']];
    }
  return canonical_germ(b, base.chart, base.local, elem, 0);
}

int cmd_generate(const RunConfig& cfg, const std::string& kind, const std::string& type,
                 const std::string& lambda, const std::string& tmode, int wall_root, int branches,
                 std::ostream& out) {
  BuildingInstance b = generate(kind, type, lambda_from_name(lambda), wall_root - 1, branches,
                                tmode_from_name(tmode));
  std::string text = save_instance(b);
  if (cfg.output_path.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw parse_error("cannot write " + cfg.output_path);
    f << text;
  }
  return 0;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  BuildingInstance b = load_for(cfg);
  CheckReport rep = validate_atlas(b);
  print_reports(cfg, "validate", b, {rep}, rep.ok(), out);
  return rep.ok() ? 0 : 1;
}

int cmd_check(const RunConfig& cfg, const std::string& axioms, std::ostream& out) {
  BuildingInstance b = load_for(cfg);
  std::vector<CheckReport> reports;
  reports.push_back(validate_atlas(b));
  bool pass = reports.back().ok();
  if (pass) {
    std::vector<std::string> wanted;
    if (axioms == "all") {
      wanted = all_axioms();
    } else {
      std::stringstream ss(axioms);
      std::string item;
      while (std::getline(ss, item, ',')) wanted.push_back(canonical_axiom(item));
    }
    for (const auto& a : wanted) {
      reports.push_back(check_axiom(b, a, cfg.window(), cfg.metric()));
      pass = pass && reports.back().ok();
    }
  }
  print_reports(cfg, "check", b, reports, pass, out);
  return pass ? 0 : 1;
}

int cmd_matrix(const RunConfig& cfg, std::ostream& out) {
  BuildingInstance b = load_for(cfg);
  CheckReport valid = validate_atlas(b);
  if (!valid.ok()) {
    print_reports(cfg, "matrix", b, {valid}, false, out);
    return 1;
  }
  MatrixResult m = bundle_matrix(b, cfg.window(), cfg.metric());
  if (cfg.format == "json") {
    json j;
    j["command"] = "matrix";
    j["instance"] = b.name;
    j["config"] = cfg.echo();
    j["matrix"] = m.to_json();
    out << j.dump(2) << "\n";
  } else {
    out << "matrix " << b.name << "\n";
    for (const auto& bundle : m.bundles)
      out << "  bundle " << bundle.name << ": " << verdict_name(bundle.verdict) << "\n";
    for (const auto& a : m.axioms)
      if (a.verdict == Verdict::fail) out << "  " << a.name << " witness " << a.witness.dump() << "\n";
    out << "overall: " << (m.all_pass() ? "pass" : "fail") << "\n";
  }
  return m.all_pass() ? 0 : 1;
}

int cmd_residue(const RunConfig& cfg, const std::string& at, std::ostream& out) {
  BuildingInstance b = load_for(cfg);
  BPoint x = parse_bpoint(b, at);
  ResidueComplex rc = residue(b, x);
  if (cfg.format == "json") {
    json j;
    j["command"] = "residue";
    j["instance"] = b.name;
    j["at"] = bpoint_to_string(rc.at);
    j["chambers"] = json::array();
    for (const auto& g : rc.chambers) j["chambers"].push_back(germ_to_string(g, *b.rs));
    j["apartments"] = json::array();
    for (size_t a = 0; a < rc.apartments.size(); ++a)
      j["apartments"].push_back({{"chart", rc.apartment_chart[a]}, {"chambers", rc.apartments[a]}});
    json adj = json::array();
    for (const auto& row : rc.adjacency) adj.push_back(row);
    j["adjacency"] = adj;
    j["building"] = rc.building_check.to_json();
    out << j.dump(2) << "\n";
  } else {
    out << "residue of " << b.name << " at " << bpoint_to_string(rc.at) << "\n";
    out << "  chambers: " << rc.chambers.size() << "\n";
    for (size_t i = 0; i < rc.chambers.size(); ++i)
      out << "    [" << i << "] " << germ_to_string(rc.chambers[i], *b.rs) << "\n";
    out << "  apartments: " << rc.apartments.size() << "\n";
    for (size_t a = 0; a < rc.apartments.size(); ++a) {
      out << "    chart " << rc.apartment_chart[a] << ":";
      for (int g : rc.apartments[a]) out << " " << g;
      out << "\n";
    }
    out << "  adjacency:";
    for (size_t i = 0; i < rc.adjacency.size(); ++i)
      for (int jg : rc.adjacency[i])
        if ((int)i < jg) out << " (" << i << "," << jg << ")";
    out << "\n  building: " << verdict_name(rc.building_check.verdict) << "\n";
  }
  return rc.building_check.ok() ? 0 : 1;
}

int cmd_infinity(const RunConfig& cfg, std::ostream& out) {
  BuildingInstance b = load_for(cfg);
  BoundaryComplex bc = boundary_complex(b);
  auto class_name = [&](const ParallelClass& c) {
    std::ostringstream os;
    os << c.chart << ":";
    const auto& word = b.rs->elements[c.elem].word;
    if (word.empty()) os << "e";
    for (int s : word) os << s;
    return os.str();
  };
  if (cfg.format == "json") {
    json j;
    j["command"] = "infinity";
    j["instance"] = b.name;
    j["chambers"] = json::array();
    for (const auto& c : bc.chambers) j["chambers"].push_back(class_name(c));
    j["panels"] = (int)bc.panels.size();
    j["apartments"] = json::array();
    for (const auto& ap : bc.apartments) j["apartments"].push_back(ap);
    j["building"] = bc.building_check.to_json();
    out << j.dump(2) << "\n";
  } else {
    out << "boundary of " << b.name << "\n";
    out << "  chambers: " << bc.chambers.size() << "\n";
    for (const auto& c : bc.chambers)
      out << "    [" << c.id << "] " << class_name(c) << "\n";
    out << "  apartments: " << bc.apartments.size() << "\n";
    for (size_t chart = 0; chart < bc.apartments.size(); ++chart) {
      out << "    chart " << chart << ":";
      for (int g : bc.apartments[chart]) out << " " << g;
      out << "\n";
    }
    out << "  building: " << verdict_name(bc.building_check.verdict) << "\n";
  }
  return bc.building_check.ok() ? 0 : 1;
}

int cmd_sundial(const RunConfig& cfg, int apartment, int chamber, std::ostream& out) {
  BuildingInstance b = load_for(cfg);
  BoundaryComplex bc = boundary_complex(b);
  auto res = sundial(b, bc, apartment, chamber);
  if (cfg.format == "json") {
    json j;
    j["command"] = "sundial";
    j["instance"] = b.name;
    j["apartment"] = apartment;
    j["chamber"] = chamber;
    if (res) {
      j["opposite"] = {res->d1, res->d2};
      j["apartments"] = {res->a1, res->a2};
      j["triple_intersection"] =
          res->triple.cls == RegionClass::hyperplane
              ? json{{"kind", "hyperplane"}, {"root", res->triple.root + 1}, {"k", to_string(res->triple.k)}}
              : json{{"kind", "other"}};
      j["verdict"] = "pass";
    } else {
      j["verdict"] = "fail";
    }
    out << j.dump(2) << "\n";
  } else if (res) {
    out << "sundial: chamber " << chamber << " against apartment " << apartment << "\n";
    out << "  opposite chambers: " << res->d1 << " " << res->d2 << "\n";
    out << "  apartments: " << res->a1 << " " << res->a2 << "\n";
    out << "  triple intersection: "
        << (res->triple.cls == RegionClass::hyperplane ? "hyperplane" : "other") << " of root "
        << res->triple.root + 1 << " at " << to_string(res->triple.k) << "\n";
  } else {
    out << "sundial: defect (missing apartments or non-wall intersection)\n";
  }
  return res ? 0 : 1;
}

int cmd_retract(const RunConfig& cfg, int apartment, const std::string& germ_id,
                const std::string& point, std::ostream& out) {
  BuildingInstance b = load_for(cfg);
  Germ mu = parse_germ(b, germ_id);
  Retraction r = make_retraction(b, apartment, mu);
  BPoint y = parse_bpoint(b, point);
  auto img = retract(b, r, y);
  if (cfg.format == "json") {
    json j;
    j["command"] = "retract";
    j["instance"] = b.name;
    j["apartment"] = apartment;
    j["germ"] = germ_to_string(mu, *b.rs);
    j["point"] = bpoint_to_string(y);
    if (img)
      j["image"] = bpoint_to_string(*img);
    else
      j["defect"] = "no chart contains the point and the germ";
    out << j.dump(2) << "\n";
  } else if (img) {
    out << "retract " << bpoint_to_string(y) << " -> " << bpoint_to_string(*img) << "\n";
  } else {
    out << "retract: defect, no chart contains the point and the germ\n";
  }
  return img ? 0 : 1;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finitely presented generalized affine buildings: generators, axiom checks, "
               "residues, boundaries, retractions"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string kind = "star", type = "A1", lambda = "Z", tmode = "full";
  int wall_root = 1, branches = 3, apartment = 0, chamber = 0;
  std::string axioms = "all", at, germ_id, point;

  CLI::App* g = app.add_subcommand("generate", "emit an instance file");
  g->add_option("kind", kind, "thin | star | star-seed")->required()
      ->check(CLI::IsMember({"thin", "star", "star-seed"}));
  g->add_option("--type", type, "root system: A1 | A2 | B2");
  g->add_option("--lambda", lambda, "ordered group: Z | Q | QxQ_lex");
  g->add_option("--t-mode", tmode, "translation group: full | lattice");
  g->add_option("--wall-root", wall_root, "1-based positive root of the wall");
  g->add_option("--branches", branches, "number of half-apartments for star");
  g->add_option("-o,--output", cfg.output_path, "output file (default stdout)");

  CLI::App* v = app.add_subcommand("validate", "structural atlas validation");
  v->add_option("--instance", cfg.instance_path, "instance file")->required();
  add_format_flag(v, cfg);

  CLI::App* c = app.add_subcommand("check", "windowed axiom checks");
  c->add_option("--instance", cfg.instance_path, "instance file")->required();
  c->add_option("--axioms", axioms, "all or a comma-separated list");
  add_window_flags(c, cfg);
  add_format_flag(c, cfg);

  CLI::App* m = app.add_subcommand("matrix", "the six equivalent axiom bundles");
  m->add_option("--instance", cfg.instance_path, "instance file")->required();
  add_window_flags(m, cfg);
  add_format_flag(m, cfg);

  CLI::App* r = app.add_subcommand("residue", "the residue building at a point");
  r->add_option("--instance", cfg.instance_path, "instance file")->required();
  r->add_option("--at", at, "point, chart:(c1,...,cn)")->required();
  add_format_flag(r, cfg);

  CLI::App* i = app.add_subcommand("infinity", "the building at infinity");
  i->add_option("--instance", cfg.instance_path, "instance file")->required();
  add_format_flag(i, cfg);

  CLI::App* s = app.add_subcommand("sundial", "the sundial configuration");
  s->add_option("--instance", cfg.instance_path, "instance file")->required();
  s->add_option("--apartment", apartment, "apartment index")->required();
  s->add_option("--chamber", chamber, "boundary chamber class id")->required();
  add_format_flag(s, cfg);

  CLI::App* re = app.add_subcommand("retract", "evaluate a germ-centered retraction");
  re->add_option("--instance", cfg.instance_path, "instance file")->required();
  re->add_option("--apartment", apartment, "target apartment")->required();
  re->add_option("--germ", germ_id, "center germ, chart:(coords):word")->required();
  re->add_option("--point", point, "point to retract, chart:(coords)")->required();
  add_format_flag(re, cfg);

  std::vector<const char*> argv;
  argv.push_back("buildings");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (g->parsed()) return cmd_generate(cfg, kind, type, lambda, tmode, wall_root, branches, out);
    if (v->parsed()) return cmd_validate(cfg, out);
    if (c->parsed()) return cmd_check(cfg, axioms, out);
    if (m->parsed()) return cmd_matrix(cfg, out);
    if (r->parsed()) return cmd_residue(cfg, at, out);
    if (i->parsed()) return cmd_infinity(cfg, out);
    if (s->parsed()) return cmd_sundial(cfg, apartment, chamber, out);
    if (re->parsed()) return cmd_retract(cfg, apartment, germ_id, point, out);
  } catch (const parse_error& e) {
    err << "error: " << e.what();
    if (e.line) err << " (line " << e.line << ", column " << e.column << ")";
    err << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

} // namespace bldg
