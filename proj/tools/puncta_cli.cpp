// Command-line front end: reads fan and type files and prints JSON reports.

#include "puncta/degenerate.hpp"
#include "puncta/glue.hpp"
#include "puncta/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace puncta;

namespace {

constexpr int kOk = 0, kInputError = 1, kBudget = 2;

// Raised by a command that produced partial results under an exhausted budget.
struct Partial {
  Json report;
};

std::size_t budget_or(std::size_t fallback) {
  const char* env = std::getenv("PUNCTA_BUDGET");
  if (!env || !*env) return fallback;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw Error(std::string("PUNCTA_BUDGET is not a number: ") + env);
  }
}

// FNV-1a over the file bytes; enough to tell inputs apart in a report.
std::string digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream s;
  s << std::hex << h;
  return s.str();
}

IVec parse_vec(const std::string& s) {
  IVec v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      long long x = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      v.push_back(Integer(x));
    } catch (const std::exception&) {
      throw Error("invalid integer vector " + s);
    }
  }
  return v;
}

QVec parse_qvec(const std::string& s) {
  QVec v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      v.push_back(Rational(item));
    } catch (const std::exception&) {
      throw Error("invalid rational vector " + s);
    }
  }
  return v;
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Json qjson(const QVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json vec_list(const std::vector<IVec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

// Generators as sorted linear combinations of coordinate labels.
Json formatted(const BasicCone& b, const std::vector<IVec>& gens) {
  std::vector<std::string> out;
  for (const auto& g : gens) out.push_back(b.format(g));
  std::sort(out.begin(), out.end());
  return out;
}

Json cone_json(const Cone& c) {
  return {{"rays", vec_list(c.rays())}, {"lineality", vec_list(c.lineality())}, {"dim", c.dim()}};
}

Json basic_json(const BasicCone& b) {
  Json labels = b.labels;
  return {{"rank", b.rank()},
          {"coordinates", labels},
          {"dual_rays", vec_list(b.cone.rays())},
          {"monoid_generators", formatted(b, b.monoid.hilbert_basis())},
          {"pointed", b.pointed}};
}

std::size_t cone_id(const ConeComplex& cx, const std::string& id) {
  try {
    return cx.index_of(id);
  } catch (const Error&) {
    throw Error("unknown cone " + id);
  }
}

// Shared input options.
struct Inputs {
  std::string fan, type;
  FanFile load_fan() const { return read_fan_file(fan); }
  Json describe() const {
    Json j = Json::object();
    if (!fan.empty()) j["fan"] = {{"path", fan}, {"digest", digest(fan)}};
    if (!type.empty()) j["type"] = {{"path", type}, {"digest", digest(type)}};
    return j;
  }
};

Contraction contraction_or_class(const std::string& file, const PuncturedType& t, const ConeComplex& cx,
                                 std::size_t budget) {
  if (!file.empty()) return read_contraction_file(file, t, cx);
  auto c = find_contraction(t, class_of(t, cx), cx, budget);
  if (!c) throw Error("no contraction onto the class of the type");
  return *c;
}

Json degeneration_table(const DegenerationReport& r, const ConeComplex& cx) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"key", e.key},
                       {"m", to_json(e.m)},
                       {"aut", e.aut},
                       {"codim", e.codim},
                       {"type", emit_type(e.type, cx)}});
  Json bounds = {{"max_vertices", r.bounds.max_vertices},
                 {"max_edges", r.bounds.max_edges},
                 {"u_bound", to_json(r.bounds.u_bound)},
                 {"budget", r.bounds.budget}};
  bounds["codim"] = r.bounds.codim ? Json(*r.bounds.codim) : Json(nullptr);
  return {{"entries", entries},
          {"exhausted", r.exhausted},
          {"section_bound", r.section_bound},
          {"complete", r.section_bound && !r.exhausted},
          {"candidates", r.candidates},
          {"bounds", bounds}};
}

std::string text_table(const DegenerationReport& r) {
  std::ostringstream s;
  s << "#\tm\t|Aut|\tcodim\tvertices\tedges\n";
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const auto& e = r.entries[i];
    s << i + 1 << '\t' << e.m << '\t' << e.aut << '\t' << e.codim << '\t' << e.type.vertices.size() << '\t'
      << e.type.edges.size() << '\n';
  }
  s << "candidates: " << r.candidates << (r.exhausted ? " (budget exhausted, partial)" : "") << '\n';
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"puncta: combinatorics of punctured maps to cone complexes"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent JSON output");

  Inputs in;
  std::string command;
  std::function<Json()> run;
  std::string text_out;
  bool text = false;

  auto fan_opt = [&](CLI::App* c) { c->add_option("--fan", in.fan, "Fan file")->required()->check(CLI::ExistingFile); };
  auto type_opt = [&](CLI::App* c) {
    fan_opt(c);
    c->add_option("--type", in.type, "Type file")->required()->check(CLI::ExistingFile);
  };
  auto on = [&](CLI::App* c, std::string name, std::function<Json()> f) {
    c->callback([&, name, f] {
      command = name;
      run = f;
    });
  };

  // fan
  auto* fan = app.add_subcommand("fan", "Cone complexes")->require_subcommand(1);
  auto* fan_validate = fan->add_subcommand("validate", "Check a fan file");
  fan_opt(fan_validate);
  on(fan_validate, "fan validate", [&] {
    FanFile f = in.load_fan();
    const ConeComplex& cx = f.complex;
    Json cones = Json::array();
    for (const auto& c : cx.cones()) cones.push_back({{"id", c.id}, {"rank", c.lattice.rank}, {"dim", c.cone.dim()}});
    Json r = {{"valid", true}, {"cones", cones}, {"arrows", cx.arrows().size()}};
    r["degeneration"] = bool(f.degeneration);
    if (f.sections) r["sections"] = {{"count", f.sections->count()}, {"global", check_global_sections(cx, *f.sections)}};
    return r;
  });
  std::size_t mobius_l = 2;
  std::string mobius_out;
  auto* fan_mobius = fan->add_subcommand("mobius", "Emit the Möbius fan with l top cones");
  fan_mobius->add_option("--l", mobius_l, "Number of top-dimensional cones")->check(CLI::PositiveNumber);
  fan_mobius->add_option("--out", mobius_out, "Write the fan file here");
  on(fan_mobius, "fan mobius", [&] {
    FanFile f{build_mobius_fan(mobius_l), std::nullopt, std::nullopt};
    Json j = emit_fan(f);
    if (!mobius_out.empty()) {
      std::ofstream o(mobius_out);
      if (!o) throw Error("cannot write " + mobius_out);
      o << j.dump(2) << '\n';
      return Json{{"written", mobius_out}, {"cones", f.complex.size()}};
    }
    return Json{{"fan", j}};
  });

  // type
  auto* type = app.add_subcommand("type", "Punctured types")->require_subcommand(1);
  auto* t_basic = type->add_subcommand("basic", "Basic monoid and its dual cone");
  type_opt(t_basic);
  on(t_basic, "type basic", [&] {
    FanFile f = in.load_fan();
    PuncturedType t = read_type_file(in.type, f.complex);
    return basic_json(basic_cone(t, f.complex));
  });

  bool over = false;
  auto* t_real = type->add_subcommand("realizable", "Decide realizability");
  type_opt(t_real);
  t_real->add_flag("--over-degeneration", over, "Realizability over the fan's degeneration map");
  on(t_real, "type realizable", [&] {
    FanFile f = in.load_fan();
    PuncturedType t = read_type_file(in.type, f.complex);
    std::optional<DegenerationMap> p;
    if (over) {
      if (!f.degeneration) throw Error("fan has no degeneration map");
      p = f.degeneration;
    }
    Realization r = realizable(t, f.complex, p, budget_or(10000));
    Json j = {{"realizable", r.realizable}};
    if (r.realizable) {
      j["witness"] = to_json(r.witness);
      j["coordinates"] = r.cone->labels;
    } else {
      j["reason"] = r.reason;
    }
    if (r.realizable && t.is_global()) j["lifted"] = emit_type(r.lifted, f.complex);
    return j;
  });

  std::string contraction_file;
  auto* t_ideals = type->add_subcommand("ideals", "Puncturing and marking ideals");
  type_opt(t_ideals);
  t_ideals->add_option("--contraction", contraction_file, "Contraction file")->check(CLI::ExistingFile);
  on(t_ideals, "type ideals", [&] {
    FanFile f = in.load_fan();
    const ConeComplex& cx = f.complex;
    PuncturedType t = read_type_file(in.type, cx);
    BasicCone b = basic_cone(t, cx);
    MonoidIdeal k = puncturing_ideal(t, b, cx);
    FaceDecomposition d = puncturing_decomposition(t, b, cx);
    Json comps = Json::array();
    for (const auto& c : radical_support_components(d))
      comps.push_back({{"face", vec_list(c.face.rays())}, {"stratum_dim", c.stratum_dim}});
    Json excluded = Json::array();
    for (const auto& c : d.excluded_faces()) excluded.push_back(vec_list(c.rays()));
    Json j = {{"coordinates", b.labels},
              {"K", formatted(b, k.gens())},
              {"excluded_faces", excluded},
              {"components", comps}};
    if (!contraction_file.empty()) {
      Contraction c = read_contraction_file(contraction_file, t, cx);
      TypeIdeals ti = marking_ideal(c, b, cx);
      j["marking"] = {{"target", formatted(b, ti.target_gens)},
                      {"nodal", formatted(b, ti.nodal_gens)},
                      {"basic", formatted(b, ti.basic_gens)}};
      bool target_ok = realizable(c.target, cx, std::nullopt, budget_or(10000)).realizable;
      j["target_realizable"] = target_ok;
      if (target_ok) j["verified"] = verify_realizable_marking(c, b, cx);
    }
    return j;
  });

  std::string base = "smooth:0";
  auto* t_dim = type->add_subcommand("dimension", "Expected dimension of the stratum");
  type_opt(t_dim);
  t_dim->add_option("--base", base, "smooth:d or logpoint");
  on(t_dim, "type dimension", [&] {
    FanFile f = in.load_fan();
    PuncturedType t = read_type_file(in.type, f.complex);
    return Json{{"base", base}, {"dimension", to_json(moduli_dimension(t, f.complex, parse_base(base)))}};
  });

  std::size_t s_count = 0, r_count = 0;
  auto* t_local = type->add_subcommand("localmodel", "Toric local model of the stratum");
  type_opt(t_local);
  t_local->add_option("--contraction", contraction_file, "Contraction file (default: onto the class)")
      ->check(CLI::ExistingFile);
  t_local->add_option("--s", s_count, "Extra smooth directions");
  t_local->add_option("--r", r_count, "Extra torus directions");
  on(t_local, "type localmodel", [&] {
    FanFile f = in.load_fan();
    PuncturedType t = read_type_file(in.type, f.complex);
    BasicCone b = basic_cone(t, f.complex);
    Contraction c = contraction_or_class(contraction_file, t, f.complex, budget_or(100000));
    LocalModel m = local_model(c, b, f.complex, s_count, r_count);
    Json comps = Json::array();
    for (const auto& x : m.components) comps.push_back({{"face", vec_list(x.face.rays())}, {"dim", x.dim}});
    return Json{{"coordinates", b.labels},
                {"ideal", formatted(b, m.ideal_gens)},
                {"s", m.s},
                {"r", m.r},
                {"components", comps}};
  });

  std::string sections_file;
  auto* t_balance = type->add_subcommand("balance", "Balancing against global sections");
  type_opt(t_balance);
  t_balance->add_option("--sections", sections_file, "Fan file whose sections are used (default: --fan)")
      ->check(CLI::ExistingFile);
  on(t_balance, "type balance", [&] {
    FanFile f = in.load_fan();
    PuncturedType t = read_type_file(in.type, f.complex);
    std::optional<GlobalSections> gs = f.sections;
    if (!sections_file.empty()) {
      Json sj = read_json_file(sections_file);
      if (!sj.contains("sections")) sj = Json{{"sections", sj}};
      Json fj = emit_fan(f);
      fj["sections"] = sj["sections"];
      gs = parse_fan(fj).sections;
    }
    if (!gs) throw Error("no sections given");
    BalanceReport r = balancing_check(t, *gs, f.complex);
    return Json{{"balanced", r.ok}, {"residuals", vec_list(r.residuals)},
                {"total_degree_identity", total_degree_identity(t, *gs, f.complex)}};
  });

  std::string point, plot_format = "json";
  auto* t_plot = type->add_subcommand("plot", "Polylines of the tropical map at a point of the basic cone");
  type_opt(t_plot);
  t_plot->add_option("--point", point, "Coordinates, e.g. 1,2,1")->required();
  t_plot->add_option("--format", plot_format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  on(t_plot, "type plot", [&] {
    FanFile f = in.load_fan();
    const ConeComplex& cx = f.complex;
    PuncturedType t = read_type_file(in.type, cx);
    BasicCone b = basic_cone(t, cx);
    QVec x = parse_qvec(point);
    if (x.size() != b.rank()) throw Error("point has " + std::to_string(x.size()) + " coordinates, expected " +
                                          std::to_string(b.rank()));
    if (!b.cone.contains(x)) throw Error("point is not in the basic cone");
    auto segs = plot_segments(t, b, cx, x);
    if (plot_format == "tsv") {
      std::ostringstream s;
      s << "kind\tid\tcone\tstart\tend\tunbounded\n";
      auto join = [](const QVec& v) {
        std::string r;
        for (std::size_t i = 0; i < v.size(); ++i) r += (i ? "," : "") + v[i].str();
        return r;
      };
      for (const auto& g : segs)
        s << g.kind << '\t' << g.id << '\t' << cx.cone(g.cone).id << '\t' << join(g.start) << '\t' << join(g.end)
          << '\t' << (g.unbounded ? 1 : 0) << '\n';
      text = true;
      text_out = s.str();
      return Json();
    }
    Json a = Json::array();
    for (const auto& g : segs)
      a.push_back({{"kind", g.kind}, {"id", g.id}, {"cone", cx.cone(g.cone).id}, {"start", qjson(g.start)},
                   {"end", qjson(g.end)}, {"unbounded", g.unbounded}});
    return Json{{"segments", a}};
  });

  // contact
  std::string cone_name, target_name, u_str;
  auto* contact = app.add_subcommand("contact", "Global contact orders")->require_subcommand(1);
  auto contact_opts = [&](CLI::App* c) {
    fan_opt(c);
    c->add_option("--cone", cone_name, "Base cone (default: the target cone)");
    c->add_option("--target", target_name, "Cone holding u (default: first cone of matching rank)");
    c->add_option("--u", u_str, "Contact order, e.g. 0,1,0")->required();
  };
  // Resolves base and target cones for the contact subcommands.
  auto contact_cones = [&](const ConeComplex& cx, const IVec& u) {
    std::size_t target = cx.size();
    if (!target_name.empty()) target = cone_id(cx, target_name);
    else
      for (std::size_t i = 0; i < cx.size() && target == cx.size(); ++i)
        if (cx.rank(i) == u.size()) target = i;
    if (target == cx.size()) throw Error("no cone of rank " + std::to_string(u.size()));
    if (cx.rank(target) != u.size()) throw Error("u has the wrong length for cone " + cx.cone(target).id);
    std::size_t sigma = cone_name.empty() ? target : cone_id(cx, cone_name);
    if (!first_arrow(cx, sigma, target)) throw Error(cx.cone(sigma).id + " is not a face of " + cx.cone(target).id);
    return std::pair{sigma, target};
  };
  auto orbit_json = [](const ConeComplex& cx, const ContactClass& cls) {
    Json reps = Json::array();
    for (std::size_t i = 0; i < cls.star.objects.size(); ++i) {
      auto r = cls.representatives(i);
      if (r.empty()) continue;
      reps.push_back({{"cone", cx.cone(cx.arrows()[cls.star.objects[i]].dst).id}, {"u", vec_list(r)}});
    }
    return Json{{"base", cx.cone(cls.base).id},
                {"representatives", reps},
                {"finite_monodromy", to_string(cls.finite_monodromy)},
                {"monodromy_free", to_string(cls.monodromy_free)}};
  };

  auto* c_orbit = contact->add_subcommand("orbit", "Orbit of a contact order in the star of a cone");
  contact_opts(c_orbit);
  on(c_orbit, "contact orbit", [&] {
    FanFile f = in.load_fan();
    IVec u = parse_vec(u_str);
    auto [sigma, target] = contact_cones(f.complex, u);
    ContactClass cls = contact_orbit(f.complex, sigma, target, u, budget_or(10000));
    if (cls.finite_monodromy == Tri::Unknown) throw Partial{orbit_json(f.complex, cls)};
    return orbit_json(f.complex, cls);
  });

  auto* c_comp = contact->add_subcommand("components", "Connected contact component of (cone, u)");
  contact_opts(c_comp);
  on(c_comp, "contact components", [&] {
    FanFile f = in.load_fan();
    IVec u = parse_vec(u_str);
    auto [sigma, target] = contact_cones(f.complex, u);
    (void)sigma;
    ContactComponent comp = connected_contact_component(f.complex, target, u, budget_or(10000));
    Json pieces = Json::array();
    for (const auto& [c, w] : comp.pieces) pieces.push_back({{"cone", f.complex.cone(c).id}, {"u", to_json(w)}});
    Json j = {{"pieces", comp.pieces.size()}, {"irreducible_pieces", pieces}, {"nodes", comp.nodes},
              {"complete", comp.complete}};
    if (!comp.complete) throw Partial{j};
    return j;
  });

  auto* c_eval = contact->add_subcommand("evalstratum", "Evaluation stratum of a global contact order");
  contact_opts(c_eval);
  on(c_eval, "contact evalstratum", [&] {
    FanFile f = in.load_fan();
    const ConeComplex& cx = f.complex;
    IVec u = parse_vec(u_str);
    auto [sigma, target] = contact_cones(cx, u);
    ContactClass cls = contact_orbit(cx, sigma, target, u, budget_or(10000));
    EvaluationStratum es = evaluation_stratum(cx, cls);
    Json strata = Json::array();
    for (const auto& sd : es.strata) {
      Json support = Json::array();
      for (const auto& c : sd.reduced_support) support.push_back(cone_json(c));
      Json gens = sd.ideal_u.form() == MonoidIdeal::Form::Generated ? vec_list(sd.ideal_u.gens()) : Json(nullptr);
      strata.push_back({{"cone", cx.cone(cx.arrows()[cls.star.objects[sd.object]].dst).id},
                        {"representatives", vec_list(sd.reps)},
                        {"ideal_u", gens},
                        {"reduced_support", support}});
    }
    return Json{{"orbit", orbit_json(cx, cls)}, {"strata", strata}};
  });

  // glue and split
  std::vector<std::string> part_files;
  std::string match_str, edges_str;
  bool allow_disconnected = false, check = false;
  auto* glue = app.add_subcommand("glue", "Glue types along matched legs");
  fan_opt(glue);
  glue->add_option("parts", part_files, "Type files")->required()->check(CLI::ExistingFile);
  glue->add_option("--match", match_str, "Leg pairs, e.g. E1.src=E1.dst,E2.src=E2.dst");
  glue->add_flag("--allow-disconnected", allow_disconnected);
  glue->add_flag("--check", check, "Also run the gluing compatibility check");
  on(glue, "glue", [&] {
    FanFile f = in.load_fan();
    std::vector<PuncturedType> parts;
    for (const auto& p : part_files) parts.push_back(read_type_file(p, f.complex));
    auto matches = parse_matches(match_str);
    PuncturedType g = glue_types(parts, matches, f.complex, allow_disconnected);
    Json j = {{"type", emit_type(g, f.complex)}, {"basic", basic_json(basic_cone(g, f.complex))}};
    if (check) {
      GluingCheck c = check_gluing_compatibility(parts, matches, g, f.complex);
      j["check"] = {{"ok", c.ok}, {"message", c.message}, {"points", c.points}};
    }
    return j;
  });

  auto* split = app.add_subcommand("split", "Split a type at edges");
  type_opt(split);
  split->add_option("--edges", edges_str, "Edge ids, e.g. E1,E2")->required();
  on(split, "split", [&] {
    FanFile f = in.load_fan();
    PuncturedType t = read_type_file(in.type, f.complex);
    Json parts = Json::array();
    for (const auto& p : split_type(t, split_ids(edges_str), f.complex)) parts.push_back(emit_type(p, f.complex));
    return Json{{"parts", parts}};
  });

  // decompose
  DegenerationBounds bounds;
  long long codim = 1;
  std::string table_format = "json";
  bool no_degeneration = false;
  auto* dec = app.add_subcommand("decompose", "Enumerate degenerations of a type with multiplicities");
  type_opt(dec);
  dec->add_option("--max-vertices", bounds.max_vertices)->capture_default_str();
  dec->add_option("--max-edges", bounds.max_edges)->capture_default_str();
  std::string u_bound = "1";
  dec->add_option("--u-bound", u_bound, "Bound on |coordinates| of contact orders")->capture_default_str();
  dec->add_option("--codim", codim, "Codimension filter; negative keeps all")->capture_default_str();
  dec->add_option("--budget", bounds.budget, "Candidate budget (PUNCTA_BUDGET overrides the default)");
  dec->add_flag("--no-degeneration", no_degeneration, "Ignore the fan's degeneration map");
  dec->add_option("--format", table_format, "json or text")->check(CLI::IsMember({"json", "text"}));
  on(dec, "decompose", [&] {
    FanFile f = in.load_fan();
    PuncturedType t = read_type_file(in.type, f.complex);
    if (dec->count("--budget") == 0) bounds.budget = budget_or(bounds.budget);
    bounds.u_bound = Integer(u_bound);
    bounds.codim = codim < 0 ? std::nullopt : std::optional<std::size_t>(codim);
    bounds.sections = f.sections;
    std::optional<DegenerationMap> p;
    if (!no_degeneration) p = f.degeneration;
    DegenerationReport r = enumerate_degenerations(t, f.complex, p, bounds);
    Json j = degeneration_table(r, f.complex);
    if (table_format == "text") {
      text = true;
      text_out = text_table(r);
    }
    if (r.exhausted) throw Partial{j};
    return j;
  });

  // vdim
  long long g = 0, k = 0, c1a = 0, n = 0;
  auto* vdim = app.add_subcommand("vdim", "Relative virtual dimension c1.A + n(1-g-k)");
  vdim->add_option("--g", g)->required();
  vdim->add_option("--k", k)->required();
  vdim->add_option("--c1a", c1a)->required();
  vdim->add_option("--n", n)->required();
  on(vdim, "vdim", [&] { return Json{{"vdim", to_json(virtual_dimension(g, k, c1a, n))}}; });

  auto emit = [&](const Json& j) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << '\n';
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit({{"error", {{"kind", "usage"}, {"message", e.what()}}}});
    return kInputError;
  }

  Json report = {{"command", command}, {"inputs", in.describe()}, {"warnings", Json::array()}};
  try {
    Json result = run();
    if (text) {
      std::cout << text_out;
      return kOk;
    }
    report["result"] = result;
    emit(report);
    return kOk;
  } catch (const Partial& p) {
    if (text) {
      std::cout << text_out;
      return kBudget;
    }
    report["result"] = p.report;
    report["partial"] = true;
    report["warnings"].push_back("budget exhausted; results are partial");
    emit(report);
    return kBudget;
  } catch (const BudgetExceeded& e) {
    emit({{"error", {{"kind", "budget"}, {"message", e.what()}}}, {"command", command}});
    return kBudget;
  } catch (const Error& e) {
    emit({{"error", {{"kind", "input"}, {"message", e.what()}}}, {"command", command}});
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    emit({{"error", {{"kind", "input"}, {"message", e.what()}}}, {"command", command}});
    return kInputError;
  }
}
