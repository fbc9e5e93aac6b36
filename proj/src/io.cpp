#include "puncta/io.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <algorithm>
#include <set>

namespace puncta {

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw Error("missing field at " + (path.empty() ? std::string("/") : path) + ": " + key);
  return j.at(key);
}

Integer parse_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      return Integer(s);
    } catch (const std::exception&) {
    }
  }
  throw Error("invalid integer at " + path);
}

IVec parse_ivec(const Json& j, const std::string& path) {
  if (!j.is_array()) throw Error("expected an integer array at " + path);
  IVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_integer(j[i], path + "/" + std::to_string(i)));
  return v;
}

IMat parse_imat(const Json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  if (!j.is_array()) throw Error("expected a matrix at " + path);
  // A matrix without columns may be written as [] or as rows of [].
  if (cols == 0 && j.empty()) return IMat(rows, 0);
  if (j.size() != rows) throw Error("matrix has wrong number of rows at " + path);
  IMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    IVec r = parse_ivec(j[i], path + "/" + std::to_string(i));
    if (r.size() != cols) throw Error("matrix row has wrong length at " + path + "/" + std::to_string(i));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
  }
  return m;
}

Json to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(x.convert_to<long long>());
  return Json(x.str());
}

Json to_json(const Rational& x) {
  if (denominator(x) == 1) return to_json(Integer(numerator(x)));
  return Json(x.str());
}

Json to_json(const IVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const IMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

FanFile parse_fan(const Json& j) {
  if (!j.is_object()) throw Error("fan file must be a JSON object");
  std::map<std::string, std::size_t> lattices;
  if (j.contains("lattices")) {
    const Json& ls = j.at("lattices");
    if (!ls.is_array()) throw Error("expected an array at /lattices");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const std::string p = "/lattices/" + std::to_string(i);
      std::string id = require(ls[i], "id", p).get<std::string>();
      Integer r = parse_integer(require(ls[i], "rank", p), p + "/rank");
      if (r < 0) throw Error("negative rank at " + p);
      lattices[id] = r.convert_to<std::size_t>();
    }
  }
  const Json& cs = require(j, "cones", "");
  if (!cs.is_array()) throw Error("expected an array at /cones");
  std::vector<ComplexCone> cones;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string p = "/cones/" + std::to_string(i);
    const Json& c = cs[i];
    ComplexCone cc;
    cc.id = require(c, "id", p).get<std::string>();
    if (c.contains("lattice")) {
      std::string lid = c.at("lattice").get<std::string>();
      auto it = lattices.find(lid);
      if (it == lattices.end()) throw Error("unknown lattice at " + p + "/lattice");
      cc.lattice = {lid, it->second};
    } else if (c.contains("lattice_rank")) {
      Integer r = parse_integer(c.at("lattice_rank"), p + "/lattice_rank");
      cc.lattice = {"N_" + cc.id, r.convert_to<std::size_t>()};
      cc.anonymous_lattice = true;
    } else {
      throw Error("missing field at " + p + ": lattice_rank");
    }
    const Json& rs = require(c, "rays", p);
    if (!rs.is_array()) throw Error("expected an array at " + p + "/rays");
    std::vector<IVec> rays;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      IVec r = parse_ivec(rs[k], p + "/rays/" + std::to_string(k));
      if (r.size() != cc.lattice.rank) throw Error("ray has wrong length at " + p + "/rays/" + std::to_string(k));
      rays.push_back(r);
    }
    cc.cone = Cone::from_generators(cc.lattice.rank, rays);
    cones.push_back(std::move(cc));
  }
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < cones.size(); ++i) idx[cones[i].id] = i;
  auto cone_ref = [&](const Json& v, const std::string& p) {
    if (!v.is_string() || !idx.count(v.get<std::string>())) throw Error("unknown cone at " + p);
    return idx[v.get<std::string>()];
  };
  std::vector<FaceArrow> arrows;
  if (j.contains("faces")) {
    const Json& fs = j.at("faces");
    if (!fs.is_array()) throw Error("expected an array at /faces");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string p = "/faces/" + std::to_string(i);
      std::size_t s = cone_ref(require(fs[i], "src", p), p + "/src");
      std::size_t d = cone_ref(require(fs[i], "dst", p), p + "/dst");
      IMat m = parse_imat(require(fs[i], "matrix", p), cones[d].lattice.rank, cones[s].lattice.rank,
                          p + "/matrix");
      try {
        check_face_arrow(cones[s], cones[d], m);
      } catch (const Error& e) {
        throw Error(std::string(e.what()) + " at " + p);
      }
      arrows.push_back({s, d, m});
    }
  }
  FanFile f;
  f.complex = ConeComplex(std::move(cones), std::move(arrows));
  const ConeComplex& cx = f.complex;
  if (j.contains("degeneration")) {
    const Json& dj = j.at("degeneration");
    DegenerationMap p;
    for (std::size_t i = 0; i < cx.size(); ++i) {
      const std::string pp = "/degeneration/" + cx.cone(i).id;
      p.functional.push_back(parse_ivec(require(dj, cx.cone(i).id, "/degeneration"), pp));
    }
    try {
      check_degeneration(cx, p);
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " at /degeneration");
    }
    f.degeneration = p;
  }
  if (j.contains("sections")) {
    const Json& sj = j.at("sections");
    GlobalSections gs;
    std::optional<std::size_t> r;
    for (std::size_t i = 0; i < cx.size(); ++i) {
      const std::string pp = "/sections/" + cx.cone(i).id;
      const Json& m = require(sj, cx.cone(i).id, "/sections");
      if (!m.is_array()) throw Error("expected a matrix at " + pp);
      if (!r) r = m.size();
      gs.sections.push_back(parse_imat(m, *r, cx.rank(i), pp));
    }
    if (!sections_compatible(cx, gs)) throw Error("sections incompatible with face arrows at /sections");
    f.sections = gs;
  }
  return f;
}

Json emit_fan(const FanFile& f) {
  const ConeComplex& cx = f.complex;
  Json j = Json::object();
  Json ls = Json::array();
  std::set<std::string> done;
  for (const auto& c : cx.cones()) {
    if (c.anonymous_lattice || !done.insert(c.lattice.id).second) continue;
    ls.push_back(Json{{"id", c.lattice.id}, {"rank", c.lattice.rank}});
  }
  if (!ls.empty()) j["lattices"] = ls;
  Json cs = Json::array();
  for (const auto& c : cx.cones()) {
    Json o = Json::object();
    o["id"] = c.id;
    if (c.anonymous_lattice)
      o["lattice_rank"] = c.lattice.rank;
    else
      o["lattice"] = c.lattice.id;
    Json rays = Json::array();
    for (const auto& r : c.cone.rays()) rays.push_back(to_json(r));
    o["rays"] = rays;
    cs.push_back(o);
  }
  j["cones"] = cs;
  Json fs = Json::array();
  for (const auto& a : cx.declared()) {
    Json m = to_json(a.matrix);
    fs.push_back(Json{{"src", cx.cone(a.src).id}, {"dst", cx.cone(a.dst).id}, {"matrix", m}});
  }
  j["faces"] = fs;
  if (f.degeneration) {
    Json d = Json::object();
    for (std::size_t i = 0; i < cx.size(); ++i) d[cx.cone(i).id] = to_json(f.degeneration->functional[i]);
    j["degeneration"] = d;
  }
  if (f.sections) {
    Json s = Json::object();
    for (std::size_t i = 0; i < cx.size(); ++i) s[cx.cone(i).id] = to_json(f.sections->sections[i]);
    j["sections"] = s;
  }
  return j;
}

FanFile read_fan_file(const std::string& path) { return parse_fan(read_json_file(path)); }

namespace {

std::size_t cone_by_id(const ConeComplex& cx, const Json& v, const std::string& path) {
  if (!v.is_string() || !cx.has(v.get<std::string>())) throw Error("unknown cone at " + path);
  return cx.index_of(v.get<std::string>());
}

std::string get_string(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_string()) throw Error("expected a string at " + path + "/" + key);
  return v.get<std::string>();
}

std::size_t arrow_at(const ConeComplex& cx, std::size_t src, std::size_t dst, const Json& j, const std::string& key,
                     const std::string& path) {
  if (!j.contains(key)) return kUnresolved;
  const Json& v = j.at(key);
  if (!v.is_number_unsigned()) throw Error("expected an arrow position at " + path + "/" + key);
  auto as = cx.arrows_between(src, dst);
  std::size_t k = v.get<std::size_t>();
  if (k >= as.size()) throw Error("no such face arrow at " + path + "/" + key);
  return as[k];
}

void put_arrow(Json& o, const ConeComplex& cx, const char* key, std::size_t a) {
  const FaceArrow& f = cx.arrows()[a];
  if (first_arrow(cx, f.src, f.dst) == a) return;
  auto as = cx.arrows_between(f.src, f.dst);
  o[key] = std::size_t(std::find(as.begin(), as.end(), a) - as.begin());
}

std::vector<std::size_t> id_map(const Json& j, const std::string& key, const std::vector<std::string>& from,
                                const std::vector<std::string>& to) {
  const Json& m = require(j, key, "");
  if (!m.is_object()) throw Error("expected an object at /" + key);
  std::vector<std::size_t> out;
  for (const auto& f : from) {
    const Json& v = require(m, f, "/" + key);
    auto it = v.is_string() ? std::find(to.begin(), to.end(), v.get<std::string>()) : to.end();
    if (it == to.end()) throw Error("unknown id at /" + key + "/" + f);
    out.push_back(std::size_t(it - to.begin()));
  }
  return out;
}

}  // namespace

PuncturedType parse_type(const Json& j, const ConeComplex& cx) {
  if (!j.is_object()) throw Error("type file must be a JSON object");
  PuncturedType t;
  if (j.contains("disconnected_allowed")) t.allow_disconnected = j.at("disconnected_allowed").get<bool>();
  const Json& vs = require(j, "vertices", "");
  if (!vs.is_array()) throw Error("expected an array at /vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = "/vertices/" + std::to_string(i);
    TypeVertex v;
    v.id = get_string(vs[i], "id", p);
    v.genus = parse_integer(require(vs[i], "genus", p), p + "/genus");
    v.sigma = cone_by_id(cx, require(vs[i], "sigma", p), p + "/sigma");
    if (vs[i].contains("degrees")) v.degrees = parse_ivec(vs[i].at("degrees"), p + "/degrees");
    if (vs[i].contains("coord_labels")) v.coord_labels = vs[i].at("coord_labels").get<std::vector<std::string>>();
    t.vertices.push_back(v);
  }
  auto vertex_ref = [&](const Json& o, const std::string& key, const std::string& p) {
    std::string id = get_string(o, key, p);
    for (std::size_t i = 0; i < t.vertices.size(); ++i)
      if (t.vertices[i].id == id) return i;
    throw Error("unknown vertex at " + p + "/" + key);
  };
  if (j.contains("edges")) {
    const Json& es = j.at("edges");
    if (!es.is_array()) throw Error("expected an array at /edges");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string p = "/edges/" + std::to_string(i);
      const Json& o = es[i];
      TypeEdge e;
      e.id = get_string(o, "id", p);
      e.src = vertex_ref(o, "src", p);
      e.dst = vertex_ref(o, "dst", p);
      e.sigma = cone_by_id(cx, require(o, "sigma", p), p + "/sigma");
      e.u = parse_ivec(require(o, "u", p), p + "/u");
      e.src_arrow = arrow_at(cx, t.vertices[e.src].sigma, e.sigma, o, "src_arrow", p);
      e.dst_arrow = arrow_at(cx, t.vertices[e.dst].sigma, e.sigma, o, "dst_arrow", p);
      if (o.contains("length_label")) e.length_label = get_string(o, "length_label", p);
      if (o.contains("u_cone")) {
        e.u_cone = cone_by_id(cx, o.at("u_cone"), p + "/u_cone");
        e.u_arrow = arrow_at(cx, e.sigma, *e.u_cone, o, "u_arrow", p);
      }
      t.edges.push_back(e);
    }
  }
  if (j.contains("legs")) {
    const Json& ls = j.at("legs");
    if (!ls.is_array()) throw Error("expected an array at /legs");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const std::string p = "/legs/" + std::to_string(i);
      const Json& o = ls[i];
      TypeLeg l;
      l.id = get_string(o, "id", p);
      l.vertex = vertex_ref(o, "vertex", p);
      l.sigma = cone_by_id(cx, require(o, "sigma", p), p + "/sigma");
      l.u = parse_ivec(require(o, "u", p), p + "/u");
      const Json& pu = require(o, "punctured", p);
      if (!pu.is_boolean()) throw Error("expected a boolean at " + p + "/punctured");
      l.punctured = pu.get<bool>();
      l.arrow = arrow_at(cx, t.vertices[l.vertex].sigma, l.sigma, o, "arrow", p);
      if (o.contains("u_cone")) {
        l.u_cone = cone_by_id(cx, o.at("u_cone"), p + "/u_cone");
        l.u_arrow = arrow_at(cx, l.sigma, *l.u_cone, o, "u_arrow", p);
      }
      if (o.contains("origin")) {
        const Json& og = o.at("origin");
        l.origin = LegOrigin{get_string(og, "edge", p + "/origin"), get_string(og, "side", p + "/origin") == "src"};
      }
      t.legs.push_back(l);
    }
  }
  resolve_arrows(t, cx);
  validate_type(t, cx);
  return t;
}

Json emit_type(const PuncturedType& t, const ConeComplex& cx) {
  Json j = Json::object();
  if (t.allow_disconnected) j["disconnected_allowed"] = true;
  Json vs = Json::array();
  for (const auto& v : t.vertices) {
    Json o{{"id", v.id}, {"genus", to_json(v.genus)}, {"sigma", cx.cone(v.sigma).id}};
    if (!v.degrees.empty()) o["degrees"] = to_json(v.degrees);
    if (!v.coord_labels.empty()) o["coord_labels"] = v.coord_labels;
    vs.push_back(o);
  }
  j["vertices"] = vs;
  Json es = Json::array();
  for (const auto& e : t.edges) {
    Json o{{"id", e.id},
           {"src", t.vertices[e.src].id},
           {"dst", t.vertices[e.dst].id},
           {"sigma", cx.cone(e.sigma).id},
           {"u", to_json(e.u)}};
    put_arrow(o, cx, "src_arrow", e.src_arrow);
    put_arrow(o, cx, "dst_arrow", e.dst_arrow);
    if (!e.length_label.empty()) o["length_label"] = e.length_label;
    if (e.u_cone) {
      o["u_cone"] = cx.cone(*e.u_cone).id;
      put_arrow(o, cx, "u_arrow", e.u_arrow);
    }
    es.push_back(o);
  }
  j["edges"] = es;
  Json ls = Json::array();
  for (const auto& l : t.legs) {
    Json o{{"id", l.id},
           {"vertex", t.vertices[l.vertex].id},
           {"sigma", cx.cone(l.sigma).id},
           {"u", to_json(l.u)},
           {"punctured", l.punctured}};
    put_arrow(o, cx, "arrow", l.arrow);
    if (l.u_cone) {
      o["u_cone"] = cx.cone(*l.u_cone).id;
      put_arrow(o, cx, "u_arrow", l.u_arrow);
    }
    if (l.origin) o["origin"] = Json{{"edge", l.origin->edge}, {"side", l.origin->src_side ? "src" : "dst"}};
    ls.push_back(o);
  }
  j["legs"] = ls;
  return j;
}

PuncturedType read_type_file(const std::string& path, const ConeComplex& cx) {
  return parse_type(read_json_file(path), cx);
}

Contraction parse_contraction(const Json& j, const PuncturedType& source, const ConeComplex& cx,
                              const std::string& base_dir) {
  const Json& tj = require(j, "target", "");
  PuncturedType target = tj.is_string()
                             ? read_type_file((std::filesystem::path(base_dir) / tj.get<std::string>()).string(), cx)
                             : parse_type(tj, cx);
  bool has_maps = j.contains("vertex_map") || j.contains("edge_map") || j.contains("leg_map");
  if (!has_maps) {
    auto c = find_contraction(source, target, cx);
    if (!c) throw Error("no contraction from the type onto the target");
    return *c;
  }
  auto ids = [](const auto& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(x.id);
    return out;
  };
  Contraction c{source, target, {}, {}, {}};
  c.vertex_map = id_map(j, "vertex_map", ids(source.vertices), ids(target.vertices));
  c.leg_map = id_map(j, "leg_map", ids(source.legs), ids(target.legs));
  const Json& em = require(j, "edge_map", "");
  if (!em.is_object()) throw Error("expected an object at /edge_map");
  auto tids = ids(target.edges);
  for (const auto& e : source.edges) {
    const Json& v = require(em, e.id, "/edge_map");
    if (v.is_null()) {
      c.edge_map.push_back(std::nullopt);
      continue;
    }
    auto it = v.is_string() ? std::find(tids.begin(), tids.end(), v.get<std::string>()) : tids.end();
    if (it == tids.end()) throw Error("unknown id at /edge_map/" + e.id);
    c.edge_map.push_back(std::size_t(it - tids.begin()));
  }
  CheckResult r = contraction_check(c, cx);
  if (!r.ok) throw Error("invalid contraction: " + r.message);
  return c;
}

Contraction read_contraction_file(const std::string& path, const PuncturedType& source, const ConeComplex& cx) {
  return parse_contraction(read_json_file(path), source, cx, std::filesystem::path(path).parent_path().string());
}

}  // namespace puncta
