#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "propeff/approx.hpp"
#include "propeff/efficiency.hpp"

namespace propeff {

using Json = nlohmann::json;

// Numbers are accepted as JSON numbers or "p/q" rational strings.
inline double parse_number(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      const double p = std::stod(s.substr(0, slash));
      const double q = std::stod(s.substr(slash + 1));
      if (q == 0) throw ValidationError("rational with zero denominator: " + s);
      return p / q;
    } catch (const std::invalid_argument&) {
      throw ValidationError("unparseable number: " + s);
    }
  }
  throw ValidationError("expected a number or \"p/q\" string");
}

inline Vec parse_vec(const Json& v, int dim) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    throw ValidationError("vector arity must match the space dimension");
  Vec out(dim);
  for (int i = 0; i < dim; ++i) out[i] = parse_number(v[i]);
  check_finite(out);
  return out;
}

inline Norm parse_norm(const std::string& s) {
  if (s == "l1") return Norm::L1;
  if (s == "l2") return Norm::L2;
  if (s == "linf") return Norm::Linf;
  throw ValidationError("norm must be one of l1, l2, linf");
}

struct InstanceFile {
  SpaceSpec space;
  std::vector<Vec> cone_gens;
  std::optional<std::vector<Vec>> coneK_gens;
  FeasibleSet set;
  std::optional<ApproxSpec> approx;
  std::optional<Vec> x0;
  std::vector<std::string> notions;

  PolyhedralCone cone() const { return PolyhedralCone::from_generators(cone_gens); }
  PolyhedralCone coneK() const {
    if (!coneK_gens) throw ValidationError("instance has no coneK");
    return PolyhedralCone::from_generators(*coneK_gens);
  }
};

inline InstanceFile parse_instance(const Json& j) {
  InstanceFile f;
  if (!j.is_object()) throw ValidationError("instance must be a JSON object");
  if (!j.contains("space")) throw ValidationError("missing \"space\"");
  f.space.dim = j["space"].value("dim", 0);
  if (f.space.dim < 1) throw ValidationError("space.dim must be >= 1");
  f.space.norm = parse_norm(j["space"].value("norm", "l2"));

  if (!j.contains("cone") || !j["cone"].is_array() || j["cone"].empty())
    throw ValidationError("missing cone generator list");
  for (const auto& g : j["cone"]) f.cone_gens.push_back(parse_vec(g, f.space.dim));

  if (j.contains("coneK")) {
    std::vector<Vec> ks;
    for (const auto& g : j["coneK"]) ks.push_back(parse_vec(g, f.space.dim));
    f.coneK_gens = std::move(ks);
  }

  if (j.contains("set")) {
    const auto& set = j["set"];
    if (set.contains("points"))
      for (const auto& p : set["points"])
        f.set.blocks.push_back(Polytope{{parse_vec(p, f.space.dim)}});
    if (set.contains("polytopes"))
      for (const auto& poly : set["polytopes"]) {
        Polytope P;
        for (const auto& v : poly) P.vertices.push_back(parse_vec(v, f.space.dim));
        if (P.vertices.empty()) throw ValidationError("empty polytope block");
        f.set.blocks.push_back(canonicalize_polytope(P));
      }
  }

  if (j.contains("approx")) {
    const auto& a = j["approx"];
    ApproxSpec spec;
    if (a.contains("D_points")) {
      for (const auto& d : a["D_points"])
        spec.d_points.push_back(parse_vec(d, f.space.dim));
      spec.d_is_polytope = false;
    } else if (a.contains("D_polytope")) {
      for (const auto& d : a["D_polytope"])
        spec.d_points.push_back(parse_vec(d, f.space.dim));
      spec.d_is_polytope = true;
    } else {
      throw ValidationError("approx needs D_points or D_polytope");
    }
    if (!a.contains("eps")) throw ValidationError("approx needs eps");
    spec.eps = parse_number(a["eps"]);
    f.approx = std::move(spec);
  }

  if (j.contains("query")) {
    const auto& q = j["query"];
    if (q.contains("x0")) f.x0 = parse_vec(q["x0"], f.space.dim);
    if (q.contains("notions"))
      for (const auto& n : q["notions"]) f.notions.push_back(n.get<std::string>());
  }
  return f;
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

inline Json vec_to_json(const Vec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

inline Json canonical_instance_json(const InstanceFile& f) {
  Json j;
  j["space"] = {{"dim", f.space.dim}, {"norm", norm_name(f.space.norm)}};
  Json cone = Json::array();
  for (const auto& g : f.cone_gens) cone.push_back(vec_to_json(g));
  j["cone"] = cone;
  if (f.coneK_gens) {
    Json ck = Json::array();
    for (const auto& g : *f.coneK_gens) ck.push_back(vec_to_json(g));
    j["coneK"] = ck;
  }
  Json blocks = Json::array();
  for (const auto& b : f.set.blocks) {
    Json poly = Json::array();
    for (const auto& v : b.vertices) poly.push_back(vec_to_json(v));
    blocks.push_back(poly);
  }
  j["set"] = {{"polytopes", blocks}};
  if (f.approx) {
    Json d = Json::array();
    for (const auto& p : f.approx->d_points) d.push_back(vec_to_json(p));
    j["approx"] = {{f.approx->d_is_polytope ? "D_polytope" : "D_points", d},
                   {"eps", f.approx->eps}};
  }
  if (f.x0) j["query"]["x0"] = vec_to_json(*f.x0);
  if (!f.notions.empty()) j["query"]["notions"] = f.notions;
  return j;
}

// FNV-1a over the canonical dump.
inline std::string instance_digest(const InstanceFile& f) {
  const std::string s = canonical_instance_json(f).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

inline Json certificate_to_json(const Certificate& c) {
  Json j;
  j["kind"] = c.kind;
  if (!c.functionals.empty()) {
    Json fs = Json::array();
    for (const auto& f : c.functionals) fs.push_back(vec_to_json(f));
    j["functionals"] = fs;
  }
  if (c.base_functional.size() > 0)
    j["baseFunctional"] = vec_to_json(c.base_functional);
  if (c.eps != 0.0) j["eps"] = c.eps;
  if (c.alpha != 0.0) j["alpha"] = c.alpha;
  if (c.rho != 0.0) j["rho"] = c.rho;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline Json verdict_to_json(const std::string& notion, const Verdict& v) {
  Json j;
  j["notion"] = notion;
  j["status"] = status_name(v.status);
  if (v.certificate) j["certificate"] = certificate_to_json(*v.certificate);
  if (v.counterexample) j["counterexample"] = vec_to_json(*v.counterexample);
  if (!v.note.empty()) j["notes"] = v.note;
  return j;
}

}  // namespace propeff
