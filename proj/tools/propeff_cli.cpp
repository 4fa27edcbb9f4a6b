// Command-line surface for the proper-efficiency library: instance
// classification, SSP queries, certificate search, scalarization, AMin
// queries, seeded self-tests, and 2-D SVG figures.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "propeff/propeff.hpp"

namespace {

using namespace propeff;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitNumericFailure = 2;
constexpr int kExitUnknownStrict = 3;

InstanceFile load_instance(const std::string& path,
                           const std::string& norm_override) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  InstanceFile f = parse_instance(j);
  if (!norm_override.empty()) f.space.norm = parse_norm(norm_override);
  return f;
}

Vec parse_f_flag(const std::string& s, int dim) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  if (static_cast<int>(vals.size()) != dim)
    throw ValidationError("--f arity does not match the space dimension");
  Vec f(dim);
  for (int i = 0; i < dim; ++i) f[i] = vals[i];
  return f;
}

AugmentedFunctional resolve_functional(const InstanceFile& inst,
                                       const PolyhedralCone& C,
                                       const std::string& f_flag, double alpha_flag) {
  Vec f = f_flag.empty() ? strictly_positive_functional(C)
                         : parse_f_flag(f_flag, inst.space.dim);
  const double amax = augmented_alpha_bound(C, f, inst.space);
  double alpha = alpha_flag;
  if (alpha < 0.0) alpha = amax / 2.0;
  if (alpha <= 0.0 || alpha >= amax)
    throw ValidationError("alpha outside admissible range (0, " +
                          std::to_string(amax) + ")");
  return make_augmented(C, f, alpha, inst.space);
}

int run_classify(const std::string& path, const std::string& norm_override,
                 bool strict, const std::string& svg_path, int budget,
                 const std::string& f_flag, double alpha_flag) {
  InstanceFile inst = load_instance(path, norm_override);
  if (!inst.x0) throw ValidationError("classify needs query.x0");
  if (inst.set.blocks.empty()) throw ValidationError("classify needs a set");
  auto C = inst.cone();
  const Vec x0 = *inst.x0;
  std::vector<std::string> notions = inst.notions;
  if (notions.empty())
    notions = {"Min", "Pos", "Hu", "Be", "Ha", "Bo", "GHe", "He", "SE", "TBo"};

  Json verdicts = Json::array();
  bool any_unknown = false;
  std::optional<Vec> first_witness;
  const auto t0 = Clock::now();
  for (const auto& name : notions) {
    Verdict v;
    Json entry;
    if (name == "BeApprox" || name == "HeApprox") {
      if (!inst.approx) throw ValidationError(name + " needs an approx section");
      v = name == "BeApprox"
              ? is_approx_benson(inst.set, C, *inst.approx, x0, inst.space)
              : is_approx_henig(inst.set, C, *inst.approx, x0, inst.space);
      entry = verdict_to_json(name, v);
    } else if (name == "AMin") {
      if (!inst.approx) throw ValidationError("AMin needs an approx section");
      auto fa = resolve_functional(inst, C, f_flag, alpha_flag);
      const double lambda = lambda_bound(*inst.approx, C, fa, inst.space);
      if (lambda < 0)
        throw ValidationError("lambda bound is negative; x0 cannot be queried");
      const bool member = is_amin(inst.set, {fa, x0, lambda}, inst.space);
      v.status = member ? Status::CertifiedYes : Status::CertifiedNo;
      entry = verdict_to_json(name, v);
      entry["lambda"] = lambda;
      entry["f"] = vec_to_json(fa.f);
      entry["alpha"] = fa.alpha;
    } else {
      static const std::map<std::string, Notion> lut = {
          {"Min", Notion::Min}, {"Pos", Notion::Pos}, {"Hu", Notion::Hu},
          {"Be", Notion::Be},   {"Ha", Notion::Ha},   {"Bo", Notion::Bo},
          {"GHe", Notion::GHe}, {"He", Notion::He},   {"SE", Notion::SE},
          {"TBo", Notion::TBo}};
      auto it = lut.find(name);
      if (it == lut.end()) throw ValidationError("unknown notion: " + name);
      HenigSearchConfig cfg;
      if (budget > 0) cfg.eps_levels = budget;
      auto rep = classify(inst.set, C, x0, inst.space, {it->second}, cfg);
      v = rep.verdicts[it->second];
      entry = verdict_to_json(name, v);
    }
    if (v.status == Status::Unknown) any_unknown = true;
    if (!first_witness && v.counterexample) first_witness = v.counterexample;
    verdicts.push_back(entry);
  }
  const auto t1 = Clock::now();

  Json report;
  report["instanceDigest"] = instance_digest(inst);
  report["verdicts"] = verdicts;
  std::cout << report.dump(2) << "\n";
  std::cerr << "classified " << notions.size() << " notions in "
            << std::chrono::duration<double, std::milli>(t1 - t0).count()
            << " ms\n";
  if (!svg_path.empty()) write_svg(svg_path, inst, first_witness);
  return strict && any_unknown ? kExitUnknownStrict : kExitOk;
}

int run_ssp(const std::string& path, const std::string& norm_override,
            const std::string& svg_path) {
  InstanceFile inst = load_instance(path, norm_override);
  if (!inst.coneK_gens) throw ValidationError("ssp needs cone and coneK");
  auto C = inst.cone();
  auto K = inst.coneK();
  auto verdict = ssp_check(C, K, inst.space);
  Json report;
  report["instanceDigest"] = instance_digest(inst);
  report["holds"] = verdict.holds;
  report["distance"] = verdict.distance;
  report["exact"] = verdict.exact;
  if (!verdict.exact) report["bracket"] = {verdict.lower, verdict.upper};
  if (verdict.holds) {
    auto w = ssp_witness(C, K, inst.space);
    report["witness"] = {{"f", vec_to_json(w.f)},
                         {"delta1", w.delta1},
                         {"delta2", w.delta2}};
  }
  std::cout << report.dump(2) << "\n";
  if (!svg_path.empty()) write_svg(svg_path, inst);
  return kExitOk;
}

int run_certify(const std::string& path, const std::string& norm_override,
                const std::string& notion, int budget) {
  InstanceFile inst = load_instance(path, norm_override);
  if (!inst.x0) throw ValidationError("certify needs query.x0");
  auto C = inst.cone();
  CertifySearchConfig cfg;
  if (budget > 0) cfg.budget = budget;
  CertifyResult res = [&] {
    if (notion == "be") return certify_benson(inst.set, C, *inst.x0, inst.space, cfg);
    if (notion == "ghe") return certify_ghe(inst.set, C, *inst.x0, inst.space, cfg);
    if (notion == "tbo") return certify_tbo(inst.set, C, *inst.x0, inst.space, cfg);
    throw ValidationError("certify --notion must be be, ghe, or tbo");
  }();
  Json report;
  report["instanceDigest"] = instance_digest(inst);
  report["notion"] = notion;
  report["candidatesTried"] = res.tried;
  if (!res.note.empty()) report["notes"] = res.note;
  switch (res.outcome) {
    case CertifyResult::Outcome::Certificate: {
      report["outcome"] = "certificate";
      report["f"] = vec_to_json(res.certificate->f);
      report["alpha"] = res.certificate->alpha;
      report["alphaMax"] = res.certificate->alpha_max;
      // Per-block minima of the certified scalarization.
      ScalarProblem prob{*res.certificate, *inst.x0, inst.set, inst.space};
      auto sol = minimize_g(prob);
      report["minValue"] = sol.minValue;
      report["uniqueAtX0"] = sol.uniqueAtX0;
      Json mins = Json::array();
      for (const auto& [idx, point] : sol.minimizers)
        mins.push_back({{"block", idx}, {"point", vec_to_json(point)}});
      report["minimizers"] = mins;
      break;
    }
    case CertifyResult::Outcome::Refuted:
      report["outcome"] = "refuted";
      report["counterexample"] = vec_to_json(*res.witness);
      break;
    case CertifyResult::Outcome::Exhausted:
      report["outcome"] = "exhausted";
      break;
  }
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int run_scalarize(const std::string& path, const std::string& norm_override,
                  const std::string& f_flag, double alpha_flag) {
  InstanceFile inst = load_instance(path, norm_override);
  if (!inst.x0) throw ValidationError("scalarize needs query.x0");
  auto C = inst.cone();
  auto fa = resolve_functional(inst, C, f_flag, alpha_flag);
  ScalarProblem prob{fa, *inst.x0, inst.set, inst.space};
  auto sol = minimize_g(prob);
  Json report;
  report["instanceDigest"] = instance_digest(inst);
  report["f"] = vec_to_json(fa.f);
  report["alpha"] = fa.alpha;
  report["alphaMax"] = fa.alpha_max;
  report["classTag"] = aug_class_name(fa.classTag);
  report["minValue"] = sol.minValue;
  report["uniqueAtX0"] = sol.uniqueAtX0;
  Json mins = Json::array();
  for (const auto& [idx, point] : sol.minimizers)
    mins.push_back({{"block", idx}, {"point", vec_to_json(point)}});
  report["minimizers"] = mins;
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int run_amin(const std::string& path, const std::string& norm_override,
             const std::string& f_flag, double alpha_flag) {
  InstanceFile inst = load_instance(path, norm_override);
  if (!inst.x0) throw ValidationError("amin needs query.x0");
  if (!inst.approx) throw ValidationError("amin needs an approx section");
  auto C = inst.cone();
  auto fa = resolve_functional(inst, C, f_flag, alpha_flag);
  const double lambda = lambda_bound(*inst.approx, C, fa, inst.space);
  Json report;
  report["instanceDigest"] = instance_digest(inst);
  report["lambda"] = lambda;
  report["f"] = vec_to_json(fa.f);
  report["alpha"] = fa.alpha;
  if (lambda < 0) {
    report["isAMin"] = false;
    report["notes"] = "lambda bound is negative (x0 cannot be approx-Benson)";
  } else {
    report["isAMin"] = is_amin(inst.set, {fa, *inst.x0, lambda}, inst.space);
  }
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int run_selftest(std::uint64_t seed, int count) {
  struct Row {
    const char* name;
    SuiteStats stats;
    double seconds;
  };
  std::vector<Row> rows;
  auto timed = [&](const char* name, auto&& fn) {
    const auto t0 = Clock::now();
    SuiteStats s = fn();
    const auto t1 = Clock::now();
    rows.push_back({name, s, std::chrono::duration<double>(t1 - t0).count()});
  };
  timed("inclusion-chains", [&] { return run_inclusion_suite(count, seed); });
  timed("oracle-agreement", [&] { return run_oracle_agreement(count, seed); });
  timed("witness-inequalities",
        [&] { return run_witness_suite(std::min(count, 100), 2000, seed); });
  timed("dichotomy", [&] { return run_dichotomy_suite(std::min(count, 200), seed); });
  timed("ssp-symmetries",
        [&] { return run_symmetry_suite(std::min(count, 100), seed); });
  timed("monotonicity",
        [&] { return run_monotonicity_suite(std::min(count, 50), 10000, seed); });
  timed("scalarization-necessity",
        [&] { return run_necessity_suite(std::min(count, 50), seed); });

  long total_violations = 0;
  std::printf("%-26s %10s %12s %11s %9s\n", "suite", "instances", "checks",
              "violations", "seconds");
  for (const auto& r : rows) {
    std::printf("%-26s %10ld %12ld %11ld %9.2f\n", r.name, r.stats.instances,
                r.stats.checks, r.stats.violations, r.seconds);
    total_violations += r.stats.violations;
    for (const auto& f : r.stats.failures) std::fprintf(stderr, "  %s\n", f.c_str());
  }
  return total_violations == 0 ? kExitOk : kExitNumericFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proper-efficiency and approximate proper-efficiency decisions "
               "for polyhedral instances"};
  app.require_subcommand(1);

  std::string path, norm_override, svg_path, f_flag, notion = "be";
  bool strict = false;
  double alpha_flag = -1.0;
  int budget = 0, count = 200;
  std::uint64_t seed = 42;

  auto add_common = [&](CLI::App* cmd, bool needs_file) {
    if (needs_file) cmd->add_option("file", path, "instance JSON")->required();
    cmd->add_option("--norm", norm_override, "override the norm: l1, l2, linf");
  };

  auto* c_classify = app.add_subcommand("classify", "per-notion verdicts");
  add_common(c_classify, true);
  c_classify->add_flag("--strict", strict, "exit 3 when any verdict is Unknown");
  c_classify->add_option("--svg", svg_path, "write a 2-D figure");
  c_classify->add_option("--budget", budget, "Henig eps levels");
  c_classify->add_option("--f", f_flag, "functional for AMin, comma separated");
  c_classify->add_option("--alpha", alpha_flag, "alpha for AMin");

  auto* c_ssp = app.add_subcommand("ssp", "strict separation property query");
  add_common(c_ssp, true);
  c_ssp->add_option("--svg", svg_path, "write a 2-D figure");

  auto* c_certify = app.add_subcommand("certify", "scalarization certificates");
  add_common(c_certify, true);
  c_certify->add_option("--notion", notion, "be | ghe | tbo");
  c_certify->add_option("--budget", budget, "candidate budget");

  auto* c_scalarize = app.add_subcommand("scalarize", "minimize a supplied g");
  add_common(c_scalarize, true);
  c_scalarize->add_option("--f", f_flag, "functional, comma separated");
  c_scalarize->add_option("--alpha", alpha_flag, "alpha (default alpha_max/2)");

  auto* c_amin = app.add_subcommand("amin", "approximate-minimizer query");
  add_common(c_amin, true);
  c_amin->add_option("--f", f_flag, "functional, comma separated");
  c_amin->add_option("--alpha", alpha_flag, "alpha (default alpha_max/2)");

  auto* c_selftest = app.add_subcommand("selftest", "seeded harness suites");
  c_selftest->add_option("--seed", seed, "suite seed");
  c_selftest->add_option("--count", count, "instance count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_classify->parsed())
      return run_classify(path, norm_override, strict, svg_path, budget, f_flag,
                          alpha_flag);
    if (c_ssp->parsed()) return run_ssp(path, norm_override, svg_path);
    if (c_certify->parsed())
      return run_certify(path, norm_override, notion, budget);
    if (c_scalarize->parsed())
      return run_scalarize(path, norm_override, f_flag, alpha_flag);
    if (c_amin->parsed()) return run_amin(path, norm_override, f_flag, alpha_flag);
    if (c_selftest->parsed()) return run_selftest(seed, count);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const NumericalFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumericFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericFailure;
  }
  return kExitOk;
}
