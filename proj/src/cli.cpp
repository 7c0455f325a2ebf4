#include "autorb/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "autorb/suite.hpp"

namespace autorb {
namespace {

using ordered_json = nlohmann::ordered_json;

std::size_t closure_cap_from_env() {
  const char* env = std::getenv("AUTORB_CAP");
  if (env == nullptr) return FiniteGroup::kDefaultCap;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || v == 0) return FiniteGroup::kDefaultCap;
  return static_cast<std::size_t>(v);
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw error("cannot open output file: " + out_path);
  f << text;
}

ordered_json omega_json(const GroupSpec& spec, const Construction& c,
                        const CertifiedOmega& w) {
  ordered_json j;
  j["group"] = spec.str();
  j["order"] = c.group().order();
  j["omega"] = ordered_json{{"lo", w.lo},
                            {"hi", w.hi},
                            {"status", w.certified() ? "certified" : "bounds"}};
  j["trusted"] = w.trusted;
  j["orbit_sizes"] = w.orbit_partition().block_sizes();
  if (w.exact) j["aut_order"] = *w.aut_order;
  return j;
}

struct OmegaArgs {
  std::string spec_text;
  int level = 2;
  bool level_given = false;
  std::size_t aut_limit = 512;
  bool exact = false;
  bool json = false;
  std::string out_path;
};

CertifiedOmega compute_omega(const Construction& c, const OmegaArgs& a) {
  OmegaOptions opt;
  opt.level = a.level;
  opt.auto_escalate = !a.level_given;
  if (a.exact) return omega_exact(c.group(), c.autogens(), a.aut_limit, opt);
  return omega(c.group(), c.autogens(), opt);
}

int cmd_omega(const OmegaArgs& a, std::ostream& out) {
  GroupSpec spec = parse_spec(a.spec_text);
  auto c = Construction::build(spec, closure_cap_from_env());
  CertifiedOmega w = compute_omega(*c, a);
  if (a.json) {
    emit(omega_json(spec, *c, w).dump() + "\n", a.out_path, out);
    return 0;
  }
  std::ostringstream os;
  os << "group " << spec.str() << "  order " << c->group().order() << "\n";
  if (w.certified())
    os << "omega = " << w.lo << " (certified"
       << (w.exact ? ", exact automorphism search" : ", signature level " +
                                                        std::to_string(w.level_used))
       << ")\n";
  else
    os << "omega in [" << w.lo << ", " << w.hi << "] (bounds, signature level "
       << w.level_used << ")\n";
  if (w.aut_order) os << "automorphism group order " << *w.aut_order << "\n";
  os << "orbit sizes:";
  for (int64_t s : w.orbit_partition().block_sizes()) os << " " << s;
  os << "\n";
  if (!w.trusted.empty()) {
    os << "trusted assumptions:";
    for (const auto& t : w.trusted) os << " " << t;
    os << "\n";
  }
  emit(os.str(), a.out_path, out);
  return 0;
}

struct OrbitsArgs {
  std::string spec_text;
  bool json = false;
  bool csv = false;
  std::string out_path;
};

int cmd_orbits(const OrbitsArgs& a, std::ostream& out) {
  GroupSpec spec = parse_spec(a.spec_text);
  auto c = Construction::build(spec, closure_cap_from_env());
  CertifiedOmega w = omega(c->group(), c->autogens());
  const FiniteGroup& g = c->group();
  const OrbitPartition& part = w.orbit_partition();
  auto sizes = part.block_sizes();
  auto reps = part.block_reps();

  if (a.csv) {
    std::ostringstream os;
    os << "group,order,orbit_index,size,elem_order,cent_order\n";
    for (int32_t b = 0; b < part.blocks; ++b)
      os << spec.str() << "," << g.order() << "," << b << "," << sizes[b] << ","
         << g.elem_order(reps[b]) << "," << g.centralizer_order(reps[b]) << "\n";
    emit(os.str(), a.out_path, out);
    return 0;
  }
  if (a.json) {
    ordered_json j;
    j["group"] = spec.str();
    j["order"] = g.order();
    j["status"] = w.certified() ? "certified" : "bounds";
    j["orbits"] = ordered_json::array();
    for (int32_t b = 0; b < part.blocks; ++b) {
      j["orbits"].push_back(ordered_json{{"index", b},
                                         {"representative", to_string(g.elem(reps[b]))},
                                         {"size", sizes[b]},
                                         {"elem_order", g.elem_order(reps[b])},
                                         {"cent_order", g.centralizer_order(reps[b])}});
    }
    j["trusted"] = w.trusted;
    emit(j.dump() + "\n", a.out_path, out);
    return 0;
  }
  std::ostringstream os;
  os << "group " << spec.str() << "  order " << g.order() << "  "
     << (w.certified() ? "certified" : "bounds") << " " << part.blocks << " orbits\n";
  for (int32_t b = 0; b < part.blocks; ++b)
    os << std::setw(3) << b << "  size " << std::setw(8) << sizes[b] << "  order "
       << std::setw(3) << g.elem_order(reps[b]) << "  cent " << std::setw(8)
       << g.centralizer_order(reps[b]) << "  " << to_string(g.elem(reps[b])) << "\n";
  emit(os.str(), a.out_path, out);
  return 0;
}

struct VerifyArgs {
  std::string target;
  std::string suite = "all";
  bool json = false;
  bool parallel = false;
  std::string out_path;
};

ordered_json suite_json(const SuiteReport& r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["overall"] = r.overall_pass() ? "pass" : "fail";
  j["passed"] = r.count("pass");
  j["failed"] = r.count("fail");
  j["skipped"] = r.count("skipped");
  j["checks"] = ordered_json::array();
  for (const auto& e : r.entries)
    j["checks"].push_back(ordered_json{{"id", e.id},
                                       {"location", e.location},
                                       {"expected", e.expected},
                                       {"computed", e.computed},
                                       {"status", e.status},
                                       {"trusted", e.trusted},
                                       {"wall_ms", e.wall_ms}});
  return j;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.target != "paper")
    throw parse_error(parse_error::Kind::bad_params, 0,
                      "unknown verify target '" + a.target + "' (expected 'paper')");
  SuiteReport r = run_suite(a.suite, a.parallel);
  if (a.json) {
    emit(suite_json(r).dump(2) + "\n", a.out_path, out);
    return 0;
  }
  std::ostringstream os;
  os << "suite " << r.suite << "\n";
  for (const auto& e : r.entries) {
    os << (e.status == "pass" ? "[pass] " : "[FAIL] ") << std::left << std::setw(36)
       << e.id << " " << std::setw(10) << e.location << " expected: " << e.expected
       << "\n";
    os << "        computed: " << e.computed;
    if (!e.trusted.empty()) {
      os << "  (trusted:";
      for (const auto& t : e.trusted) os << " " << t;
      os << ")";
    }
    os << "  [" << e.wall_ms << " ms]\n";
  }
  os << (r.overall_pass() ? "overall: pass" : "overall: FAIL") << " ("
     << r.count("pass") << " passed, " << r.count("fail") << " failed)\n";
  emit(os.str(), a.out_path, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite-group automorphism-orbit calculator"};
  app.require_subcommand(1);

  OmegaArgs oa;
  auto* omega_cmd = app.add_subcommand("omega", "compute the number of automorphism orbits");
  omega_cmd->add_option("spec", oa.spec_text, "group spec, e.g. PSL(2,7) or GMF(2,4)")
      ->required();
  auto* level_opt = omega_cmd->add_option("--level", oa.level, "signature level (1..3)")
                        ->check(CLI::Range(1, 3));
  omega_cmd->add_option("--aut-limit", oa.aut_limit, "max order for --exact");
  omega_cmd->add_flag("--exact", oa.exact, "exhaustive automorphism search");
  omega_cmd->add_flag("--json", oa.json, "machine-readable output");
  omega_cmd->add_option("--out", oa.out_path, "write output to a file");

  OrbitsArgs ra;
  auto* orbits_cmd = app.add_subcommand("orbits", "emit the orbit table");
  orbits_cmd->add_option("spec", ra.spec_text, "group spec")->required();
  orbits_cmd->add_flag("--json", ra.json, "machine-readable output");
  orbits_cmd->add_flag("--csv", ra.csv, "CSV output");
  orbits_cmd->add_option("--out", ra.out_path, "write output to a file");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "run the built-in claim checks");
  verify_cmd->add_option("target", va.target, "what to verify (only: paper)")->required();
  verify_cmd->add_option("--suite", va.suite, "thm21 | lemma22 | thm41 | stroppel | all");
  verify_cmd->add_flag("--json", va.json, "machine-readable report");
  verify_cmd->add_flag("--parallel", va.parallel, "run checks concurrently");
  verify_cmd->add_option("--out", va.out_path, "write the report to a file");

  std::vector<std::string> argv(args);
  try {
    std::vector<const char*> cargv;
    cargv.push_back("autorb");
    for (const auto& s : argv) cargv.push_back(s.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    oa.level_given = level_opt->count() > 0;
    if (omega_cmd->parsed()) return cmd_omega(oa, out);
    if (orbits_cmd->parsed()) return cmd_orbits(ra, out);
    if (verify_cmd->parsed()) return cmd_verify(va, out);
    err << "no subcommand\n";
    return 2;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const cap_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace autorb
