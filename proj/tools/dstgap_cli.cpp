// Copyright 2026 The dstgap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dstgap: generate, verify, certify and solve gap instances; sweep the tail
// bounds. Exit codes: 0 ok, 1 verified false, 2 bad parameters, 3 bad input
// file, 4 resource cap, 5 internal error.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dstgap/dstgap.hpp"

namespace {

using namespace dstgap;

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kFalse = 1, kBadParams = 2, kBadInput = 3, kCap = 4, kInternal = 5 };

struct RunConfig {
  unsigned jobs = 1;
  unsigned digits = 50;
  std::uint64_t max_edges = 10'000'000;
  std::size_t max_lp_vars = 50'000;
  std::size_t max_tableau = 2'000'000;
  std::uint64_t node_limit = 20'000'000;
  std::size_t max_priced_edges = 32;
  std::string command_line;
};

Json report_header(const RunConfig& cfg, const std::string& command, const std::string& instance_text) {
  Json h{{"tool", "dstgap"}, {"version", kVersion}, {"command", command}, {"command_line", cfg.command_line}};
  if (!instance_text.empty()) h["instance_hash"] = fnv1a64(instance_text);
  return h;
}

void write_json(const std::string& path, Json body) {
  write_file_atomic(path, body.dump(2) + "\n");
}

struct LoadedInstance {
  std::string text;
  DstInstance inst;
};

LoadedInstance load(const std::string& path) {
  LoadedInstance li;
  li.text = read_file(path);
  if (li.text.find_first_not_of(" \t\r\n") == std::string::npos) throw InputError(path + " is empty");
  li.inst = parse_instance(li.text);
  return li;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string family;
  int k = 0, m = 0, a = 0;
  std::optional<int> thresh;
  std::string out, dot;
};

int cmd_gen(const GenArgs& g, const RunConfig& cfg) {
  GapObjects obj;
  std::string default_name;
  const SizeCap cap{cfg.max_edges};
  if (g.family == "zk") {
    obj = zk_objects(g.k, cap);
    default_name = "zk-k" + std::to_string(g.k) + ".json";
  } else {
    const int th = g.thresh.value_or(g.a / 4);
    obj = subset_objects({g.m, g.a, th}, cap);
    default_name = "subset-m" + std::to_string(g.m) + "-a" + std::to_string(g.a) + "-t" + std::to_string(th) + ".json";
  }
  const ValidationReport rep = validate_objects(obj);
  if (!rep.ok()) throw InternalError("generated objects fail validation");
  const DstInstance inst = build_instance(obj);
  const std::string text = serialize_instance(inst);
  const std::string out = g.out.empty() ? default_name : g.out;
  write_file_atomic(out, text);
  if (!g.dot.empty()) write_file_atomic(g.dot, to_dot(inst));

  const InstanceStats st = instance_stats(inst);
  std::cout << "instance   " << out << "  (hash " << fnv1a64(text) << ")\n";
  std::cout << std::left << std::setw(28) << "quantity" << "value\n";
  auto row = [](const std::string& k, const std::string& v) { std::cout << std::left << std::setw(28) << k << v << "\n"; };
  row("n", std::to_string(st.n));
  row("|A|, |B|, |B'|, |K|", std::to_string(st.level_sizes[1]) + ", " + std::to_string(st.level_sizes[2]) + ", " +
                                 std::to_string(st.level_sizes[3]) + ", " + std::to_string(st.level_sizes[4]));
  row("|E1|, |E2|, |E3|, |E4|", std::to_string(st.edge_counts[1]) + ", " + std::to_string(st.edge_counts[2]) + ", " +
                                    std::to_string(st.edge_counts[3]) + ", " + std::to_string(st.edge_counts[4]));
  row("d, d', s, k", std::to_string(st.d) + ", " + std::to_string(st.d_prime) + ", " + std::to_string(st.s) + ", " +
                         std::to_string(st.k));
  row("total edge cost", to_string(st.total_edge_cost));
  row("canonical LP cost 2|B|/s", to_string(st.canonical_lp_cost));
  for (const auto& c : rep.checks) {
    if (c.advisory && !c.passed) row("advisory", c.name + " does not hold");
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string instance;
  std::string report;
};

int cmd_verify(const VerifyArgs& v, const RunConfig& cfg) {
  const LoadedInstance li = load(v.instance);
  const DstInstance& inst = li.inst;
  const FractionalSolution x = canonical_solution(inst);
  const FeasibilityReport fr = verify_feasibility(inst, x, cfg.jobs);

  Json witnesses = Json::array();
  std::vector<std::string> status(fr.terminals.size(), "ok");
  bool ok = fr.feasible;
  for (std::size_t i = 0; i < fr.terminals.size(); ++i) {
    const auto& tf = fr.terminals[i];
    if (tf.value != 1) {
      status[i] = tf.value < 1 ? "FAIL (flow < 1)" : "FAIL (flow != 1)";
      ok = false;
      continue;
    }
    WitnessCheck wc;
    try {
      wc = check_witness(inst, x, path_witness(inst, tf.terminal));
    } catch (const InputError& e) {
      wc = {false, e.what()};
    }
    if (!wc.ok) {
      status[i] = "FAIL (witness: " + wc.reason + ")";
      ok = false;
    }
    witnesses.push_back(Json{{"terminal", inst.label(tf.terminal)}, {"ok", wc.ok}, {"reason", wc.reason}});
  }

  std::cout << std::left << std::setw(24) << "terminal" << std::setw(12) << "flow" << "status\n";
  for (std::size_t i = 0; i < fr.terminals.size(); ++i) {
    std::cout << std::left << std::setw(24) << inst.label(fr.terminals[i].terminal) << std::setw(12)
              << to_string(fr.terminals[i].value) << status[i] << "\n";
  }
  std::cout << "canonical cost " << to_string(inst.cost_of(x.x)) << "\n";
  if (!ok) {
    std::cout << "failing terminals:";
    for (std::size_t i = 0; i < fr.terminals.size(); ++i) {
      if (status[i] != "ok") std::cout << ' ' << inst.label(fr.terminals[i].terminal);
    }
    std::cout << "\n";
  }
  std::cout << (ok ? "FEASIBLE" : "INFEASIBLE") << "\n";

  if (!v.report.empty()) {
    Json body{{"header", report_header(cfg, "verify", li.text)},
              {"canonical_cost", to_string(inst.cost_of(x.x))},
              {"all_flows_one", ok},
              {"feasibility", feasibility_to_json(fr, inst)},
              {"witnesses", std::move(witnesses)}};
    write_json(v.report, std::move(body));
  }
  return ok ? kOk : kFalse;
}

// ---------------------------------------------------------------------------
// certify

struct CertifyArgs {
  std::string instance;
  std::optional<int> thresh;
  bool sweep = false;
  std::string out;
};

int cmd_certify(const CertifyArgs& c, const RunConfig& cfg) {
  const LoadedInstance li = load(c.instance);
  const GapObjects& obj = li.inst.objects();
  if (obj.family.kind == FamilyKind::kNone) {
    throw InputError("instance does not record a known family; J-sets cannot be derived");
  }
  std::vector<std::optional<int>> tries;
  if (c.sweep && obj.family.kind == FamilyKind::kSubset) {
    for (int t = 0; t < obj.family.a; ++t) tries.emplace_back(t);
  } else {
    tries.push_back(c.thresh);
  }
  GapCertificate best;
  std::optional<int> best_thresh;
  bool have = false;
  Json sweep = Json::array();
  for (const auto& t : tries) {
    const GapCertificate cert = certify_gap(obj, default_j_sets(obj, t));
    if (!cert.self_check_passed) throw InternalError("certificate self-check failed");
    const int shown = obj.family.kind == FamilyKind::kSubset ? t.value_or(obj.family.thresh) : 0;
    sweep.push_back(Json{{"thresh", shown}, {"alpha", to_string(cert.alpha)}});
    if (!have || cert.alpha > best.alpha) {
      best = cert;
      best_thresh = shown;
      have = true;
    }
  }
  if (obj.family.kind == FamilyKind::kSubset) std::cout << "thresh           " << *best_thresh << "\n";
  std::cout << "alpha            " << to_string(best.alpha) << "\n";
  std::cout << "OPT lower bound  " << to_string(best.opt_lower_bound) << "  (alpha |B| / s)\n";
  std::cout << "gap lower bound  " << to_string(best.gap_lower_bound) << "  (alpha / 2)\n";
  if (!c.out.empty()) {
    Json body = certificate_to_json(best, obj);
    body["thresh"] = *best_thresh;
    if (tries.size() > 1) body["sweep"] = std::move(sweep);
    body["header"] = report_header(cfg, "certify", li.text);
    write_json(c.out, std::move(body));
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string instance;
  std::string method = "all";
  std::string out;
};

int cmd_solve(const SolveArgs& s, const RunConfig& cfg) {
  const LoadedInstance li = load(s.instance);
  const DstInstance& inst = li.inst;
  const bool all = s.method == "all";
  Json body{{"header", report_header(cfg, "solve", li.text)}, {"method", s.method}};
  bool capped = false, inconsistent = false;
  std::optional<Rational> opt_value, lp_value, bound;
  auto note_cap = [&](const std::string& what, const std::exception& e) {
    capped = true;
    std::cout << what << ": cap reached (" << e.what() << ")\n";
    body[what] = Json{{"capped", e.what()}};
  };
  auto agree = [&](const Rational& v, const std::string& who) {
    if (opt_value && *opt_value != v) {
      inconsistent = true;
      std::cout << "MISMATCH: " << who << " found " << to_string(v) << " but another solver found "
                << to_string(*opt_value) << "\n";
    }
    opt_value = v;
  };

  if (all || s.method == "structured") {
    try {
      const StructuredSolution sol = solve_structured(inst, SearchOptions{cfg.node_limit});
      body["structured"] = structured_to_json(sol, inst);
      if (sol.status == SolveStatus::kOptimal) {
        if (!structured_solution_valid(inst, sol)) throw InternalError("structured solution does not reach all terminals");
        agree(sol.cost, "structured");
        std::cout << "structured OPT   " << to_string(sol.cost) << "  (" << sol.nodes << " nodes)\n";
      } else if (sol.status == SolveStatus::kBounded) {
        capped = true;
        std::cout << "structured       node limit: " << to_string(sol.lower_bound) << " <= OPT <= " << to_string(sol.cost)
                  << "\n";
      } else {
        std::cout << "structured       infeasible\n";
      }
    } catch (const CapExceeded& e) {
      note_cap("structured", e);
    }
  }
  if (all || s.method == "brute") {
    try {
      const BruteForceResult bf = brute_force_opt(inst, BruteForceOptions{cfg.max_priced_edges});
      Json jb{{"feasible", bf.feasible}, {"checks", bf.checks}};
      if (bf.feasible) {
        jb["opt"] = to_string(bf.opt);
        agree(bf.opt, "brute force");
        std::cout << "brute-force OPT  " << to_string(bf.opt) << "  (" << bf.checks << " checks)\n";
      } else {
        Json un = Json::array();
        for (VertexId t : bf.unreachable) un.push_back(inst.label(t));
        jb["unreachable"] = std::move(un);
        std::cout << "brute force      infeasible\n";
      }
      body["brute"] = std::move(jb);
    } catch (const CapExceeded& e) {
      note_cap("brute", e);
    }
  }
  if (all || s.method == "lp") {
    try {
      LpOptions lo;
      lo.max_variables = cfg.max_lp_vars;
      lo.simplex.max_cells = cfg.max_tableau;
      const LpResult lp = solve_lp_exact(inst, lo);
      lp_value = lp.optimal_value;
      body["lp"] = lp_result_to_json(lp, inst);
      std::cout << "LP value         " << to_string(lp.optimal_value) << "  (certificate "
                << (lp.certificate.ok() ? "ok" : "REJECTED") << ")\n";
    } catch (const CapExceeded& e) {
      note_cap("lp", e);
    }
  }
  const GapObjects& obj = inst.objects();
  if (obj.family.kind != FamilyKind::kNone && validate_objects(obj).ok()) {
    const GapCertificate cert = certify_gap(obj, default_j_sets(obj));
    bound = cert.opt_lower_bound;
    body["certificate"] = certificate_to_json(cert, obj);
    std::cout << "alpha            " << to_string(cert.alpha) << "\n";
    std::cout << "certified bound  " << to_string(cert.opt_lower_bound) << "\n";
  }
  if (obj.s > 0) {
    const InstanceStats st = instance_stats(inst);
    std::cout << "canonical LP     " << to_string(st.canonical_lp_cost) << "\n";
    if (lp_value && *lp_value > st.canonical_lp_cost) {
      inconsistent = true;
      std::cout << "MISMATCH: LP value exceeds the canonical solution cost\n";
    }
  }
  if (opt_value && lp_value) {
    std::cout << "OPT / LP         " << to_string(*opt_value / *lp_value) << "  (~" << decimal(*opt_value / *lp_value, 6)
              << ")\n";
    body["opt_over_lp"] = to_string(*opt_value / *lp_value);
    if (*lp_value > *opt_value) {
      inconsistent = true;
      std::cout << "MISMATCH: LP value exceeds the integral optimum\n";
    }
  }
  if (opt_value && bound && *opt_value < *bound) {
    inconsistent = true;
    std::cout << "MISMATCH: integral optimum is below the certified bound\n";
  }
  body["consistent"] = !inconsistent;
  if (!s.out.empty()) write_json(s.out, std::move(body));
  if (inconsistent) return kFalse;
  return capped ? kCap : kOk;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
  std::vector<long> m_list{64, 128, 256, 512, 1024};
  std::string csv, json;
};

int cmd_bounds(const BoundsArgs& b, const RunConfig& cfg) {
  for (long m : b.m_list) check_fixed_m(m);
  const AlphaReport ar = alpha_asymptotics(b.m_list);
  std::vector<BoundsRow> rows;
  Json per_m = Json::array();
  bool all = ar.strictly_increasing && ar.all_above_one;
  for (const auto& arow : ar.rows) {
    BoundsRow row{verify_ja_bound(arow.m, cfg.digits), verify_kb_bound(arow.m, cfg.digits), arow};
    all = all && row.ja.report.all_satisfied() && row.kb.report.all_satisfied();
    per_m.push_back(Json{{"m", arow.m},
                         {"alpha", to_string(arow.alpha)},
                         {"log_alpha_over_m", arow.log_alpha_over_m},
                         {"ja", tail_report_to_json(row.ja.report)},
                         {"kb", tail_report_to_json(row.kb.report)}});
    rows.push_back(std::move(row));
  }
  std::cout << std::left << std::setw(7) << "m" << std::setw(16) << "|J_A|/d" << std::setw(16) << "|K_B\\J_A|/d'"
            << std::setw(16) << "k/d" << std::setw(16) << "alpha" << "status\n";
  for (const auto& r : rows) {
    const bool sat = r.ja.report.all_satisfied() && r.kb.report.all_satisfied();
    std::cout << std::left << std::setw(7) << r.ja.report.m << std::setw(16) << decimal(r.ja.ja_over_d, 6)
              << std::setw(16) << decimal(r.kb.tail, 6) << std::setw(16) << decimal(r.ja.k_over_d, 6) << std::setw(16)
              << decimal(r.alpha.alpha, 6) << (sat ? "satisfied" : "VIOLATED") << "\n";
  }
  std::cout << "alpha strictly increasing: " << (ar.strictly_increasing ? "yes" : "no")
            << ", alpha > 1 everywhere: " << (ar.all_above_one ? "yes" : "no") << "\n";
  if (!b.csv.empty()) write_file_atomic(b.csv, bounds_csv(rows));
  if (!b.json.empty()) {
    write_json(b.json, Json{{"header", report_header(cfg, "bounds", "")},
                            {"all_satisfied", all},
                            {"alpha_strictly_increasing", ar.strictly_increasing},
                            {"alpha_above_one", ar.all_above_one},
                            {"rows", std::move(per_m)}});
  }
  return all ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  for (int i = 0; i < argc; ++i) cfg.command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Directed Steiner tree integrality-gap instance toolkit", "dstgap"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value file; flags given on the command line take precedence");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--jobs", cfg.jobs, "Parallel max-flow workers")->check(CLI::Range(1u, 256u));
  app.add_option("--digits", cfg.digits, "Decimal digits for exp enclosures")->check(CLI::Range(20u, 10000u));
  app.add_option("--max-edges", cfg.max_edges, "Cap on |E_H| when generating")->check(CLI::PositiveNumber);
  app.add_option("--max-lp-vars", cfg.max_lp_vars, "Cap on LP variables")->check(CLI::PositiveNumber);
  app.add_option("--max-tableau", cfg.max_tableau, "Cap on simplex tableau cells")->check(CLI::PositiveNumber);
  app.add_option("--node-limit", cfg.node_limit, "Branch-and-bound node cap")->check(CLI::PositiveNumber);
  app.add_option("--max-priced-edges", cfg.max_priced_edges, "Brute-force cap on |A| + |B|")
      ->check(CLI::PositiveNumber);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a family instance");
  g->add_option("--family", gen.family, "zk or subset")->required()->check(CLI::IsMember({"zk", "subset"}));
  g->add_option("--k", gen.k, "zk: number of terminals (a perfect square)");
  g->add_option("--m", gen.m, "subset: ground set size");
  g->add_option("--a", gen.a, "subset: size of A-sets");
  g->add_option("--thresh", gen.thresh, "subset: J-set threshold (default a/4)");
  g->add_option("--out", gen.out, "Instance JSON path");
  g->add_option("--dot", gen.dot, "Also write a Graphviz file");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check the canonical fractional solution");
  v->add_option("instance", ver.instance)->required();
  v->add_option("--report", ver.report, "JSON report path");

  CertifyArgs cer;
  auto* c = app.add_subcommand("certify", "Certify an integral lower bound");
  c->add_option("instance", cer.instance)->required();
  auto* th = c->add_option("--thresh", cer.thresh, "J-set threshold (subset family)");
  c->add_flag("--sweep", cer.sweep, "Try every threshold and keep the best alpha")->excludes(th);
  c->add_option("--out", cer.out, "Certificate JSON path");

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Exact integral optimum and LP value");
  s->add_option("instance", sol.instance)->required();
  s->add_option("--method", sol.method)->check(CLI::IsMember({"structured", "brute", "lp", "all"}));
  s->add_option("--out", sol.out, "Solution JSON path");

  BoundsArgs bnd;
  auto* b = app.add_subcommand("bounds", "Check the tail bounds at rho = 1/16, theta = 1/64");
  b->add_option("--m-list", bnd.m_list, "Comma-separated m values")->delimiter(',');
  b->add_option("--csv", bnd.csv, "CSV report path");
  b->add_option("--json", bnd.json, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kBadParams;
  }

  try {
    if (*g) return cmd_gen(gen, cfg);
    if (*v) return cmd_verify(ver, cfg);
    if (*c) return cmd_certify(cer, cfg);
    if (*s) return cmd_solve(sol, cfg);
    if (*b) return cmd_bounds(bnd, cfg);
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadParams;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
