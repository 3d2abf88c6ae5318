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

#pragma once

// JSON, DOT and CSV forms of instances and reports. Rationals are always
// written as "num/den" strings. Key order is fixed, so serializing the same
// object twice gives identical bytes.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "dstgap/bounds.hpp"
#include "dstgap/error.hpp"
#include "dstgap/flow_lp.hpp"
#include "dstgap/instance.hpp"
#include "dstgap/integral.hpp"
#include "dstgap/lp_exact.hpp"

namespace dstgap {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInstanceFormat = "dstgap-instance/1";
inline constexpr std::size_t kDotVertexLimit = 500;

inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json family_to_json(const FamilyTag& f) {
  Json j;
  switch (f.kind) {
    case FamilyKind::kZk:
      j["name"] = "zk";
      j["k"] = f.k;
      break;
    case FamilyKind::kSubset:
      j["name"] = "subset";
      j["m"] = f.m;
      j["a"] = f.a;
      j["thresh"] = f.thresh;
      break;
    case FamilyKind::kNone:
      j["name"] = "none";
      break;
  }
  return j;
}

inline FamilyTag family_from_json(const Json& j) {
  FamilyTag f;
  const std::string name = j.at("name").get<std::string>();
  if (name == "zk") {
    f.kind = FamilyKind::kZk;
    f.k = j.at("k").get<int>();
  } else if (name == "subset") {
    f.kind = FamilyKind::kSubset;
    f.m = j.at("m").get<int>();
    f.a = j.at("a").get<int>();
    f.thresh = j.at("thresh").get<int>();
  } else if (name != "none") {
    throw InputError("unknown family '" + name + "'");
  }
  return f;
}

inline Json instance_to_json(const DstInstance& inst) {
  Json j;
  j["format"] = kInstanceFormat;
  Json levels = Json::array();
  for (const auto& level : inst.levels()) levels.push_back(level);
  j["levels"] = std::move(levels);
  Json edges = Json::array();
  for (const auto& e : inst.edges()) {
    Json je;
    je["tail"] = inst.label(e.tail);
    je["head"] = inst.label(e.head);
    je["cost"] = to_string(e.cost);
    if (e.color) je["color"] = inst.levels()[4].at(*e.color);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  Json pi = Json::object();
  for (std::size_t v = 0; v < inst.pi().size(); ++v) pi[inst.levels()[2][v]] = inst.label(inst.pi()[v]);
  j["pi"] = std::move(pi);
  const auto& obj = inst.objects();
  j["meta"] = Json{{"d", obj.d}, {"d_prime", obj.d_prime}, {"s", obj.s}, {"k", obj.k},
                   {"family", family_to_json(obj.family)}};
  return j;
}

inline std::string serialize_instance(const DstInstance& inst) { return instance_to_json(inst).dump(1) + "\n"; }

namespace detail {

inline std::string strip_prefix(const std::string& label, int level) {
  static const char* prefixes[] = {"", "A", "B", "B'", "K"};
  const std::string p = prefixes[level];
  return label.rfind(p, 0) == 0 ? label.substr(p.size()) : label;
}

}  // namespace detail

// Structural checks only: labels must resolve and edges must join
// consecutive levels. A hand-edited instance that breaks the construction
// rules still loads, so that verification can report what is wrong with it.
inline DstInstance instance_from_json(const Json& j) {
  try {
    if (j.value("format", std::string()) != kInstanceFormat) throw InputError("not a dstgap instance file");
    std::array<std::vector<std::string>, kLevels> levels;
    const auto& jl = j.at("levels");
    if (!jl.is_array() || jl.size() != kLevels) throw InputError("instance must have exactly 5 levels");
    std::unordered_map<std::string, VertexId> id;
    VertexId next = 0;
    for (int i = 0; i < kLevels; ++i) {
      for (const auto& l : jl[static_cast<std::size_t>(i)]) {
        levels[static_cast<std::size_t>(i)].push_back(l.get<std::string>());
        if (!id.emplace(levels[static_cast<std::size_t>(i)].back(), next++).second) {
          throw InputError("duplicate vertex label " + levels[static_cast<std::size_t>(i)].back());
        }
      }
    }
    auto lookup = [&](const std::string& label) {
      auto it = id.find(label);
      if (it == id.end()) throw InputError("unknown vertex label '" + label + "'");
      return it->second;
    };
    std::array<std::size_t, kLevels + 1> off{};
    for (int i = 0; i < kLevels; ++i) off[i + 1] = off[i] + levels[static_cast<std::size_t>(i)].size();
    auto level_of = [&](VertexId v) {
      int l = 0;
      while (v >= off[l + 1]) ++l;
      return l;
    };
    const auto& meta = j.at("meta");
    GapObjects obj;
    obj.d = meta.at("d").get<std::size_t>();
    obj.d_prime = meta.at("d_prime").get<std::size_t>();
    obj.s = meta.at("s").get<std::size_t>();
    obj.k = meta.at("k").get<std::size_t>();
    obj.family = family_from_json(meta.at("family"));
    for (const auto& l : levels[1]) obj.a_vertices.push_back(detail::strip_prefix(l, 1));
    for (const auto& l : levels[2]) obj.b_vertices.push_back(detail::strip_prefix(l, 2));
    for (const auto& l : levels[4]) obj.colors.push_back(detail::strip_prefix(l, 4));

    std::vector<DstEdge> edges;
    for (const auto& je : j.at("edges")) {
      DstEdge e;
      e.tail = lookup(je.at("tail").get<std::string>());
      e.head = lookup(je.at("head").get<std::string>());
      e.cost = parse_rational(je.at("cost").get<std::string>());
      e.level = level_of(e.head);
      if (e.level == 2) {
        if (!je.contains("color")) throw InputError("E2 edge without a color");
        const VertexId c = lookup(je.at("color").get<std::string>());
        if (level_of(c) != 4) throw InputError("edge color is not a terminal");
        e.color = c - off[4];
        if (level_of(e.tail) == 1) obj.edges.push_back(GapEdge{e.tail - off[1], e.head - off[2], *e.color});
      }
      edges.push_back(std::move(e));
    }
    std::vector<VertexId> pi(levels[2].size());
    const auto& jp = j.at("pi");
    for (std::size_t v = 0; v < levels[2].size(); ++v) {
      if (!jp.contains(levels[2][v])) throw InputError("pi lacks " + levels[2][v]);
      pi[v] = lookup(jp.at(levels[2][v]).get<std::string>());
    }
    return DstInstance(std::move(levels), std::move(edges), std::move(pi), std::move(obj));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

inline DstInstance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("instance is not valid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary file in the same directory and renames it over
// the target.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw InputError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string to_dot(const DstInstance& inst) {
  if (inst.vertex_count() > kDotVertexLimit) {
    throw CapExceeded("DOT export is limited to " + std::to_string(kDotVertexLimit) + " vertices");
  }
  std::ostringstream out;
  out << "digraph dst {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
  for (int l = 0; l < kLevels; ++l) {
    out << "  { rank=same;";
    for (std::size_t i = 0; i < inst.level_size(l); ++i) out << " \"" << inst.label(inst.vertex(l, i)) << "\";";
    out << " }\n";
  }
  for (const auto& e : inst.edges()) {
    out << "  \"" << inst.label(e.tail) << "\" -> \"" << inst.label(e.head) << "\"";
    if (sgn(e.cost) != 0) out << " [label=\"" << e.cost.get_str() << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

inline Json validation_to_json(const ValidationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"advisory", c.advisory}, {"witnesses", c.witnesses}});
  }
  return Json{{"ok", r.ok()}, {"checks", std::move(checks)}};
}

inline Json certificate_to_json(const GapCertificate& cert, const GapObjects& obj) {
  Json per_u = Json::array();
  for (const auto& e : cert.per_u) {
    per_u.push_back(Json{{"u", obj.a_vertices.at(e.u)}, {"j_size", e.j_size}, {"max_uncovered", e.max_uncovered}});
  }
  return Json{{"alpha", to_string(cert.alpha)},
              {"opt_lower_bound", to_string(cert.opt_lower_bound)},
              {"gap_lower_bound", to_string(cert.gap_lower_bound)},
              {"self_check", cert.self_check_passed},
              {"per_u", std::move(per_u)}};
}

inline Json feasibility_to_json(const FeasibilityReport& r, const DstInstance& inst) {
  Json terms = Json::array();
  for (const auto& tf : r.terminals) {
    Json cut = Json::array();
    for (EdgeId e : tf.cut) cut.push_back(inst.label(inst.edges()[e].tail) + "->" + inst.label(inst.edges()[e].head));
    terms.push_back(Json{{"terminal", inst.label(tf.terminal)}, {"flow", to_string(tf.value)},
                         {"feasible", tf.value >= 1}, {"min_cut", std::move(cut)}});
  }
  return Json{{"feasible", r.feasible}, {"terminals", std::move(terms)}};
}

inline Json lp_result_to_json(const LpResult& r, const DstInstance& inst) {
  Json x = Json::object();
  for (EdgeId e = 0; e < r.x_opt.x.size(); ++e) {
    if (sgn(r.x_opt.x[e]) != 0) x[inst.label(inst.edges()[e].tail) + "->" + inst.label(inst.edges()[e].head)] = to_string(r.x_opt.x[e]);
  }
  Json duals = Json::object();
  for (std::size_t i = 0; i < r.dual_certificate.size(); ++i) {
    if (sgn(r.dual_certificate[i]) != 0) duals[r.constraint_names[i]] = to_string(r.dual_certificate[i]);
  }
  return Json{{"optimal_value", to_string(r.optimal_value)},
              {"primal_objective", to_string(r.certificate.primal_objective)},
              {"dual_objective", to_string(r.certificate.dual_objective)},
              {"certificate_ok", r.certificate.ok()},
              {"variables", r.variables},
              {"constraints", r.constraints},
              {"pivots", r.pivots},
              {"x", std::move(x)},
              {"nonzero_duals", std::move(duals)}};
}

inline std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kBounded: return "bounded";
    case SolveStatus::kInfeasible: return "infeasible";
  }
  return "?";
}

inline Json structured_to_json(const StructuredSolution& s, const DstInstance& inst) {
  Json a = Json::array(), b = Json::array(), assign = Json::array();
  for (std::size_t u : s.opened_a) a.push_back(inst.label(inst.vertex(1, u)));
  for (std::size_t v : s.opened_b) b.push_back(inst.label(inst.vertex(2, v)));
  for (const auto& [v, u] : s.assignment) {
    assign.push_back(Json{{"b", inst.label(inst.vertex(2, v))}, {"a", inst.label(inst.vertex(1, u))}});
  }
  return Json{{"status", status_name(s.status)}, {"cost", to_string(s.cost)}, {"lower_bound", to_string(s.lower_bound)},
              {"nodes", s.nodes}, {"opened_a", std::move(a)}, {"opened_b", std::move(b)},
              {"assignment", std::move(assign)}};
}

struct BoundsRow {
  JaBound ja;
  KbBound kb;
  AlphaRow alpha;
};

inline std::string bounds_csv(const std::vector<BoundsRow>& rows) {
  std::ostringstream out;
  out << "m,exact_tail_JA,bound_JA,exact_tail_KB,bound_KB,k_over_d,bound_k_over_d,alpha,log_alpha_over_m,"
         "tail_prob_JA,bound_tail_prob_JA,satisfied\n";
  for (const auto& r : rows) {
    const auto& ja = r.ja.report.at("ja_over_d");
    const auto& tail = r.ja.report.at("tail_ja");
    const auto& kd = r.ja.report.at("k_over_d");
    const auto& kb = r.kb.report.at("kb_over_d_prime");
    char lam[64];
    std::snprintf(lam, sizeof lam, "%.10g", r.alpha.log_alpha_over_m);
    out << r.ja.report.m << ',' << decimal(ja.exact) << ',' << ja.bound.lo.str() << ',' << decimal(kb.exact) << ','
        << kb.bound.lo.str() << ',' << decimal(kd.exact) << ',' << kd.bound.lo.str() << ',' << decimal(r.alpha.alpha)
        << ',' << lam << ',' << decimal(tail.exact) << ',' << tail.bound.lo.str() << ','
        << ((r.ja.report.all_satisfied() && r.kb.report.all_satisfied()) ? "true" : "false") << '\n';
  }
  return out.str();
}

inline Json tail_report_to_json(const TailReport& r) {
  Json cs = Json::array();
  for (const auto& c : r.comparisons) {
    cs.push_back(Json{{"name", c.name}, {"exact", to_string(c.exact)}, {"exact_decimal", decimal(c.exact)},
                      {"bound_exponent", to_string(c.exponent)}, {"bound_lo", c.bound.lo.str(20, MPFR_RNDD)},
                      {"bound_hi", c.bound.hi.str(20, MPFR_RNDU)}, {"satisfied", c.satisfied}});
  }
  return Json{{"m", r.m}, {"comparisons", std::move(cs)}};
}

}  // namespace dstgap
