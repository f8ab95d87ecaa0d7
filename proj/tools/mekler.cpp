// mekler: command-line front end.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 semantic rejection
// (non-nice graph, element outside an operation's domain, failed recovery),
// 3 enumeration or search cap exceeded.

#include <cstdlib>
#include <map>
#include <iostream>
#include <random>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "mekler/bilinear.hpp"
#include "mekler/classification.hpp"
#include "mekler/errors.hpp"
#include "mekler/graph_io.hpp"
#include "mekler/transversal.hpp"
#include "report.hpp"
#include "system_json.hpp"

namespace mekler::cli {
namespace {

constexpr int kExitOk = 0, kExitUsage = 1, kExitSemantic = 2, kExitCap = 3;

struct RunConfig {
  std::string graph_path;
  Scalar p = 3;
  std::string format = "text";
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 0;
  std::size_t m = 2;
  std::size_t threshold = 2;
  std::string system_path;
  std::vector<std::string> span;
  std::size_t random_subspaces = 0;
  std::size_t max_dim = 4;
  std::string element;
};

// "1,0,2" or "[1,0,2]"
Coords parse_vector(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != '[' && c != ']' && c != ' ') s += c;
  }
  Coords out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Scalar>(v));
    } catch (const std::logic_error&) {
      throw InputError("bad vector '" + text + "'");
    }
  }
  return out;
}

// Decimal when at most `cap`, exponent form otherwise.
Json order_text(Scalar p, std::size_t exponent, std::uint64_t cap) {
  const auto v = checked_pow(p, exponent);
  if (v && *v <= cap) return std::to_string(*v);
  return std::to_string(p) + "^" + std::to_string(exponent);
}

Json graph_summary(const Graph& c) {
  Json j;
  j["vertices"] = c.vertex_count();
  j["edges"] = c.edge_count();
  return j;
}

Json violation_json(const NicenessViolation& v) {
  Json j;
  std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, violation::TooSmall>) {
          j["kind"] = "TooSmall";
          j["vertices"] = Json::array();
        } else if constexpr (std::is_same_v<T, violation::NoSeparator>) {
          j["kind"] = "NoSeparator";
          j["vertices"] = {w.v1, w.v2};
        } else if constexpr (std::is_same_v<T, violation::Triangle>) {
          j["kind"] = "Triangle";
          j["vertices"] = {w.u, w.v, w.w};
        } else {
          j["kind"] = "Square";
          j["vertices"] = {w.u, w.v, w.w, w.x};
        }
      },
      v);
  return j;
}

Json class_json(const ClassId& id) {
  Json j;
  j["rep"] = id.rep;
  const auto v = vertex_of_class(id);
  j["vertex"] = v ? Json(*v) : Json(nullptr);
  return j;
}

Json attestation_json(const Attestation& a) {
  Json j;
  j["maximal"] = a.maximal;
  j["method"] = a.method;
  j["candidates_examined"] = a.candidates_examined;
  return j;
}

Json elements_json(const std::vector<Element>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(format_element(x));
  return j;
}

Json search_json(const SeparatedSearchResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["method"] = r.method.empty() ? Json(nullptr) : Json(r.method);
  j["basis"] = r.basis;
  j["replacements"] = r.replacements;
  j["nodes"] = r.nodes;
  j["search_exhausted"] = r.search_exhausted;
  if (r.certificate) {
    Json c;
    c["subspace_dim"] = r.certificate->subspace_dim;
    c["value_span_dim"] = r.certificate->value_span_dim;
    c["pairs_needed"] = r.certificate->pairs_needed;
    j["certificate"] = c;
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

MeklerGroup load_group(const RunConfig& cfg) {
  return MeklerGroup(read_graph_file(cfg.graph_path), cfg.p);
}

// ---- commands ---------------------------------------------------------------------

int cmd_check_nice(const RunConfig& cfg, Json& out) {
  const auto c = read_graph_file(cfg.graph_path);
  const auto report = is_nice(c);
  out["graph"] = graph_summary(c);
  out["nice"] = report.nice;
  out["violation"] = report.violation ? violation_json(*report.violation) : Json(nullptr);
  out["message"] = report.describe();
  return report.nice ? kExitOk : kExitSemantic;
}

int cmd_build(const RunConfig& cfg, Json& out) {
  const auto g = load_group(cfg);
  out["graph"] = graph_summary(g.graph());
  out["p"] = g.p();
  out["dim_v"] = g.dim_v();
  out["dim_w"] = g.dim_w();
  out["order_exponent"] = g.order_exponent();
  out["order"] = order_text(g.p(), g.order_exponent(), cfg.cap);
  out["center_order"] = order_text(g.p(), g.dim_w(), cfg.cap);
  const auto order = g.order();
  const bool enumerable = order && *order <= cfg.cap;
  out["enumeration"] = enumerable ? "available" : "skipped (order exceeds cap)";
  out["census"] = enumerable ? "available" : "skipped (order exceeds cap)";
  const auto t = compute_full_transversal(g, cfg.cap);
  Json tj;
  tj["x_nu"] = t.x_nu.size();
  tj["x_p"] = t.x_p.size();
  tj["x_iota"] = t.x_iota.size();
  tj["x_zeta"] = t.x_zeta.size();
  out["transversal"] = tj;
  out["counting_identity"] =
      t.x_nu.size() + t.x_p.size() + t.x_iota.size() + g.dim_w() + t.x_zeta.size() ==
      g.order_exponent();
  return kExitOk;
}

int cmd_census(const RunConfig& cfg, Json& out) {
  const auto g = load_group(cfg);
  const auto c = type_census(g, cfg.cap);
  auto opt = [](const std::optional<std::uint64_t>& v) {
    return v ? Json(*v) : Json(nullptr);
  };
  out["p"] = g.p();
  out["order"] = order_text(g.p(), g.order_exponent(), cfg.cap);
  out["complete"] = c.complete;
  out["central"] = c.central;
  out["one_nu"] = c.one_nu;
  out["p_minus_one"] = opt(c.p_minus_one);
  out["type_p"] = opt(c.type_p);
  out["one_iota"] = opt(c.one_iota);
  return kExitOk;
}

int cmd_recover(const RunConfig& cfg, Json& out) {
  const auto g = load_group(cfg);
  out["p"] = g.p();
  try {
    const auto r = recover_graph(g);
    out["isomorphic"] = true;
    Json classes = Json::array();
    for (const auto& id : r.quotient.classes) classes.push_back(class_json(id));
    out["classes"] = classes;
    out["isomorphism"] = r.isomorphism;
  } catch (const InternalError& e) {
    out["isomorphic"] = false;
    out["reason"] = e.what();
    return kExitSemantic;
  }
  // Gamma of the computed X^nu as a cover of the graph.
  const auto t = compute_transversal(g, cfg.cap);
  const auto q = gamma_graph(g, t.x_nu);
  std::vector<Vertex> all(q.graph.vertex_count());
  for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
  const auto cover = is_cover(q.graph, all, cfg.threshold);
  Json cj;
  cj["threshold"] = cfg.threshold;
  cj["is_cover"] = cover.is_cover;
  if (!cover.reason.empty()) cj["reason"] = cover.reason;
  out["transversal_cover"] = cj;
  return kExitOk;
}

int cmd_separated(const RunConfig& cfg, Json& out) {
  if (cfg.system_path.empty() == cfg.graph_path.empty()) {
    throw InputError("give exactly one of a graph file or --system");
  }
  const auto sys = cfg.system_path.empty() ? f_of_group(load_group(cfg))
                                           : read_system_file(cfg.system_path);
  out["p"] = sys.p();
  out["dim_v"] = sys.dim_v();
  out["dim_w"] = sys.dim_w();

  if (cfg.random_subspaces > 0) {
    if (!cfg.span.empty()) throw InputError("--span and --random are exclusive");
    std::mt19937_64 rng(cfg.seed);
    std::map<std::string, std::size_t> counts{
        {"found", 0}, {"none-certified", 0}, {"indeterminate", 0}};
    Json cases = Json::array();
    for (std::size_t t = 0; t < cfg.random_subspaces; ++t) {
      std::vector<Coords> spanning(1 + rng() % std::max<std::size_t>(cfg.max_dim, 1),
                                   Coords(sys.dim_v(), 0));
      for (auto& v : spanning) {
        for (auto& s : v) s = static_cast<Scalar>(rng() % sys.p());
      }
      const auto r = find_separated_basis(sys, spanning);
      ++counts[to_string(r.status)];
      if (r.status != SeparationStatus::Found) {
        Json c;
        c["spanning"] = spanning;
        c["result"] = search_json(r);
        cases.push_back(c);
      }
    }
    out["seed"] = cfg.seed;
    out["subspaces"] = cfg.random_subspaces;
    out["max_dim"] = cfg.max_dim;
    out["found"] = counts["found"];
    out["none_certified"] = counts["none-certified"];
    out["indeterminate"] = counts["indeterminate"];
    out["not_found"] = cases;
    return kExitOk;
  }

  std::vector<Coords> spanning;
  for (const auto& s : cfg.span) spanning.push_back(parse_vector(s));
  if (spanning.empty()) {
    for (std::size_t i = 0; i < sys.dim_v(); ++i) {
      spanning.push_back(unit_vector(sys.dim_v(), i));
    }
  }
  out["spanning"] = spanning;
  out["result"] = search_json(find_separated_basis(sys, spanning));
  return kExitOk;
}

int cmd_inp(const RunConfig& cfg, Json& out) {
  const auto g = load_group(cfg);
  std::vector<Vertex> vertices(g.dim_v());
  for (Vertex v = 0; v < vertices.size(); ++v) vertices[v] = v;
  const auto r = inp_pattern_check(g, cfg.m, vertices, cfg.cap);
  out["p"] = g.p();
  out["m"] = r.m;
  out["vertices"] = r.vertices;
  out["m_subsets_checked"] = r.m_subsets_checked;
  out["m_subsets_realised"] = r.m_subsets_realised;
  out["larger_subsets_checked"] = r.larger_subsets_checked;
  out["larger_subsets_realised"] = r.larger_subsets_realised;
  out["consistent"] = r.consistent;
  out["inconsistent"] = r.inconsistent;
  out["inconsistent_at"] = r.inconsistent_at ? Json(*r.inconsistent_at) : Json(nullptr);
  Json w = Json::array();
  for (const auto& [subset, element] : r.witnesses) {
    Json e;
    e["subset"] = subset;
    e["element"] = format_element(element);
    w.push_back(e);
  }
  out["witnesses"] = w;
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg, Json& out) {
  const auto g = load_group(cfg);
  const auto a = parse_element(g, cfg.element);
  const auto t = type_of(g, a);
  out["element"] = format_element(a);
  out["type"] = to_string(t.tag);
  out["isolation"] = to_string(t.isolation);
  out["q"] = t.q(g.p());
  out["class"] = class_json(class_id(g, a));
  out["handle"] = t.handle ? class_json(*t.handle) : Json(nullptr);
  const auto idx = minimal_A_index(g, a);
  out["minimal_a_index"] = {{"n", idx.n}, {"m", idx.m}};
  const auto s = support(g, a, idx.n, idx.m);
  if (!s) throw InternalError("no support at the minimal index");
  Json sj;
  Json nu = Json::array(), handles = Json::array();
  for (const auto& id : s->s) nu.push_back(class_json(id));
  for (const auto& id : s->s_handles) handles.push_back(class_json(id));
  sj["s"] = nu;
  sj["s_handles"] = handles;
  sj["witness_independent"] = s->witness_independent;
  out["support"] = sj;
  return kExitOk;
}

int cmd_export_system(const RunConfig& cfg, Json& out) {
  const auto sys = f_of_group(load_group(cfg));
  const auto doc = system_to_json(sys);
  for (const auto& [k, v] : doc.items()) out[k] = v;
  return kExitOk;
}

int cmd_transversal(const RunConfig& cfg, Json& out) {
  const auto g = load_group(cfg);
  const auto t = compute_full_transversal(g, cfg.cap);
  out["p"] = g.p();
  out["x_nu"] = elements_json(t.x_nu);
  out["x_p"] = elements_json(t.x_p);
  out["x_iota"] = elements_json(t.x_iota);
  out["x_zeta"] = elements_json(t.x_zeta);
  out["attestations"] = {{"nu", attestation_json(t.nu)},
                         {"p", attestation_json(t.p)},
                         {"iota", attestation_json(t.iota)},
                         {"zeta", attestation_json(t.zeta)}};
  const auto qf = transversal_qf_check(g, t, cfg.cap);
  out["qf_check"] = {{"pass", qf.pass},
                     {"products_checked", qf.products_checked},
                     {"violations", qf.violations}};
  return qf.pass ? kExitOk : kExitSemantic;
}

std::uint64_t default_cap() {
  const char* env = std::getenv("MEKLER_CAP");
  if (!env) return kDefaultEnumerationCap;
  try {
    std::size_t used = 0;
    const std::string s(env);
    const auto v = std::stoull(s, &used);
    if (used == s.size() && v >= 1) return v;
  } catch (const std::logic_error&) {
  }
  throw InputError("MEKLER_CAP must be a positive integer");
}

}  // namespace

int run(int argc, char** argv) {
  RunConfig cfg;
  try {
    cfg.cap = default_cap();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Finite Mekler groups M(C) over F_p: classification, graph recovery, "
               "bilinear systems and transversals."};
  app.require_subcommand(1);

  using Handler = int (*)(const RunConfig&, Json&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const std::string& name, const std::string& help, Handler h,
                 bool graph) {
    auto* sub = app.add_subcommand(name, help);
    if (graph) sub->add_option("graph", cfg.graph_path, "Edge-list or DOT file")->required();
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--cap", cfg.cap, "Enumeration cap (default MEKLER_CAP or 1e8)")
        ->check(CLI::PositiveNumber);
    commands.emplace_back(sub, h);
    return sub;
  };
  auto with_p = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Odd prime");
    return sub;
  };

  add("check-nice", "Check the niceness conditions", cmd_check_nice, true);
  with_p(add("build", "Build M(C) and summarise it", cmd_build, true));
  with_p(add("census", "Count elements by type", cmd_census, true));
  auto* recover = with_p(add("recover", "Recover C from Gamma(E^nu)", cmd_recover, true));
  recover->add_option("--threshold", cfg.threshold, "Neighbour threshold of the cover test");
  auto* sep = with_p(add("separated", "Search for a separated basis", cmd_separated, false));
  sep->add_option("graph", cfg.graph_path, "Edge-list or DOT file");
  sep->add_option("--system", cfg.system_path, "Bilinear system JSON");
  sep->add_option("--span", cfg.span, "Spanning vector, e.g. 1,0,2 (repeatable)");
  sep->add_option("--random", cfg.random_subspaces, "Survey this many random subspaces");
  sep->add_option("--max-dim", cfg.max_dim, "Largest spanning set in the survey");
  sep->add_option("--seed", cfg.seed, "Survey seed");
  auto* inp = with_p(add("inp", "Check the inp pattern of the support family", cmd_inp, true));
  inp->add_option("--m", cfg.m, "Pattern size")->check(CLI::PositiveNumber);
  auto* classify = with_p(add("classify", "Classify one element", cmd_classify, true));
  classify->add_option("element", cfg.element, "gen=[...];com=[...]")->required();
  with_p(add("export-system", "Print F(G) as a bilinear system", cmd_export_system, true));
  with_p(add("transversal", "Compute a full transversal", cmd_transversal, true));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    Json report = make_report(sub->get_name());
    try {
      const int code = handler(cfg, report);
      write_report(std::cout, report, cfg.format);
      return code;
    } catch (const NotNiceError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitSemantic;
    } catch (const DomainError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitSemantic;
    } catch (const CapExceeded& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitCap;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return kExitUsage;
}

}  // namespace mekler::cli

int main(int argc, char** argv) { return mekler::cli::run(argc, argv); }
