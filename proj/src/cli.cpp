#include "gkm/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cassert>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gkm/demazure.hpp"
#include "gkm/errors.hpp"
#include "gkm/sections.hpp"

namespace gkm {

namespace {

std::string word_name(const WeylGroup& W, int e) {
  if (e == 0) return "e";
  std::string s;
  for (int i : W.word[e]) {
    if (!s.empty()) s += " ";
    s += "s" + std::to_string(i + 1);
  }
  return s;
}

std::string root_name(const RootSystem& rs, int id) {
  std::string s;
  for (int i = 0; i < rs.rank; ++i) {
    long c = rs.simple_coords[id][i];
    if (c == 0) continue;
    if (!s.empty()) s += c > 0 ? "+" : "-";
    else if (c < 0) s += "-";
    long a = c > 0 ? c : -c;
    if (a != 1) s += std::to_string(a);
    s += "a" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

// Options as typed on the command line, before validation.
struct RawOpts {
  std::string kind = "A";
  int rank = 2;
  std::string q, p;
  std::string law = "additive";
  std::string law_file;
  std::string lattice = "weight";
  int trunc = 8;
  std::string policy = "min";
  std::string format = "text";
  unsigned long long seed = 0;
  std::string config;
};

void add_common(CLI::App* sub, RawOpts& r) {
  sub->add_option("--kind,-k", r.kind, "root system kind: A, B, C, D, G2");
  sub->add_option("--rank,-n", r.rank, "root system rank");
  sub->add_option("--q", r.q,
                  "left subset of simple roots, 1-based list (\"\" = empty, "
                  "\"all\" = full)");
  sub->add_option("--p", r.p, "right subset of simple roots, same syntax");
  sub->add_option("--law", r.law,
                  "formal group law: additive, multiplicative, custom");
  sub->add_option("--law-file", r.law_file,
                  "JSON coefficient table for --law custom");
  sub->add_option("--lattice", r.lattice, "character lattice: weight or root");
  sub->add_option("--trunc", r.trunc, "truncation degree for the custom law");
  sub->add_option("--policy", r.policy, "edge label policy: min or all");
  sub->add_option("--format,-f", r.format, "output format: text, dot, json");
  sub->add_option("--seed", r.seed, "sampling seed (recorded in output)");
  sub->add_option("--config", r.config,
                  "JSON file with the same fields; explicit flags win");
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return nlohmann::json::parse(in);
}

void merge_config(CLI::App* sub, RawOpts& r) {
  if (r.config.empty()) return;
  nlohmann::json j = load_json(r.config);
  auto miss = [&](const std::string& flag) {
    return sub->count(flag) == 0;
  };
  if (j.contains("kind") && miss("--kind")) r.kind = j["kind"];
  if (j.contains("rank") && miss("--rank")) r.rank = j["rank"];
  if (j.contains("q") && miss("--q")) r.q = j["q"];
  if (j.contains("p") && miss("--p")) r.p = j["p"];
  if (j.contains("law") && miss("--law")) r.law = j["law"];
  if (j.contains("law_file") && miss("--law-file")) r.law_file = j["law_file"];
  if (j.contains("lattice") && miss("--lattice")) r.lattice = j["lattice"];
  if (j.contains("trunc") && miss("--trunc")) r.trunc = j["trunc"];
  if (j.contains("policy") && miss("--policy")) r.policy = j["policy"];
  if (j.contains("format") && miss("--format")) r.format = j["format"];
  if (j.contains("seed") && miss("--seed")) r.seed = j["seed"];
}

RunConfig convert(CLI::App* sub, RawOpts& r) {
  merge_config(sub, r);
  RunConfig cfg;
  cfg.kind = kind_parse(r.kind);
  cfg.rank = r.rank;
  if (r.rank < 1 || r.rank > 12) throw WrongType("rank out of range");
  cfg.theta_q = parse_theta(r.q, r.rank);
  cfg.theta_p = parse_theta(r.p, r.rank);
  cfg.law = law_parse(r.law);
  cfg.lattice = lattice_parse(r.lattice);
  cfg.trunc = r.trunc;
  if (r.policy == "min") {
    cfg.policy = LabelPolicy::MinLabel;
  } else if (r.policy == "all") {
    cfg.policy = LabelPolicy::AllCandidates;
  } else {
    throw WrongType("unknown label policy: " + r.policy);
  }
  if (r.format != "text" && r.format != "dot" && r.format != "json")
    throw WrongType("unknown output format: " + r.format);
  cfg.format = r.format;
  cfg.seed = r.seed;
  if (cfg.law == Law::TruncatedCustom) {
    if (r.law_file.empty())
      throw WrongType("--law custom requires --law-file");
    nlohmann::json j = load_json(r.law_file);
    if (j.is_object() && j.contains("coefficients")) j = j["coefficients"];
    for (const auto& row : j) {
      int i = row.at(0).get<int>(), k = row.at(1).get<int>();
      if (i < 1 || k < 1) throw WrongType("law coefficients start at (1,1)");
      Rat c;
      if (row.at(2).is_string()) {
        c = Rat(row.at(2).get<std::string>());
        c.canonicalize();
      } else {
        c = Rat(row.at(2).get<long>());
      }
      cfg.coeff[{i, k}] = c;
    }
  }
  return cfg;
}

nlohmann::json subset_json(uint32_t theta, int rank) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < rank; ++i)
    if ((theta >> i) & 1) a.push_back(i + 1);
  return a;
}

nlohmann::json config_json(const RunConfig& c) {
  return {{"kind", kind_str(c.kind)},
          {"rank", c.rank},
          {"q", subset_json(c.theta_q, c.rank)},
          {"p", subset_json(c.theta_p, c.rank)},
          {"law", law_str(c.law)},
          {"lattice", c.lattice == Lattice::Weight ? "weight" : "root"},
          {"policy", c.policy == LabelPolicy::MinLabel ? "min" : "all"},
          {"seed", c.seed}};
}

std::string count_str(size_t n, const char* one, const char* many) {
  return std::to_string(n) + " " + (n == 1 ? one : many);
}

std::string header(const RunConfig& c, bool with_law) {
  std::string s = "kind " + kind_str(c.kind) + " rank " +
                  std::to_string(c.rank) + "  Q=" +
                  subset_str(c.theta_q, c.rank) + "  P=" +
                  subset_str(c.theta_p, c.rank);
  if (with_law) s += "  law " + law_str(c.law);
  return s;
}

// Root system, group and arithmetic context bound together; Instance must
// stay put once built (the context points into it).
struct Instance {
  RootSystem rs;
  WeylGroup W;
  FglContext fgl;
  explicit Instance(const RunConfig& c)
      : rs(build_root_system(c.kind, c.rank)),
        W(build_weyl_group(rs)),
        fgl(make_context(rs, W,
                         c.law == Law::TruncatedCustom ? Law::TruncatedCustom
                                                       : c.law,
                         c.lattice, c.trunc, c.coeff)) {}
};

void print_edges(std::ostream& os, const MomentGraph& g) {
  const RootSystem& rs = *g.W->rs;
  for (const auto& e : g.edges) {
    os << "  " << word_name(*g.W, g.vertices[e.src]) << " -> "
       << word_name(*g.W, g.vertices[e.dst]) << "  ["
       << root_name(rs, e.label) << "]";
    if (e.candidates.size() > 1) {
      os << "  candidates {";
      for (size_t i = 0; i < e.candidates.size(); ++i) {
        if (i) os << ", ";
        os << root_name(rs, e.candidates[i]);
      }
      os << "}";
    }
    os << "\n";
  }
}

int cmd_graph(const RunConfig& cfg) {
  RootSystem rs = build_root_system(cfg.kind, cfg.rank);
  WeylGroup W = build_weyl_group(rs);
  DoubleCosetTable dt = make_double_coset_table(W, cfg.theta_q, cfg.theta_p);
  MomentGraph gp = build_parabolic_graph(W, cfg.theta_p);
  MomentGraph gd = build_double_graph(W, dt, cfg.policy);
  MomentGraph gc = wq_closure(W, dt, gd);
  bool full = graphs_equal(gc, gp);

  if (cfg.format == "dot") {
    std::cout << "// parabolic graph\n" << gp.dot() << "// double graph\n"
              << gd.dot() << "// closure\n" << gc.dot();
    return 0;
  }
  if (cfg.format == "json") {
    nlohmann::json out = {{"config", config_json(cfg)},
                          {"parabolic", gp.to_json()},
                          {"double", gd.to_json()},
                          {"closure", gc.to_json()},
                          {"closure_equals_parabolic", full}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << header(cfg, false) << "\n";
  std::cout << "parabolic graph on W/W_P: "
            << count_str(gp.vertices.size(), "vertex", "vertices") << ", "
            << count_str(gp.edges.size(), "edge", "edges") << "\n";
  print_edges(std::cout, gp);
  std::cout << "double graph on Q\\W/P: "
            << count_str(gd.vertices.size(), "vertex", "vertices") << ", "
            << count_str(gd.edges.size(), "edge", "edges") << "\n";
  print_edges(std::cout, gd);
  std::cout << "closure inside the parabolic graph: " << gc.edges.size()
            << " of " << gp.edges.size() << " edges ("
            << (full ? "equal" : "strictly smaller") << ")\n";
  print_edges(std::cout, gc);
  return 0;
}

int cmd_closed(const RunConfig& cfg, bool sweep) {
  RootSystem rs = build_root_system(cfg.kind, cfg.rank);
  WeylGroup W = build_weyl_group(rs);
  auto classify = [&](uint32_t tq, uint32_t tp, bool& have) {
    try {
      have = true;
      return is_closed_classified(rs, tq, tp);
    } catch (const UnclassifiedType&) {
      have = false;
      return false;
    }
  };
  if (!sweep) {
    bool brute = is_closed_brute(W, cfg.theta_q, cfg.theta_p);
    bool have = false;
    bool cls = classify(cfg.theta_q, cfg.theta_p, have);
    std::cout << header(cfg, false) << "\n";
    std::cout << "brute force: " << (brute ? "closed" : "open") << "\n";
    if (have) {
      std::cout << "classification: " << (cls ? "closed" : "open") << "\n";
      std::cout << "agreement: " << (brute == cls ? "yes" : "NO") << "\n";
    } else {
      std::cout << "classification: n/a (no closed-form rule)\n";
    }
    return 0;
  }
  uint32_t full = (1u << cfg.rank) - 1;
  int pairs = 0, classified = 0, disagree = 0;
  std::cout << "kind " << kind_str(cfg.kind) << " rank " << cfg.rank
            << " sweep over all subset pairs\n";
  for (uint32_t tq = 0; tq <= full; ++tq) {
    for (uint32_t tp = 0; tp <= full; ++tp) {
      bool brute = is_closed_brute(W, tq, tp);
      bool have = false;
      bool cls = classify(tq, tp, have);
      ++pairs;
      std::cout << "Q=" << subset_str(tq, cfg.rank) << " P="
                << subset_str(tp, cfg.rank) << ": brute="
                << (brute ? "closed" : "open");
      if (have) {
        ++classified;
        bool ok = brute == cls;
        if (!ok) ++disagree;
        std::cout << " classified=" << (cls ? "closed" : "open") << " agree="
                  << (ok ? "yes" : "NO");
      } else {
        std::cout << " classified=n/a";
      }
      std::cout << "\n";
    }
  }
  std::cout << "summary: " << pairs << " pairs, " << classified
            << " classified, " << disagree << " disagreements\n";
  return 0;
}

Rat rat_from_json(const nlohmann::json& j) {
  Rat c;
  if (j.is_string()) {
    c = Rat(j.get<std::string>());
    c.canonicalize();
  } else {
    c = Rat(j.get<long>());
  }
  return c;
}

nlohmann::json selem_to_json(const SElem& s) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [k, c] : s.t)
    a.push_back({{"c", c.get_str()}, {"v", k.v}, {"b", k.b}});
  return a;
}

SElem selem_from_json(const FglContext& f, const nlohmann::json& j) {
  SElem s;
  for (const auto& term : j) {
    SKey k{term.at("v").get<std::vector<int>>(), term.value("b", 0)};
    if (int(k.v.size()) != f.nvars)
      throw IndexMismatch("term exponent vector has wrong length");
    s.add_term(k, rat_from_json(term.at("c")));
  }
  return s;
}

SectionTuple tuple_from_json(const FglContext& f, const nlohmann::json& j) {
  SectionTuple t;
  for (const auto& entry : j) t.push_back(selem_from_json(f, entry));
  return t;
}

// First failed requirement, or "member".
std::string verdict(const Sheaf& sh, const SectionTuple& t) {
  const FglContext& f = *sh.ctx;
  const WeylGroup& W = *sh.graph.W;
  if (t.size() != sh.graph.vertices.size())
    throw IndexMismatch("tuple length does not match the vertex count");
  for (size_t i = 0; i < t.size(); ++i) {
    if (!f.invariant(t[i], sh.vertex_theta[i]))
      return "rejected (vertex " + word_name(W, sh.graph.vertices[i]) +
             " outside its module)";
  }
  for (size_t ei = 0; ei < sh.graph.edges.size(); ++ei) {
    const MGEdge& e = sh.graph.edges[ei];
    SElem diff = t[e.src] - f.act(sh.twist[ei], t[e.dst]);
    if (!f.divisible(diff, e.label))
      return "rejected (edge " + word_name(W, sh.graph.vertices[e.src]) +
             " -> " + word_name(W, sh.graph.vertices[e.dst]) + " [" +
             root_name(*f.rs, e.label) + "])";
  }
  return "member";
}

int cmd_sections(const RunConfig& cfg, int basis_deg,
                 const std::string& check_file) {
  Instance in(cfg);
  DoubleCosetTable dt =
      make_double_coset_table(in.W, cfg.theta_q, cfg.theta_p);
  Sheaf sh = structure_sheaf_double(in.fgl, dt, cfg.policy);

  if (!check_file.empty()) {
    nlohmann::json j = load_json(check_file);
    if (j.is_object() && j.contains("tuples")) j = j["tuples"];
    std::vector<std::string> lines;
    nlohmann::json jv = nlohmann::json::array();
    int idx = 0;
    for (const auto& tj : j) {
      SectionTuple t = tuple_from_json(in.fgl, tj);
      std::string v = verdict(sh, t);
      bool ok;
      try {
        ok = is_section(sh, t);
      } catch (const VertexModuleViolation&) {
        ok = false;
      }
      assert(ok == (v == "member"));
      lines.push_back("tuple " + std::to_string(idx) + ": " + v);
      jv.push_back({{"member", v == "member"}, {"detail", v}});
      ++idx;
    }
    if (cfg.format == "json") {
      nlohmann::json out = {{"config", config_json(cfg)}, {"verdicts", jv}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << header(cfg, true) << "\n";
      for (const auto& l : lines) std::cout << l << "\n";
    }
    return 0;
  }

  GradedBasis gb = gamma_basis_graded(sh, basis_deg);
  if (cfg.format == "json") {
    nlohmann::json gens = nlohmann::json::array();
    for (int d = 0; d <= gb.max_deg; ++d) {
      nlohmann::json layer = nlohmann::json::array();
      for (const auto& t : gb.gens[d]) {
        nlohmann::json g = nlohmann::json::array();
        for (const auto& s : t) g.push_back(selem_to_json(s));
        layer.push_back(g);
      }
      gens.push_back(layer);
    }
    nlohmann::json out = {{"config", config_json(cfg)},
                          {"dims", gb.dim},
                          {"generators", gens}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << header(cfg, true) << "\n";
  std::cout << "graded dimensions up to degree " << gb.max_deg << ":";
  for (int d : gb.dim) std::cout << " " << d;
  std::cout << "\n";
  for (int d = 0; d <= gb.max_deg; ++d) {
    std::cout << "degree " << d << " generators: " << gb.gens[d].size()
              << "\n";
    for (const auto& t : gb.gens[d]) {
      std::cout << "  (";
      for (size_t i = 0; i < t.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << in.fgl.str(t[i]);
      }
      std::cout << ")\n";
    }
  }
  std::cout << "total generators: " << gb.rank() << "\n";
  return 0;
}

int cmd_product(const RunConfig& cfg, const std::string& file_b,
                const std::string& file_c) {
  Instance in(cfg);
  CosetTable ch = make_coset_table(in.W, cfg.theta_q);
  CosetTable cp = make_coset_table(in.W, cfg.theta_p);
  auto one_tuple = [&](const std::string& path) {
    nlohmann::json j = load_json(path);
    if (j.is_object() && j.contains("tuple")) j = j["tuple"];
    return tuple_from_json(in.fgl, j);
  };
  std::vector<SElem> b = one_tuple(file_b);
  std::vector<SElem> c = one_tuple(file_c);
  std::vector<SElem> a = correspondence_product(in.fgl, ch, cp, c, b);
  if (cfg.format == "json") {
    nlohmann::json jr = nlohmann::json::array();
    nlohmann::json jd = nlohmann::json::array();
    for (size_t i = 0; i < a.size(); ++i) {
      jr.push_back(selem_to_json(a[i]));
      jd.push_back(word_name(in.W, ch.reps[i]) + ": " + in.fgl.str(a[i]));
    }
    nlohmann::json out = {{"config", config_json(cfg)},
                          {"result", jr},
                          {"display", jd}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << header(cfg, true) << "\n";
  for (size_t i = 0; i < a.size(); ++i) {
    std::cout << word_name(in.W, ch.reps[i]) << ": " << in.fgl.str(a[i])
              << "\n";
  }
  return 0;
}

}  // namespace

uint32_t parse_theta(const std::string& s, int rank) {
  if (s.empty()) return 0;
  if (s == "all") return (1u << rank) - 1;
  uint32_t m = 0;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw WrongType("bad simple-root index: " + tok);
    }
    if (pos != tok.size()) throw WrongType("bad simple-root index: " + tok);
    if (v < 1 || v > rank)
      throw WrongType("simple-root index out of range: " + tok);
    m |= 1u << (v - 1);
  }
  return m;
}

std::string subset_str(uint32_t theta, int rank) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < rank; ++i) {
    if (!((theta >> i) & 1)) continue;
    if (!first) s += ",";
    first = false;
    s += std::to_string(i + 1);
  }
  return s + "}";
}

int run_cli(int argc, char** argv) {
  CLI::App app{"moment-graph and twisted-algebra toolkit for flag varieties"};
  app.require_subcommand(1);

  RawOpts r;
  bool sweep = false;
  int basis_deg = 3;
  std::string check_file, file_b, file_c;

  CLI::App* g = app.add_subcommand(
      "graph", "emit the parabolic graph, double graph and closure");
  add_common(g, r);

  CLI::App* cl = app.add_subcommand(
      "closed", "compare brute-force and classified closedness");
  add_common(cl, r);
  cl->add_flag("--sweep", sweep, "iterate over every subset pair");

  CLI::App* se = app.add_subcommand(
      "sections", "graded section basis or tuple membership checks");
  add_common(se, r);
  CLI::Option* ob = se->add_option("--basis", basis_deg,
                                   "print a graded basis up to this degree");
  CLI::Option* oc = se->add_option(
      "--check", check_file,
      "JSON file of tuples to test ({\"tuples\": [[...entry terms...]]})");
  ob->excludes(oc);

  CLI::App* pr = app.add_subcommand(
      "product",
      "correspondence product; --q indexes file_c and the result, --p "
      "indexes file_b");
  add_common(pr, r);
  pr->add_option("file_b", file_b, "inner tuple over the P-quotient")
      ->required();
  pr->add_option("file_c", file_c, "outer tuple over the Q-quotient")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    RunConfig cfg = convert(sub, r);
    if (sub == g) return cmd_graph(cfg);
    if (sub == cl) return cmd_closed(cfg, sweep);
    if (sub == se) return cmd_sections(cfg, basis_deg, check_file);
    return cmd_product(cfg, file_b, file_c);
  } catch (const WrongType& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const MathDomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gkm
