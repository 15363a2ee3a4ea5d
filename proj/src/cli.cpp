#include "twi/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "twi/dimacs.hpp"
#include "twi/instance_gen.hpp"
#include "twi/oracles.hpp"
#include "twi/report.hpp"

namespace twi {

namespace {

// Input problems (unreadable files, malformed instances, bad parameters).
class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A report or decomposition that does not check out.
class VerifyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input, out, report, decomposition;
  std::string kind = "grid";
  std::string problem = "treewidth";
  int k = 5, n = 20, m = 30, arity = 3;
  double keep = 0.6;
  double delta = 0.0;
  std::string noise = "uniform";
  std::uint64_t seed = 0;
  int w = 1, bag_cap = 0, max_rounds = 500;
  std::string s0 = "top_degree";
  std::vector<int> s0_vertices;
  double boundary_factor = 48.0, max_radius = 1.0 / 12.0;
  int s = 6;
  double beta = 0.5;
  int a = -1, repeats = 10;
  std::string preset;
  double epsilon = 0.5;
};

int log_level() {
  const char* v = std::getenv("TWI_LOG_LEVEL");
  if (!v) return 0;
  const std::string s = v;
  if (s == "debug") return 2;
  if (s == "info") return 1;
  return 0;
}

Graph load_graph(const std::string& path) {
  try {
    return read_dimacs_graph_file(path);
  } catch (const ParseError& e) {
    throw BadInput(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw BadInput(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw BadInput(path + ": " + e.what());
  }
}

CnfFormula load_cnf(const std::string& path) {
  try {
    return read_dimacs_cnf_file(path);
  } catch (const ParseError& e) {
    throw BadInput(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw BadInput(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw BadInput(path + ": " + e.what());
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw BadInput(path + ": " + e.what());
  }
}

void emit(const Json& doc, const Options& o, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw BadInput("cannot write " + o.out);
  f << text;
}

Json envelope(const std::string& command, Json config) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}, {"config", std::move(config)}};
}

InterdictConfig interdict_config(const Options& o) {
  InterdictConfig c;
  c.w = o.w;
  c.bag_cap = o.bag_cap;
  c.s0_policy = parse_s0_policy(o.s0);
  for (int v : o.s0_vertices) c.s0.push_back(v - 1);
  c.max_cut_rounds = o.max_rounds;
  c.constants.boundary_factor = o.boundary_factor;
  c.constants.max_radius = o.max_radius;
  c.seed = o.seed;
  if (c.w < 1) throw BadInput("--w must be >= 1");
  return c;
}

Json interdict_config_json(const InterdictConfig& c) {
  return Json{{"w", c.w},
              {"bag_cap", c.effective_bag_cap()},
              {"s0", to_string(c.s0_policy)},
              {"s0_vertices", vertices_to_json(c.s0)},
              {"max_rounds", c.max_cut_rounds},
              {"boundary_factor", c.constants.boundary_factor},
              {"max_radius", c.constants.max_radius},
              {"tol_feas", c.tol.feas},
              {"tol_gap", c.tol.gap},
              {"tol_cut", c.tol.cut},
              {"seed", c.seed}};
}

// ---- commands ----

int run_gen(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw BadInput("gen needs --out");
  NoiseSpec noise{o.delta, o.seed, parse_noise_mode(o.noise)};
  Json config{{"kind", o.kind}, {"delta", o.delta}, {"noise", o.noise}, {"seed", o.seed}};
  Json truth;
  std::ostringstream f;
  if (o.kind == "cnf") {
    config["n"] = o.n;
    config["m"] = o.m;
    config["arity"] = o.arity;
    const CnfFormula base = gen_planar_cnf(o.n, o.m, o.arity, o.seed);
    const NoisyFormula noisy = add_noise_clauses(base, noise);
    write_dimacs_cnf(f, noisy.formula);
    Json idx = Json::array();
    for (int c : noisy.noisy_clauses) idx.push_back(c + 1);
    truth = Json{{"base_clauses", base.clause_count()}, {"noisy_clauses", idx}};
  } else {
    Graph base;
    if (o.kind == "grid") {
      config["k"] = o.k;
      base = gen_grid(o.k);
    } else if (o.kind == "planar") {
      config["n"] = o.n;
      config["keep"] = o.keep;
      base = gen_random_planar(o.n, o.seed, o.keep);
    } else {
      throw BadInput("unknown instance kind '" + o.kind + "'");
    }
    const NoisyGraph noisy = add_noise_edges(base, noise);
    write_dimacs_graph(f, noisy.graph);
    Json edges = Json::array();
    for (const Edge& e : noisy.noisy_edges) edges.push_back({e.u + 1, e.v + 1});
    truth = Json{{"base_edges", base.edge_count()}, {"noisy_edges", edges}};
  }
  std::ofstream file(o.out);
  if (!file) throw BadInput("cannot write " + o.out);
  file << f.str();
  Json doc = envelope("gen", config);
  doc["instance"] = o.out;
  doc["truth"] = truth;
  std::ofstream side(o.out + ".truth.json");
  if (!side) throw BadInput("cannot write " + o.out + ".truth.json");
  side << doc.dump(2) << "\n";
  (void)out;
  return kExitOk;
}

int run_interdict(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.input);
  const InterdictConfig c = interdict_config(o);
  Json config = interdict_config_json(c);
  config["input"] = o.input;
  const InterdictionResult r = round_or_separate(g, c);
  Json doc = envelope("interdict", config);
  doc["result"] = interdiction_to_json(g, r, c);
  emit(doc, o, out);
  return kExitOk;
}

BsiOptions bsi_options(const Options& o) {
  BsiOptions b;
  b.fixed_a = o.a;
  b.repeats = o.repeats;
  b.seed = o.seed;
  if (o.s < 1) throw BadInput("--s must be >= 1");
  if (!(o.beta > 0 && o.beta <= 1)) throw BadInput("--beta must lie in (0, 1]");
  if (o.repeats < 1) throw BadInput("--repeats must be >= 1");
  return b;
}

int run_bsi(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.input);
  const BsiOptions b = bsi_options(o);
  Json config{{"input", o.input}, {"s", o.s}, {"beta", o.beta}, {"a", o.a},
              {"repeats", o.repeats}, {"seed", o.seed}};
  const BsiSolveResult r = bsi_solve(g, o.s, o.beta, b);
  Json doc = envelope("bsi", config);
  doc["result"] = bsi_to_json(g, r, o.s, o.beta);
  emit(doc, o, out);
  return kExitOk;
}

int run_mis(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.input);
  MisParams p;
  if (o.preset == "paper") {
    p = mis_theory_preset(o.epsilon);
  } else if (o.preset.empty() || o.preset == "fast") {
    p = mis_fast_preset();
    if (o.preset.empty()) {
      p.s = o.s;
      p.beta = o.beta;
    }
  } else {
    throw BadInput("unknown preset '" + o.preset + "'");
  }
  Options tuned = o;
  tuned.s = p.s;
  tuned.beta = p.beta;
  p.bsi = bsi_options(tuned);
  Json config{{"input", o.input}, {"preset", o.preset}, {"epsilon", o.epsilon}, {"s", p.s},
              {"beta", p.beta}, {"a", o.a}, {"repeats", o.repeats}, {"seed", o.seed}};
  const MisReport r = noisy_mis(g, p);
  Json doc = envelope("mis", config);
  doc["result"] = mis_to_json(r);
  emit(doc, o, out);
  return kExitOk;
}

int run_maxsat(const Options& o, std::ostream& out) {
  const CnfFormula phi = load_cnf(o.input);
  MaxSatParams p;
  if (o.preset == "paper") {
    p = maxsat_theory_preset(o.epsilon, phi.clause_count());
  } else if (o.preset.empty() || o.preset == "fast") {
    p = maxsat_fast_preset(o.w);
  } else {
    throw BadInput("unknown preset '" + o.preset + "'");
  }
  Options tuned = o;
  tuned.w = p.interdict.w;
  p.interdict = interdict_config(tuned);
  Json config = interdict_config_json(p.interdict);
  config["input"] = o.input;
  config["preset"] = o.preset;
  config["epsilon"] = o.epsilon;
  const MaxSatReport r = noisy_maxsat(phi, p);
  Json doc = envelope("maxsat", config);
  doc["result"] = maxsat_to_json(phi, r);
  emit(doc, o, out);
  return kExitOk;
}

int run_oracle(const Options& o, std::ostream& out) {
  Json config{{"input", o.input}, {"problem", o.problem}};
  Json result;
  if (o.problem == "maxsat") {
    const CnfFormula phi = load_cnf(o.input);
    const MaxSatResult r = exact_maxsat(phi);
    result = Json{{"objective", r.satisfied},
                  {"assignment", assignment_to_json(r.assignment)},
                  {"certificate", assignment_certificate(r.assignment)}};
  } else {
    const Graph g = load_graph(o.input);
    if (o.problem == "treewidth") {
      const TreewidthResult r = exact_treewidth(g);
      result = Json{{"objective", r.width},
                    {"elimination_order", vertices_to_json(r.elimination_order)},
                    {"decomposition", decomposition_to_json(r.witness)}};
    } else if (o.problem == "mis") {
      const auto set = exact_mis(g);
      result = Json{{"objective", set.size()}, {"independent_set", vertices_to_json(set)}};
    } else if (o.problem == "interdiction") {
      if (o.w < 1) throw BadInput("--w must be >= 1");
      config["w"] = o.w;
      const auto r = exact_interdiction(g, o.w);
      result = Json{{"objective", r.F.size()},
                    {"F", edges_to_json(g, r.F)},
                    {"decomposition", decomposition_to_json(r.certificate)}};
    } else if (o.problem == "linkedness") {
      const auto r = linkedness(g);
      result = Json{{"objective", r.link}, {"witness", vertices_to_json(r.witness)}};
    } else {
      throw BadInput("unknown oracle problem '" + o.problem + "'");
    }
  }
  Json doc = envelope("oracle", config);
  doc["result"] = result;
  emit(doc, o, out);
  return kExitOk;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw VerifyFailure(what);
}

void verify_decomposition(const TreeDecomposition& t, const Graph& g, const std::string& label) {
  const auto rep = validate(t, g);
  if (rep.ok()) return;
  std::string msg = label + ": " + rep.message;
  if (rep.kind == ValidationReport::Kind::edge_uncovered)
    msg += " (edge " + std::to_string(rep.edge.u + 1) + " " + std::to_string(rep.edge.v + 1) + ")";
  throw VerifyFailure(msg);
}

int components_max(const Graph& g, const std::vector<Vertex>& removed_list) {
  std::vector<char> removed(g.vertex_count(), 0);
  for (Vertex v : removed_list) removed[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!removed[v]) keep.push_back(v);
  int best = 0;
  for (const auto& c : connected_components(induced_subgraph(g, keep).first))
    best = std::max(best, static_cast<int>(c.size()));
  return best;
}

std::vector<Vertex> checked_vertices(const Graph& g, const Json& j) {
  auto vs = vertices_from_json(j);
  for (Vertex v : vs) require(v >= 0 && v < g.vertex_count(), "vertex out of range");
  return vs;
}

int run_verify(const Options& o, std::ostream& out) {
  if (!o.decomposition.empty()) {
    const Graph g = load_graph(o.input);
    const Json j = load_json(o.decomposition);
    const TreeDecomposition t = decomposition_from_json(j.contains("bags") ? j : j.at("decomposition"));
    verify_decomposition(t, g, "decomposition");
    out << "ok: decomposition of width " << width(t) << " is valid\n";
    return kExitOk;
  }
  if (o.report.empty()) throw BadInput("verify needs --report or --decomposition");
  const Json doc = load_json(o.report);
  if (!doc.contains("schema_version") || doc["schema_version"] != kSchemaVersion)
    throw BadInput("unsupported report schema");
  const std::string command = doc.at("command");
  const Json& r = doc.at("result");
  try {
    if (command == "interdict") {
      const Graph g = load_graph(o.input);
      const auto F = edges_from_json(g, r.at("F"));
      const TreeDecomposition t = decomposition_from_json(r.at("decomposition"));
      verify_decomposition(t, remove_edges(g, F), "decomposition of G - F");
      require(width(t) <= r.at("bag_cap").get<int>() - 1, "width exceeds bag_cap - 1");
      require(width(t) == r["decomposition"].at("width").get<int>(), "reported width is wrong");
    } else if (command == "bsi") {
      const Graph g = load_graph(o.input);
      const int s = r.at("s");
      const auto X2 = checked_vertices(g, r.at("X_double_prime"));
      require(components_max(g, X2) <= s, "a component of G - X'' exceeds s");
      BsiResult b;
      b.X = checked_vertices(g, r.at("X_prime"));
      std::sort(b.X.begin(), b.X.end());
      for (const auto& p : r.at("pieces")) b.pieces.push_back(checked_vertices(g, p));
      b.cross_edges = edges_from_json(g, r.at("cross_edges"));
      std::sort(b.cross_edges.begin(), b.cross_edges.end());
      try {
        check_bsi_result(g, b, s);
      } catch (const BsiError& e) {
        throw VerifyFailure(e.what());
      }
      require(X2.size() <= b.X.size() + b.cross_edges.size(), "|X''| exceeds |X'| + |F|");
    } else if (command == "mis" || (command == "oracle" && doc["config"].at("problem") == "mis")) {
      const Graph g = load_graph(o.input);
      const auto set = checked_vertices(g, r.at("independent_set"));
      require(is_independent(g, set), "set is not independent");
      require(static_cast<int>(set.size()) == r.at("objective").get<int>(), "objective miscounted");
    } else if (command == "maxsat" ||
               (command == "oracle" && doc["config"].at("problem") == "maxsat")) {
      const CnfFormula phi = load_cnf(o.input);
      const auto a = assignment_from_json(r.at("assignment"), phi.num_vars);
      require(count_satisfied(phi, a) == r.at("objective").get<int>(), "objective miscounted");
    } else if (command == "oracle") {
      const Graph g = load_graph(o.input);
      const std::string problem = doc["config"].at("problem");
      if (problem == "treewidth") {
        const TreeDecomposition t = decomposition_from_json(r.at("decomposition"));
        verify_decomposition(t, g, "witness");
        require(width(t) == r.at("objective").get<int>(), "witness width differs from objective");
      } else if (problem == "interdiction") {
        const auto F = edges_from_json(g, r.at("F"));
        const TreeDecomposition t = decomposition_from_json(r.at("decomposition"));
        verify_decomposition(t, remove_edges(g, F), "certificate");
        require(width(t) <= doc["config"].at("w").get<int>() - 1, "certificate too wide");
      } else {
        throw BadInput("reports of oracle '" + problem + "' carry no certificate");
      }
    } else {
      throw BadInput("cannot verify reports of command '" + command + "'");
    }
  } catch (const Json::exception& e) {
    throw BadInput(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw VerifyFailure(e.what());
  }
  out << "ok: " << command << " report verified\n";
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Treewidth interdiction and noisy planar optimisation"};
  app.require_subcommand(1);

  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Write the report here"); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "Random seed"); };
  auto add_interdict = [&](CLI::App* c) {
    c->add_option("--w", o.w, "Target width parameter");
    c->add_option("--bag-cap", o.bag_cap, "Override the bag cap");
    c->add_option("--s0", o.s0, "Root set policy: top_degree, all or explicit");
    c->add_option("--s0-vertices", o.s0_vertices, "Root set for --s0 explicit (1-based)");
    c->add_option("--max-rounds", o.max_rounds, "Cutting-plane round limit");
    c->add_option("--boundary-factor", o.boundary_factor, "Region-growing constant");
    c->add_option("--max-radius", o.max_radius, "Largest region radius");
  };
  auto add_bsi = [&](CLI::App* c) {
    c->add_option("--s", o.s, "Largest piece size");
    c->add_option("--beta", o.beta, "Preprocessing threshold");
    c->add_option("--a", o.a, "Fix the |X| budget instead of scanning");
    c->add_option("--repeats", o.repeats, "Roundings per budget");
  };

  auto* gen = app.add_subcommand("gen", "Generate an instance with noise");
  gen->add_option("kind", o.kind, "grid, planar or cnf")->required();
  gen->add_option("--k", o.k, "Grid side");
  gen->add_option("--n", o.n, "Vertices or variables");
  gen->add_option("--m", o.m, "Clauses");
  gen->add_option("--arity", o.arity, "Clause arity");
  gen->add_option("--keep", o.keep, "Edge keep probability for planar graphs");
  gen->add_option("--delta", o.delta, "Noise fraction");
  gen->add_option("--noise", o.noise, "uniform, expander or clustered");
  add_seed(gen);
  add_out(gen);

  auto* inter = app.add_subcommand("interdict", "Edge interdiction to bounded treewidth");
  inter->add_option("--input", o.input, "DIMACS graph")->required();
  add_interdict(inter);
  add_seed(inter);
  add_out(inter);

  auto* bsi = app.add_subcommand("bsi", "Bounded size interdiction");
  bsi->add_option("--input", o.input, "DIMACS graph")->required();
  add_bsi(bsi);
  add_seed(bsi);
  add_out(bsi);

  auto* mis = app.add_subcommand("mis", "Independent set on a noisy planar graph");
  mis->add_option("--input", o.input, "DIMACS graph")->required();
  add_bsi(mis);
  mis->add_option("--preset", o.preset, "paper or fast");
  mis->add_option("--epsilon", o.epsilon, "Accuracy for --preset paper");
  add_seed(mis);
  add_out(mis);

  auto* sat = app.add_subcommand("maxsat", "MAX-k-SAT on a noisy planar formula");
  sat->add_option("--input", o.input, "DIMACS CNF")->required();
  add_interdict(sat);
  sat->add_option("--preset", o.preset, "paper or fast");
  sat->add_option("--epsilon", o.epsilon, "Accuracy for --preset paper");
  add_seed(sat);
  add_out(sat);

  auto* oracle = app.add_subcommand("oracle", "Exact solvers for small instances");
  oracle->add_option("problem", o.problem, "treewidth, mis, maxsat, interdiction or linkedness")
      ->required();
  oracle->add_option("--input", o.input, "DIMACS graph or CNF")->required();
  oracle->add_option("--w", o.w, "Width parameter for interdiction");
  add_out(oracle);

  auto* verify = app.add_subcommand("verify", "Re-check a report or decomposition");
  verify->add_option("--input", o.input, "The instance the report refers to")->required();
  verify->add_option("--report", o.report, "Report JSON");
  verify->add_option("--decomposition", o.decomposition, "Decomposition JSON");

  std::vector<std::string> owned = args;
  std::vector<char*> argv;
  for (auto& a : owned) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  const int level = log_level();
  try {
    int code = kExitOk;
    if (*gen) code = run_gen(o, out);
    else if (*inter) code = run_interdict(o, out);
    else if (*bsi) code = run_bsi(o, out);
    else if (*mis) code = run_mis(o, out);
    else if (*sat) code = run_maxsat(o, out);
    else if (*oracle) code = run_oracle(o, out);
    else if (*verify) code = run_verify(o, out);
    if (level >= 1) err << "done\n";
    return code;
  } catch (const BadInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const VerifyFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}

int cli_main(int argc, char** argv) {
  return cli_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace twi
