#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "mantel/graph_io.hpp"
#include "report_json.hpp"

#ifndef MANTEL_VERSION
#define MANTEL_VERSION "0.0.0"
#endif

namespace mantel::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GraphSource {
  std::string path;
  std::size_t n = 0;
  double p = -1.0;
  std::uint64_t seed = 0;
};

struct ConfigFlags {
  std::optional<double> epsilon, eta, alpha, zeta, K, C;

  ParamConfig build() const {
    ParamConfig cfg = epsilon ? ParamConfig::with_epsilon(*epsilon) : ParamConfig{};
    if (eta) cfg.eta = *eta;
    if (alpha) cfg.alpha = *alpha;
    if (zeta) cfg.zeta = *zeta;
    if (K) cfg.K = *K;
    if (C) cfg.C = *C;
    return cfg;
  }
};

struct LimitFlags {
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> optima_cap;
  std::optional<std::size_t> max_cut_vertices;

  SolveLimits apply(SolveLimits l) const {
    if (budget) l.node_budget = *budget;
    if (optima_cap) l.optima_cap = *optima_cap;
    if (max_cut_vertices) l.max_cut_vertices = *max_cut_vertices;
    return l;
  }
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Everything a subcommand needs to report and write its results.
struct Context {
  std::string subcommand;
  std::vector<std::string> args;
  std::string started;
  ParamConfig cfg;
  unsigned threads = 0;
  std::string out_path;
  json parameters = json::object();
  json extra = json::object();
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  json manifest() const {
    json m{{"tool", "mantel"},
           {"version", MANTEL_VERSION},
           {"subcommand", subcommand},
           {"arguments", args},
           {"parameters", parameters},
           {"config", to_json(cfg)},
           {"threads", threads},
           {"started", started},
           {"finished", utc_now()}};
    for (auto& [k, v] : extra.items()) m[k] = v;
    return m;
  }

  std::ostream& summary() const { return out_path.empty() ? *err : *out; }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f.flush()) throw std::runtime_error("failed writing " + path);
}

// JSON results carry their manifest under "manifest".
void emit_json(json result, const Context& ctx) {
  result["manifest"] = ctx.manifest();
  const std::string text = result.dump(2) + "\n";
  if (ctx.out_path.empty()) {
    *ctx.out << text;
  } else {
    write_file(ctx.out_path, text);
  }
}

// Text outputs get a sidecar "<out>.manifest.json".
void emit_text(const std::string& text, const Context& ctx) {
  if (ctx.out_path.empty()) {
    *ctx.out << text;
    return;
  }
  write_file(ctx.out_path, text);
  write_file(ctx.out_path + ".manifest.json", ctx.manifest().dump(2) + "\n");
}

void add_graph_options(CLI::App* sub, GraphSource& src) {
  sub->add_option("--graph", src.path, "Edge-list file (header \"n m\", then one \"u v\" per line)");
  sub->add_option("--n", src.n, "Vertices of a sampled G(n,p)");
  sub->add_option("--p", src.p, "Edge probability of a sampled G(n,p)");
  sub->add_option("--seed", src.seed, "Sampling seed");
}

Graph load_graph(const GraphSource& src) {
  if (!src.path.empty()) {
    if (src.n != 0) throw UsageError("give either --graph or --n/--p, not both");
    return read_graph(src.path);
  }
  if (src.n == 0 || src.p < 0.0) throw UsageError("need --graph FILE or --n N --p P");
  return sample_gnp({src.n, src.p, src.seed});
}

json graph_parameters(const GraphSource& src) {
  if (!src.path.empty()) return {{"graph", src.path}};
  return {{"n", src.n}, {"p", src.p}, {"seed", src.seed}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: " + s);
  }
  if (used != s.size()) throw UsageError("not a number: " + s);
  return v;
}

// "auto", "geom:LO:HI:POINTS" or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec,
                               const std::function<std::vector<double>()>& automatic) {
  if (spec == "auto") return automatic();
  if (spec.rfind("geom:", 0) == 0) {
    const auto parts = split(spec.substr(5), ':');
    if (parts.size() != 3) throw UsageError("grid geom:LO:HI:POINTS expected");
    return geometric_grid(parse_real(parts[0]), parse_real(parts[1]),
                          static_cast<std::size_t>(parse_real(parts[2])));
  }
  std::vector<double> grid;
  for (const auto& item : split(spec, ',')) grid.push_back(parse_real(item));
  if (grid.empty()) throw UsageError("empty grid");
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("grid value outside [0, 1]");
  }
  return grid;
}

Cut read_cut(const std::string& path, std::size_t n) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> labels;
  for (int v; f >> v;) {
    if (v != 0 && v != 1) throw std::runtime_error(path + ": labels must be 0 (A) or 1 (B)");
    labels.push_back(static_cast<std::uint8_t>(v));
  }
  if (!f.eof()) throw std::runtime_error(path + ": malformed label");
  if (labels.size() != n) {
    throw std::runtime_error(path + ": expected " + std::to_string(n) + " labels, found " +
                             std::to_string(labels.size()));
  }
  return Cut(std::move(labels));
}

json cut_json(const Graph& g, const Cut& pi, const ParamConfig& cfg) {
  return {{"labels", pi.sides()},
          {"size", cut_size(g, pi)},
          {"size_a", pi.size_a()},
          {"balanced", pi.balanced(cfg.eta)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact extremal computations on random graphs", "mantel"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", MANTEL_VERSION);

  Context ctx;
  ctx.args = args;
  ctx.out = &out;
  ctx.err = &err;
  ConfigFlags config;
  LimitFlags limit_flags;
  unsigned threads = 0;

  app.add_option("--out", ctx.out_path, "Output file; stdout when absent");
  app.add_option("--threads", threads,
                 "Worker threads; defaults to MANTEL_THREADS, then the hardware count");
  app.add_option("--epsilon", config.epsilon, "epsilon (also sets K = 4/epsilon^2 unless --K)");
  app.add_option("--eta", config.eta, "Balance tolerance eta");
  app.add_option("--alpha", config.alpha, "alpha");
  app.add_option("--zeta", config.zeta, "zeta");
  app.add_option("--K", config.K, "K");
  app.add_option("--C", config.C, "Threshold constant C");
  app.add_option("--budget", limit_flags.budget, "Search work units per solver stage");
  app.add_option("--optima-cap", limit_flags.optima_cap, "Optima enumerated per strong decision");
  app.add_option("--max-cut-vertices", limit_flags.max_cut_vertices, "Largest n for max_cut");

  // sample
  GraphSource sample_src;
  auto* sample = app.add_subcommand("sample", "Sample G(n,p) and write it as an edge list");
  sample->add_option("--n", sample_src.n, "Vertices")->required();
  sample->add_option("--p", sample_src.p, "Edge probability")->required();
  sample->add_option("--seed", sample_src.seed, "Seed");

  // solve
  GraphSource solve_src;
  std::string what = "t,b";
  std::size_t clique_order = 4;
  std::size_t parts = 3;
  auto* solve = app.add_subcommand("solve", "Exact t(G), b(G) and related optima");
  add_graph_options(solve, solve_src);
  solve->add_option("--what", what, "Comma list of t, b, equal, strong, t_r, b_r");
  solve->add_option("--r", clique_order, "Clique order r for t_r");
  solve->add_option("--parts", parts, "Classes for b_r");

  // analyze-cut
  GraphSource cut_src;
  std::string cut_path;
  std::string cut_method;
  double density = -1.0;
  bool run_chain = false;
  bool run_pair_gain = false;
  bool run_diagnostics = false;
  ConcentrationOptions diag;
  auto* analyze = app.add_subcommand("analyze-cut", "Profile a cut: X, T, Q, promotion and checks");
  add_graph_options(analyze, cut_src);
  analyze->add_option("--cut", cut_path, "File of n labels, 0 for A and 1 for B");
  analyze->add_option("--cut-method", cut_method, "max or local (default: max when solvable)")
      ->check(CLI::IsMember({"max", "local"}));
  analyze->add_option("--density", density, "Density p for the thresholds (default: --p)");
  analyze->add_flag("--chain", run_chain, "Run the endgame inequality chain");
  analyze->add_flag("--pair-gain", run_pair_gain, "Check b > |cut| + 2|q| with q = G ∩ Q");
  analyze->add_flag("--diagnostics", run_diagnostics, "Sampled concentration diagnostics");
  analyze->add_option("--diag-cuts", diag.cuts, "Cuts sampled by the diagnostics");
  analyze->add_option("--diag-pairs", diag.set_pairs, "Set pairs sampled by the diagnostics");
  analyze->add_option("--diag-seed", diag.seed, "Diagnostics seed");

  // homology
  GraphSource hom_src;
  std::size_t k_max = 3;
  bool hom_sweep = false;
  std::size_t hom_k = 1;
  std::string hom_grid = "auto";
  std::size_t hom_points = 8;
  std::size_t hom_trials = 50;
  HomologyLimits hom_limits;
  auto* homology = app.add_subcommand("homology", "Betti numbers over GF(2) and homology sweeps");
  add_graph_options(homology, hom_src);
  homology->add_option("--k-max", k_max, "Top dimension of the clique complex");
  homology->add_flag("--sweep", hom_sweep, "Estimate Pr(H_k = 0) over a grid of p");
  homology->add_option("--k", hom_k, "Homology dimension for --sweep");
  homology->add_option("--grid", hom_grid, "auto, geom:LO:HI:POINTS or p1,p2,...");
  homology->add_option("--points", hom_points, "Points of the auto grid");
  homology->add_option("--trials", hom_trials, "Samples per grid point");
  homology->add_option("--max-faces", hom_limits.max_faces, "Face budget per complex");
  homology->add_option("--max-vertices", hom_limits.max_vertices, "Vertex limit per complex");

  // sweep
  std::size_t sweep_n = 0;
  std::string sweep_grid = "auto";
  std::size_t sweep_points = 10;
  double sweep_c = 1.0;
  std::size_t sweep_trials = 100;
  std::uint64_t sweep_seed = 0;
  std::string sweep_mode = "weak";
  ExperimentConfig exp_cfg;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo estimates of t = b over a grid of p");
  sweep_cmd->add_option("--n", sweep_n, "Vertices")->required();
  sweep_cmd->add_option("--grid", sweep_grid, "auto, geom:LO:HI:POINTS or p1,p2,...");
  sweep_cmd->add_option("--points", sweep_points, "Points of the auto grid");
  sweep_cmd->add_option("--c", sweep_c, "Constant of the C*sqrt(log n / n) anchor");
  sweep_cmd->add_option("--trials", sweep_trials, "Samples per grid point");
  sweep_cmd->add_option("--seed", sweep_seed, "Master seed");
  sweep_cmd->add_option("--mode", sweep_mode, "weak (t = b) or strong (every optimum bipartite)")
      ->check(CLI::IsMember({"weak", "strong"}));
  sweep_cmd->add_option("--weak-vertices", exp_cfg.weak_vertices, "Weak-mode envelope");
  sweep_cmd->add_option("--strong-vertices", exp_cfg.strong_vertices, "Strong-mode envelope");

  // threshold
  std::size_t thr_n = 0;
  std::size_t thr_trials = 100;
  std::uint64_t thr_seed = 0;
  double thr_level = 0.5;
  std::size_t thr_iterations = 8;
  auto* threshold = app.add_subcommand("threshold", "Bisect for the density where t = b becomes likely");
  threshold->add_option("--n", thr_n, "Vertices")->required();
  threshold->add_option("--trials", thr_trials, "Samples per evaluation");
  threshold->add_option("--seed", thr_seed, "Master seed");
  threshold->add_option("--level", thr_level, "Target rate in (0, 1)");
  threshold->add_option("--iterations", thr_iterations, "Bisection steps");
  threshold->add_option("--weak-vertices", exp_cfg.weak_vertices, "Weak-mode envelope");

  // obstruct
  GraphSource obs_src;
  auto* obstruct = app.add_subcommand("obstruct", "Find an odd cycle of edges lying in no triangle");
  add_graph_options(obstruct, obs_src);

  std::vector<const char*> argv{"mantel"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << MANTEL_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "mantel: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    ctx.cfg = config.build();
    ctx.cfg.validate();
  } catch (const std::invalid_argument& e) {
    err << "mantel: invalid configuration: " << e.what() << "\n";
    return kUsageError;
  }
  ctx.threads = resolve_threads(threads);
  ctx.started = utc_now();
  const SolveLimits limits = limit_flags.apply({});
  exp_cfg.limits = limit_flags.apply(exp_cfg.limits);
  exp_cfg.threads = ctx.threads;

  try {
    if (sample->parsed()) {
      ctx.subcommand = "sample";
      ctx.parameters = graph_parameters(sample_src);
      const Graph g = sample_gnp({sample_src.n, sample_src.p, sample_src.seed});
      std::ostringstream text;
      format_graph(text, g);
      emit_text(text.str(), ctx);
      ctx.summary() << "sample: G(" << g.num_vertices() << ", " << sample_src.p
                    << ") seed " << sample_src.seed << ", " << g.num_edges() << " edges\n";
    } else if (solve->parsed()) {
      ctx.subcommand = "solve";
      ctx.parameters = graph_parameters(solve_src);
      ctx.parameters["what"] = what;
      const Graph g = load_graph(solve_src);
      const auto items = split(what, ',');
      if (items.empty()) throw UsageError("--what is empty");
      json result{{"n", g.num_vertices()}, {"m", g.num_edges()}};
      json details = json::object();
      std::ostringstream line;
      line << "solve: n=" << g.num_vertices() << " m=" << g.num_edges();
      for (const auto& item : items) {
        if (item == "t") {
          const auto cert = max_triangle_free(g, limits);
          result["t"] = cert.optimum;
          details["t"] = to_json(cert);
          details["t"]["witness"] = edges_json(g, cert.witness);
          line << " t=" << cert.optimum;
        } else if (item == "b") {
          const auto cert = max_cut(g, limits);
          result["b"] = cert.optimum;
          details["b"] = to_json(cert);
          line << " b=" << cert.optimum;
        } else if (item == "equal") {
          const auto d = decide_t_equals_b(g, limits);
          result["equal"] = d.equal;
          details["equal"] = {{"b", d.b}, {"nodes_explored", d.nodes_explored},
                              {"witness", edges_json(g, d.witness)}};
          line << " t=b:" << (d.equal ? "yes" : "no");
        } else if (item == "strong") {
          const auto cert = all_max_triangle_free_bipartite(g, limits);
          result["strong"] = to_string(cert.verdict);
          details["strong"] = to_json(cert);
          if (cert.counterexample) {
            details["strong"]["counterexample"] = edges_json(g, *cert.counterexample);
          }
          line << " strong=" << to_string(cert.verdict);
        } else if (item == "t_r") {
          const auto cert = max_kr_free(g, clique_order, limits);
          result["t_r"] = cert.optimum;
          result["r"] = clique_order;
          details["t_r"] = to_json(cert);
          line << " t_" << clique_order << "=" << cert.optimum;
        } else if (item == "b_r") {
          const auto cert = max_multipartite(g, parts, limits);
          result["b_r"] = cert.optimum;
          result["parts"] = parts;
          details["b_r"] = to_json(cert);
          line << " b_" << parts << "=" << cert.optimum;
        } else {
          throw UsageError("unknown --what item: " + item);
        }
      }
      result["details"] = details;
      emit_json(result, ctx);
      ctx.summary() << line.str() << "\n";
    } else if (analyze->parsed()) {
      ctx.subcommand = "analyze-cut";
      ctx.parameters = graph_parameters(cut_src);
      const Graph g = load_graph(cut_src);
      const double p = density >= 0.0 ? density : cut_src.p;
      if (!(p >= 0.0)) throw UsageError("--density is required with --graph");
      ctx.parameters["density"] = p;
      Cut pi;
      std::string method;
      if (!cut_path.empty()) {
        pi = read_cut(cut_path, g.num_vertices());
        method = "file";
        ctx.parameters["cut"] = cut_path;
      } else {
        method = cut_method.empty()
                     ? (g.num_vertices() <= limits.max_cut_vertices ? "max" : "local")
                     : cut_method;
        pi = method == "max" ? Cut::from_partition(*max_cut(g, limits).partition)
                             : Cut::from_partition(local_search_partition(g, 2));
      }
      ctx.parameters["cut_method"] = method;
      json result{{"n", g.num_vertices()}, {"m", g.num_edges()}, {"p", p}};
      result["cut"] = cut_json(g, pi, ctx.cfg);
      result["cut"]["method"] = method;
      const CutProfile prof = cut_profile(g, pi, ctx.cfg, p);
      result["profile"] = to_json(prof);
      const auto [promoted, promotion] = promote_cut(g, pi, ctx.cfg, p);
      result["promotion"] = to_json(promotion);
      result["promotion"]["labels"] = promoted.sides();
      std::ostringstream line;
      line << "analyze-cut: |cut|=" << cut_size(g, pi) << " |X|=" << prof.X.size()
           << " |T|=" << prof.T.size() << " |Q|=" << prof.q_size();
      if (run_pair_gain) {
        const auto rep = check_pair_gain(g, pi, q_edges(g, prof), ctx.cfg, p, limits);
        result["pair_gain"] = to_json(rep);
        line << " pair-gain=" << to_string(rep.status);
      }
      if (run_chain) {
        const auto rep = verify_main_chain(g, ctx.cfg, p, limits);
        result["chain"] = to_json(rep);
        line << " chain=" << (rep.holds() ? "holds" : "broken at " + std::to_string(rep.first_broken()));
      }
      if (run_diagnostics) {
        result["diagnostics"] = to_json(concentration_diagnostics(g, ctx.cfg, p, diag));
        ctx.parameters["diagnostics"] = {
            {"cuts", diag.cuts}, {"set_pairs", diag.set_pairs}, {"seed", diag.seed}};
      }
      emit_json(result, ctx);
      ctx.summary() << line.str() << "\n";
    } else if (homology->parsed()) {
      ctx.subcommand = "homology";
      if (hom_sweep) {
        if (hom_src.n < 2) throw UsageError("--sweep needs --n >= 2");
        const double th = homology_threshold(hom_src.n, hom_k);
        const auto grid = parse_grid(hom_grid, [&] {
          return geometric_grid(0.5 * th, std::min(1.0, 1.5 * th), hom_points);
        });
        ctx.parameters = {{"n", hom_src.n}, {"k", hom_k}, {"grid", grid},
                          {"trials", hom_trials}, {"seed", hom_src.seed}};
        const auto result = homology_sweep(hom_src.n, hom_k, grid, hom_trials, hom_src.seed,
                                           ctx.threads, hom_limits);
        ctx.extra["threshold"] = result.threshold;
        std::ostringstream csv;
        write_homology_csv(csv, result);
        emit_text(csv.str(), ctx);
        ctx.summary() << "homology sweep: n=" << hom_src.n << " k=" << hom_k << " points="
                      << grid.size() << " trials=" << hom_trials << " threshold="
                      << std::fixed << std::setprecision(6) << result.threshold << "\n";
      } else {
        ctx.parameters = graph_parameters(hom_src);
        ctx.parameters["k_max"] = k_max;
        const Graph g = load_graph(hom_src);
        const CliqueComplex complex(g, k_max, hom_limits);
        json faces = json::array();
        for (std::size_t k = 0; k <= complex.top_dimension(); ++k) faces.push_back(complex.num_faces(k));
        const auto betti = complex.betti_numbers();
        const auto event = check_h1_cut_event(g, hom_limits);
        json reduced = betti;
        if (!betti.empty() && betti[0] > 0) reduced[0] = betti[0] - 1;
        json result{{"n", g.num_vertices()},
                    {"m", g.num_edges()},
                    {"top_dimension", complex.top_dimension()},
                    {"faces", faces},
                    {"betti", betti},
                    {"reduced_betti", reduced},
                    {"euler_characteristic", complex.euler_characteristic()},
                    {"h1_event", to_json(event)}};
        emit_json(result, ctx);
        std::ostringstream line;
        line << "homology: betti";
        for (auto b : betti) line << ' ' << b;
        line << " chi=" << complex.euler_characteristic()
             << " h1_zero=" << (event.h1_zero ? "yes" : "no");
        ctx.summary() << line.str() << "\n";
      }
    } else if (sweep_cmd->parsed()) {
      ctx.subcommand = "sweep";
      const EventMode mode = sweep_mode == "strong" ? EventMode::kStrong : EventMode::kWeak;
      const auto grid = parse_grid(sweep_grid, [&] { return auto_grid(sweep_n, sweep_points, sweep_c); });
      ctx.parameters = {{"n", sweep_n}, {"grid", grid}, {"trials", sweep_trials},
                        {"seed", sweep_seed}, {"mode", sweep_mode},
                        {"node_budget", exp_cfg.limits.node_budget}};
      const auto start = std::chrono::steady_clock::now();
      const auto records = sweep(sweep_n, grid, sweep_trials, sweep_seed, mode, exp_cfg);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit_text(sweep_csv(records), ctx);
      std::size_t inconclusive = 0;
      for (const auto& r : records) inconclusive += r.inconclusive();
      ctx.summary() << "sweep: n=" << sweep_n << " points=" << grid.size() << " trials="
                    << sweep_trials << " mode=" << sweep_mode << " seed=" << sweep_seed
                    << " inconclusive=" << inconclusive << " wall=" << std::fixed
                    << std::setprecision(1) << wall << "s\n";
    } else if (threshold->parsed()) {
      ctx.subcommand = "threshold";
      ctx.parameters = {{"n", thr_n}, {"trials", thr_trials}, {"seed", thr_seed},
                        {"level", thr_level}, {"iterations", thr_iterations}};
      const auto res = threshold_crossing(thr_n, thr_trials, thr_seed, thr_level, thr_iterations, exp_cfg);
      json result = to_json(res);
      result["n"] = thr_n;
      result["scale"] = threshold_scale(thr_n);
      emit_json(result, ctx);
      std::ostringstream line;
      line << "threshold: n=" << thr_n;
      if (res.found) {
        line << " p*=" << std::setprecision(6) << res.p_star << " ratio=" << res.ratio
             << (res.at_lower_end ? " (at lower end)" : "");
      } else {
        line << " no crossing found";
      }
      ctx.summary() << line.str() << "\n";
    } else if (obstruct->parsed()) {
      ctx.subcommand = "obstruct";
      ctx.parameters = graph_parameters(obs_src);
      const Graph g = load_graph(obs_src);
      const auto ob = obstruction_witness(g);
      json result{{"n", g.num_vertices()}, {"m", g.num_edges()}, {"found", ob.has_value()}};
      if (ob) {
        result["cycle"] = ob->cycle;
        result["length"] = ob->cycle.size();
        result["edges"] = edges_json(g, ob->edges);
      }
      emit_json(result, ctx);
      ctx.summary() << "obstruct: "
                    << (ob ? "odd cycle of length " + std::to_string(ob->cycle.size()) +
                                 " on edges in no triangle"
                           : std::string("none"))
                    << "\n";
    }
  } catch (const InstanceTooLarge& e) {
    err << "mantel: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::invalid_argument& e) {
    err << "mantel: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "mantel: " << e.what() << "\n";
    return kIoFailure;
  }
  return kOk;
}

}  // namespace mantel::cli
