// Command-line front end: graph generation, percolation simulation, threshold
// estimation, coupling probes, structure queries, and named experiments.
//
// Exit codes: 0 success, 2 invalid config, 3 inconclusive statistics,
// 4 size limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "perc/coupling.hpp"
#include "perc/errors.hpp"
#include "perc/estimators.hpp"
#include "perc/graph.hpp"
#include "perc/oracle.hpp"
#include "perc/parallel.hpp"
#include "perc/percolation.hpp"
#include "perc/rng.hpp"
#include "perc/serialize.hpp"
#include "perc/structure.hpp"
#include "perc/union_find.hpp"

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = PERCLAB_VERSION;

// ---------------------------------------------------------------------------
// Output plumbing

class Clock {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw perc::invalid_parameter("cannot open output file: " + path);
  f << text;
}

struct OutputOpts {
  std::string out;      // JSONL / CSV / primary payload; empty or "-" = stdout
  std::string summary;  // summary JSON; empty = stdout (or stderr if out is stdout)
};

void add_output_flags(CLI::App* sub, OutputOpts& o) {
  sub->add_option("--out", o.out, "output file (default: stdout)");
  sub->add_option("--summary", o.summary, "summary JSON file");
}

// Summaries embed version, full config echo, seed, wall clock, and graph
// digest so re-runs are attributable; wall clock never enters JSONL rows.
json base_summary(const std::string& command, const json& config, std::uint64_t seed) {
  json s;
  s["tool"] = "perclab";
  s["version"] = kToolVersion;
  s["command"] = command;
  s["config"] = config;
  s["seed"] = seed;
  return s;
}

void emit_summary(const OutputOpts& o, json summary, const Clock& clock) {
  summary["wall_clock_s"] = clock.seconds();
  const std::string text = summary.dump() + "\n";
  if (!o.summary.empty()) {
    write_text(o.summary, text);
  } else if (!o.out.empty() && o.out != "-") {
    std::cout << text;
  } else {
    std::cerr << text;
  }
}

// ---------------------------------------------------------------------------
// Graph construction flags

struct GraphOpts {
  std::string family;
  int n = 0;
  int m = 2;  // second factor size for complete-product
  std::vector<int> dims;
  int d = 0;
  double chain_alpha = 0.4;
  std::string json_path;
};

void add_graph_flags(CLI::App* sub, GraphOpts& g) {
  sub->add_option("--family", g.family,
                  "cycle | path | path-pair | complete | torus | hypercube | "
                  "complete-product | molecular-chain");
  sub->add_option("--n", g.n, "primary size parameter");
  sub->add_option("--m", g.m, "second factor size for complete-product");
  sub->add_option("--dims", g.dims, "torus dimensions, e.g. --dims 4 4")->delimiter(',');
  sub->add_option("--d", g.d, "hypercube dimension");
  sub->add_option("--chain-alpha", g.chain_alpha, "molecular-chain window exponent");
  sub->add_option("--graph-json", g.json_path, "load the graph from a JSON file");
}

perc::Graph build_graph(const GraphOpts& o) {
  if (!o.json_path.empty()) {
    std::ifstream f(o.json_path);
    if (!f) throw perc::invalid_parameter("cannot open graph JSON: " + o.json_path);
    json j;
    f >> j;
    return perc::graph_from_json(j);
  }
  if (o.family == "cycle") return perc::Graph::cycle(o.n);
  if (o.family == "path") return perc::Graph::path(o.n);
  if (o.family == "path-pair") return perc::Graph::path_pair(o.n == 0 ? 5 : o.n);
  if (o.family == "complete") return perc::Graph::complete(o.n);
  if (o.family == "torus") return perc::Graph::torus(o.dims);
  if (o.family == "hypercube") return perc::Graph::hypercube(o.d);
  if (o.family == "complete-product")
    return perc::Graph::cartesian_product(perc::Graph::complete(o.n),
                                          perc::Graph::complete(o.m));
  if (o.family == "molecular-chain") return perc::Graph::molecular_chain(o.n, o.chain_alpha);
  throw perc::invalid_parameter("unknown graph family: '" + o.family + "'");
}

json graph_config(const GraphOpts& o) {
  json j;
  j["family"] = o.family.empty() ? "json" : o.family;
  if (!o.json_path.empty()) j["graph_json"] = o.json_path;
  if (o.n) j["n"] = o.n;
  if (o.family == "complete-product") j["m"] = o.m;
  if (!o.dims.empty()) j["dims"] = o.dims;
  if (o.d) j["d"] = o.d;
  if (o.family == "molecular-chain") j["chain_alpha"] = o.chain_alpha;
  return j;
}

json proportion_json(const perc::Proportion& p) {
  return json{{"successes", p.successes},
              {"trials", p.trials},
              {"hat", p.hat},
              {"ci_lo", p.lo},
              {"ci_hi", p.hi}};
}

std::vector<double> parse_grid(const std::string& spec) {
  // "lo:hi:count" or a comma-separated list.
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double lo = 0, hi = 0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 2)
      throw perc::invalid_parameter("bad grid spec (want lo:hi:count): " + spec);
    for (int i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * i / (count - 1));
  } else {
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
  }
  return grid;
}

std::string csv_header(const perc::Graph& g, std::uint64_t seed, std::uint64_t replicas) {
  std::ostringstream h;
  h << "# tool: perclab " << kToolVersion << "\n";
  h << "# graph: " << perc::graph_to_json(g).dump() << "\n";
  h << "# digest: " << perc::graph_digest(g) << "\n";
  h << "# seed: " << seed << "\n";
  h << "# replicas: " << replicas << "\n";
  return h.str();
}

// ---------------------------------------------------------------------------
// Subcommand runners (each returns the process exit code)

int run_gen(const GraphOpts& gopts, const OutputOpts& out) {
  const perc::Graph g = build_graph(gopts);
  g.check_invariants();
  write_text(out.out, perc::graph_to_json(g).dump() + "\n");
  return 0;
}

int run_sim(const GraphOpts& gopts, const OutputOpts& out, double p, double alpha,
            std::uint64_t replicas, std::uint64_t seed) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  const std::uint32_t n = g.n_vertices();
  const bool with_event = alpha > 0.0;
  const auto target =
      with_event ? static_cast<std::uint32_t>(std::ceil(alpha * n - 1e-9)) : 0u;

  std::vector<std::string> rows(replicas);
  perc::parallel_for(replicas, [&](std::uint64_t r, int) {
    thread_local perc::Configuration cfg;
    thread_local perc::UnionFind uf(0);
    if (uf.n() != n) uf = perc::UnionFind(n);
    perc::SplitRng rng(seed, r);
    perc::sample_into(g, p, rng, cfg);
    const auto [k1, k2] = perc::k1_k2(g, cfg, uf);
    json row{{"replica", r},         {"p", p},
             {"k1", k1},             {"k2", k2},
             {"k1_density", static_cast<double>(k1) / n},
             {"k2_density", static_cast<double>(k2) / n}};
    if (with_event) row["event"] = k1 >= target ? 1 : 0;
    rows[r] = row.dump();
  });
  std::ostringstream body;
  for (const auto& r : rows) body << r << "\n";
  write_text(out.out, body.str());

  json config{{"graph", graph_config(gopts)}, {"p", p}, {"replicas", replicas}};
  if (with_event) config["alpha"] = alpha;
  json s = base_summary("sim", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  double sum_k1 = 0, sum_k2 = 0;
  // Re-derive aggregates from the emitted rows to keep them consistent.
  for (const auto& r : rows) {
    const json j = json::parse(r);
    sum_k1 += j["k1_density"].get<double>();
    sum_k2 += j["k2_density"].get<double>();
  }
  s["mean_k1_density"] = sum_k1 / replicas;
  s["mean_k2_density"] = sum_k2 / replicas;
  emit_summary(out, s, clock);
  return 0;
}

int run_sweep(const GraphOpts& gopts, const OutputOpts& out, double alpha,
              std::uint64_t replicas, std::uint64_t seed) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  const std::size_t m = g.n_edges();
  const std::uint32_t n = g.n_vertices();
  const bool with_event = alpha > 0.0;
  const auto target =
      with_event ? static_cast<std::uint32_t>(std::ceil(alpha * n - 1e-9)) : 0u;
  const perc::SweepEvent event =
      with_event ? perc::SweepEvent([target](std::uint32_t k1, std::uint32_t) {
        return k1 >= target;
      })
                 : perc::SweepEvent();

  const int workers = perc::worker_count(replicas);
  std::vector<std::vector<std::uint64_t>> k1_acc(workers, std::vector<std::uint64_t>(m + 1, 0));
  std::vector<std::vector<std::uint64_t>> k2_acc(workers, std::vector<std::uint64_t>(m + 1, 0));
  std::vector<std::vector<std::uint64_t>> ev_acc(workers, std::vector<std::uint64_t>(m + 1, 0));
  perc::parallel_for(replicas, [&](std::uint64_t r, int worker) {
    const perc::SweepRecord rec = perc::sweep(g, seed, r, event);
    for (std::size_t i = 0; i <= m; ++i) {
      k1_acc[worker][i] += rec.k1[i];
      k2_acc[worker][i] += rec.k2[i];
      if (with_event) ev_acc[worker][i] += rec.event[i];
    }
  });

  std::ostringstream body;
  body << csv_header(g, seed, replicas);
  body << "m,mean_k1,mean_k2" << (with_event ? ",event_rate" : "") << "\n";
  for (std::size_t i = 0; i <= m; ++i) {
    std::uint64_t k1 = 0, k2 = 0, ev = 0;
    for (int w = 0; w < workers; ++w) {
      k1 += k1_acc[w][i];
      k2 += k2_acc[w][i];
      ev += ev_acc[w][i];
    }
    body << i << ',' << static_cast<double>(k1) / replicas << ','
         << static_cast<double>(k2) / replicas;
    if (with_event) body << ',' << static_cast<double>(ev) / replicas;
    body << "\n";
  }
  write_text(out.out, body.str());

  json config{{"graph", graph_config(gopts)}, {"replicas", replicas}};
  if (with_event) config["alpha"] = alpha;
  json s = base_summary("sweep", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  emit_summary(out, s, clock);
  return 0;
}

int run_curve(const GraphOpts& gopts, const OutputOpts& out, double alpha,
              const std::string& grid_spec, std::uint64_t replicas, std::uint64_t seed,
              const std::string& method) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  const std::vector<double> grid = parse_grid(grid_spec);
  const perc::CurveMethod cm = method == "direct" ? perc::CurveMethod::direct
                                                  : perc::CurveMethod::sweep_pool;
  const perc::EmpiricalCurve curve = perc::estimate_curve(g, alpha, grid, replicas, seed, cm);

  std::ostringstream body;
  body << csv_header(g, seed, replicas);
  body << "p,trials,successes,f_hat,ci_lo,ci_hi\n";
  for (std::size_t j = 0; j < grid.size(); ++j)
    body << curve.p_grid[j] << ',' << curve.trials[j] << ',' << curve.successes[j] << ','
         << curve.f_hat[j] << ',' << curve.ci_lo[j] << ',' << curve.ci_hi[j] << "\n";
  write_text(out.out, body.str());

  json config{{"graph", graph_config(gopts)},
              {"alpha", alpha},
              {"grid", grid_spec},
              {"replicas", replicas},
              {"method", method}};
  json s = base_summary("curve", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  emit_summary(out, s, clock);
  return 0;
}

int run_threshold(const GraphOpts& gopts, const OutputOpts& out, double alpha, double delta,
                  double tolerance, std::uint64_t seed) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  const perc::ThresholdEstimate est = perc::threshold(g, alpha, delta, tolerance, seed);
  json config{{"graph", graph_config(gopts)},
              {"alpha", alpha},
              {"delta", delta},
              {"tolerance", tolerance}};
  json s = base_summary("threshold", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  s["p_hat"] = est.p_hat;
  s["p_lo"] = est.p_lo;
  s["p_hi"] = est.p_hi;
  s["replicas_used"] = est.replicas_used;
  s["inconclusive"] = est.inconclusive;
  emit_summary(out, s, clock);
  return est.inconclusive ? 3 : 0;
}

int run_ratio(const GraphOpts& gopts, const OutputOpts& out, double beta, double delta,
              double tolerance, std::uint64_t replicas, std::uint64_t seed) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  const perc::RatioEstimate est =
      perc::sharp_density_ratio(g, beta, delta, tolerance, seed, replicas);
  json config{{"graph", graph_config(gopts)},
              {"beta", beta},
              {"delta", delta},
              {"tolerance", tolerance},
              {"replicas", replicas}};
  json s = base_summary("ratio", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  s["ratio"] = est.ratio;
  s["ratio_lo"] = est.ratio_lo;
  s["ratio_hi"] = est.ratio_hi;
  s["p_low"] = {{"hat", est.low.p_hat}, {"lo", est.low.p_lo}, {"hi", est.low.p_hi}};
  s["p_high"] = {{"hat", est.high.p_hat}, {"lo", est.high.p_lo}, {"hi", est.high.p_hi}};
  s["inconclusive"] = est.inconclusive;
  emit_summary(out, s, clock);
  return est.inconclusive ? 3 : 0;
}

int run_twopoint(const GraphOpts& gopts, const OutputOpts& out, double p, std::uint32_t source,
                 std::uint64_t replicas, std::uint64_t seed) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  const perc::TwoPointProfile prof = perc::two_point_profile(g, p, source, replicas, seed);
  std::ostringstream body;
  body << csv_header(g, seed, replicas);
  body << "# source: " << source << "\n";
  body << "v,successes,trials,hat,ci_lo,ci_hi\n";
  for (std::uint32_t v = 0; v < g.n_vertices(); ++v) {
    const perc::Proportion& e = prof.estimate[v];
    body << v << ',' << e.successes << ',' << e.trials << ',' << e.hat << ',' << e.lo << ','
         << e.hi << "\n";
  }
  write_text(out.out, body.str());

  json config{{"graph", graph_config(gopts)}, {"p", p}, {"source", source},
              {"replicas", replicas}};
  json s = base_summary("twopoint", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  s["min_vertex"] = prof.min_vertex;
  s["min"] = proportion_json(prof.min_estimate);
  emit_summary(out, s, clock);
  return 0;
}

int run_couple(const GraphOpts& gopts, const OutputOpts& out, double q, double p,
               std::uint64_t replicas, std::uint64_t seed) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  const std::uint32_t n = g.n_vertices();
  std::vector<std::string> rows(replicas);
  std::vector<std::uint8_t> monotone(replicas, 0);
  perc::parallel_for(replicas, [&](std::uint64_t r, int) {
    const perc::CoupledPair pair = perc::sample_coupled(g, q, p, seed, r);
    bool subset = true;
    for (std::uint32_t e : pair.omega_q.open_edges)
      if (!pair.omega_p.open[e]) subset = false;
    monotone[r] = subset;
    thread_local perc::UnionFind uf(0);
    if (uf.n() != n) uf = perc::UnionFind(n);
    const auto [k1p, k2p] = perc::k1_k2(g, pair.omega_p, uf);
    const auto [k1q, k2q] = perc::k1_k2(g, pair.omega_q, uf);
    (void)k2p;
    (void)k2q;
    rows[r] = json{{"replica", r},
                   {"q", q},
                   {"p", p},
                   {"k1_p", k1p},
                   {"k1_q", k1q},
                   {"subset", subset ? 1 : 0}}
                  .dump();
  });
  std::ostringstream body;
  for (const auto& r : rows) body << r << "\n";
  write_text(out.out, body.str());

  bool all_monotone = true;
  double sum_p = 0, sum_q = 0;
  for (std::uint64_t r = 0; r < replicas; ++r) {
    if (!monotone[r]) all_monotone = false;
    const json j = json::parse(rows[r]);
    sum_p += j["k1_p"].get<double>() / n;
    sum_q += j["k1_q"].get<double>() / n;
  }
  json config{{"graph", graph_config(gopts)}, {"q", q}, {"p", p}, {"replicas", replicas}};
  json s = base_summary("couple", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  s["all_monotone"] = all_monotone;
  s["mean_k1_density_p"] = sum_p / replicas;
  s["mean_k1_density_q"] = sum_q / replicas;
  emit_summary(out, s, clock);
  return all_monotone ? 0 : 3;
}

int run_sandcastle(const GraphOpts& gopts, const OutputOpts& out, double p, double q,
                   double alpha, double beta, std::uint64_t replicas, std::uint64_t inner,
                   std::vector<std::uint32_t> probes, std::uint64_t seed) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  if (probes.empty()) {
    const std::uint32_t count = std::min<std::uint32_t>(8, g.n_vertices());
    for (std::uint32_t i = 0; i < count; ++i)
      probes.push_back(static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(i) * g.n_vertices() / count));
  }
  // Rows are produced concurrently; store by (replica, probe) index and emit
  // in order so output is independent of the thread count.
  std::vector<std::string> rows(replicas * probes.size());
  std::vector<std::uint32_t> probe_slot(g.n_vertices(), 0);
  for (std::uint32_t i = 0; i < probes.size(); ++i) probe_slot[probes[i]] = i;
  const auto row_cb = [&](std::uint64_t r, std::uint32_t probe, double density,
                          std::uint64_t shatters, bool verdict) {
    rows[r * probes.size() + probe_slot[probe]] =
        json{{"replica", r},
             {"probe", probe},
             {"density", density},
             {"shatters", shatters},
             {"inner", inner},
             {"sandcastle", verdict ? 1 : 0}}
            .dump();
  };
  const perc::SandcastleFrequency freq =
      perc::sandcastle_frequency(g, p, q, alpha, beta, replicas, seed, inner, probes, row_cb);

  std::ostringstream body;
  for (const auto& r : rows) body << r << "\n";
  write_text(out.out, body.str());

  json config{{"graph", graph_config(gopts)}, {"p", p},       {"q", q},
              {"alpha", alpha},               {"beta", beta}, {"replicas", replicas},
              {"inner", inner}};
  json s = base_summary("sandcastle", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  s["probes"] = freq.probes;
  json freqs = json::array();
  for (const auto& f : freq.frequency) freqs.push_back(proportion_json(f));
  s["frequency"] = std::move(freqs);
  s["sup_frequency"] = freq.sup_frequency;
  s["k2_p"] = proportion_json(freq.k2_p);
  s["k2_q"] = proportion_json(freq.k2_q);
  s["rhs"] = freq.rhs;
  s["rhs_sigma"] = freq.rhs_sigma;
  emit_summary(out, s, clock);
  return 0;
}

int run_activate(const GraphOpts& gopts, const OutputOpts& out, double p, double alpha,
                 const std::vector<std::uint32_t>& h_edges, int h_orbit,
                 std::uint64_t replicas, std::uint64_t seed) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  std::vector<std::uint32_t> h = h_edges;
  if (h_orbit >= 0) {
    if (!g.edge_orbits()) throw perc::unsupported_graph("graph declares no edge orbits");
    const auto& orbits = *g.edge_orbits();
    if (h_orbit >= static_cast<int>(orbits.size()))
      throw perc::invalid_parameter("orbit index out of range");
    h.insert(h.end(), orbits[h_orbit].begin(), orbits[h_orbit].end());
  }
  const perc::Proportion est = perc::activator_probability(g, h, alpha, p, replicas, seed);
  json config{{"graph", graph_config(gopts)},
              {"p", p},
              {"alpha", alpha},
              {"h_edges", h},
              {"replicas", replicas}};
  json s = base_summary("activate", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  s["activation"] = proportion_json(est);
  emit_summary(out, s, clock);
  return 0;
}

int run_separator(const GraphOpts& gopts, const OutputOpts& out, double theta,
                  const std::string& mode, std::uint64_t budget, std::uint64_t seed) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  const perc::SeparatorMode m =
      mode == "exact" ? perc::SeparatorMode::exact : perc::SeparatorMode::heuristic;
  const perc::SeparatorResult res = perc::separator(g, theta, m, budget, seed);
  json config{{"graph", graph_config(gopts)},
              {"theta", theta},
              {"mode", mode},
              {"budget", budget}};
  json s = base_summary("separator", config, seed);
  s["graph_digest"] = perc::graph_digest(g);
  s["cut_size"] = res.cut_size;
  s["exact"] = res.exact;
  s["degree_weighted_share"] = res.degree_weighted_share;
  s["side_a"] = res.side_a;
  emit_summary(out, s, clock);
  return 0;
}

int run_molecular(const GraphOpts& gopts, const OutputOpts& out, double c_max,
                  std::uint32_t m_max) {
  Clock clock;
  const perc::Graph g = build_graph(gopts);
  const auto rep = perc::molecular_search(g, c_max, m_max);
  const perc::DensityReport density = perc::dense_check(g);
  json config{{"graph", graph_config(gopts)}, {"c_max", c_max}, {"m_max", m_max}};
  json s = base_summary("molecular", config, 0);
  s["graph_digest"] = perc::graph_digest(g);
  s["edge_density"] = density.edge_density;
  s["degree_ratio"] = density.degree_ratio;
  s["found"] = rep.has_value();
  if (rep) {
    s["m"] = rep->m;
    s["removed_orbits"] = rep->removed_orbits;
    s["f_size"] = rep->f_size;
    s["c_ratio"] = rep->c_ratio;
    s["components_equal_size"] = rep->components_equal_size;
    const perc::SeparatorResult wit = perc::molecular_witness_separator(g, *rep, 1.0 / 3.0);
    s["witness_cut"] = wit.cut_size;
    s["witness_share"] = wit.degree_weighted_share;
  }
  emit_summary(out, s, clock);
  return 0;
}

// ---------------------------------------------------------------------------
// Oracle validation battery

int run_oracle_validate(const OutputOpts& out, std::uint64_t replicas, std::uint64_t seed) {
  Clock clock;
  std::vector<perc::Graph> battery;
  for (int n = 3; n <= 6; ++n) battery.push_back(perc::Graph::cycle(n));
  for (int n = 3; n <= 5; ++n) battery.push_back(perc::Graph::complete(n));
  battery.push_back(perc::Graph::hypercube(3));
  battery.push_back(perc::Graph::path_pair(5));

  std::ostringstream report;
  std::uint64_t cells = 0, cells_ok = 0;
  bool structural_ok = true;
  for (const perc::Graph& g : battery) {
    if (g.n_edges() > 16) continue;
    const std::uint32_t n = g.n_vertices();
    struct Ev {
      std::string name;
      perc::MaskPredicate pred;
      perc::SweepEvent mc;  // Monte Carlo counterpart on (k1, k2)
    };
    std::vector<Ev> events;
    for (double alpha : {0.5, 1.0}) {
      const auto t = static_cast<std::uint32_t>(std::ceil(alpha * n - 1e-9));
      events.push_back({"k1_density_" + std::to_string(alpha), perc::event_k1_density(alpha),
                        [t](std::uint32_t k1, std::uint32_t) { return k1 >= t; }});
    }
    const std::uint32_t far = n - 1;
    events.push_back({"two_point", perc::event_two_point(0, far), nullptr});

    for (const Ev& ev : events) {
      const perc::LevelCounts lc = perc::exact_event(g, ev.pred);
      for (double p : {0.25, 0.5, 0.75}) {
        const double exact = perc::eval(lc, p);
        std::uint64_t succ = 0;
        thread_local perc::Configuration cfg;
        thread_local perc::UnionFind uf(0);
        if (uf.n() != n) uf = perc::UnionFind(n);
        for (std::uint64_t r = 0; r < replicas; ++r) {
          perc::SplitRng rng(seed, r);
          perc::sample_into(g, p, rng, cfg);
          bool hit;
          if (ev.mc) {
            hit = ev.mc(perc::k1_k2(g, cfg, uf).first, 0);
          } else {
            hit = perc::connected(g, cfg, 0, far);
          }
          if (hit) ++succ;
        }
        const perc::Proportion pr = perc::wilson(succ, replicas, 3 * 1.959963984540054);
        ++cells;
        const bool ok = exact >= pr.lo && exact <= pr.hi;
        if (ok) ++cells_ok;
        report << g.family_tag() << " n=" << n << " " << ev.name << " p=" << p
               << " exact=" << exact << " mc=" << pr.hat << (ok ? " ok" : " MISS") << "\n";
      }
      ++seed;  // decorrelate instances
    }

    // Exactness side: Russo identity and a Harris check per instance.
    const auto russo = perc::russo_decomposition(g, perc::event_k1_density(0.5));
    if (!russo.identity_holds) structural_ok = false;
    const auto harris =
        perc::harris_check(g, perc::event_k1_density(0.5), perc::event_two_point(0, far),
                           {perc::Rational(1, 4), perc::Rational(1, 2), perc::Rational(3, 4)});
    if (!harris.all_hold) structural_ok = false;
    report << g.family_tag() << " n=" << n << " russo=" << russo.identity_holds
           << " harris=" << harris.all_hold << "\n";
  }
  const double frac = cells ? static_cast<double>(cells_ok) / cells : 0.0;
  const bool pass = structural_ok && frac >= 0.95;
  report << "cells " << cells_ok << "/" << cells << " pass=" << pass << "\n";
  write_text(out.out, report.str());

  json s = base_summary("oracle-validate", {{"replicas", replicas}}, seed);
  s["cells"] = cells;
  s["cells_ok"] = cells_ok;
  s["structural_ok"] = structural_ok;
  s["pass"] = pass;
  emit_summary(out, s, clock);
  return pass ? 0 : 3;
}

// ---------------------------------------------------------------------------
// Named experiments

struct ExperimentOpts {
  std::string name;
  int n = 0;
  double p = -1.0;
  double q = -1.0;
  double alpha = -1.0;
  double beta = -1.0;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  std::vector<int> sizes;
  bool slow = false;
};

int run_experiment(const ExperimentOpts& e, const OutputOpts& out) {
  Clock clock;
  auto rows_out = [&](const std::vector<std::string>& rows) {
    std::ostringstream body;
    for (const auto& r : rows) body << r << "\n";
    write_text(out.out, body.str());
  };
  auto k1k2_rows = [&](const perc::Graph& g, double p, std::uint64_t replicas,
                       std::vector<std::string>& rows,
                       std::vector<std::pair<std::uint32_t, std::uint32_t>>& stats) {
    rows.resize(replicas);
    stats.resize(replicas);
    const std::uint32_t n = g.n_vertices();
    perc::parallel_for(replicas, [&](std::uint64_t r, int) {
      thread_local perc::Configuration cfg;
      thread_local perc::UnionFind uf(0);
      if (uf.n() != n) uf = perc::UnionFind(n);
      perc::SplitRng rng(e.seed, r);
      perc::sample_into(g, p, rng, cfg);
      const auto [k1, k2] = perc::k1_k2(g, cfg, uf);
      stats[r] = {k1, k2};
      rows[r] = json{{"replica", r},
                     {"k1", k1},
                     {"k2", k2},
                     {"k2_density", static_cast<double>(k2) / n}}
                    .dump();
    });
  };

  if (e.name == "kn-giant") {
    const int n = e.n ? e.n : 2000;
    const double p = e.p >= 0 ? e.p : 2.0 / n;
    const std::uint64_t replicas = e.replicas ? e.replicas : 10000;
    const perc::Graph g = perc::Graph::complete(n);
    std::vector<std::string> rows;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stats;
    k1k2_rows(g, p, replicas, rows, stats);
    rows_out(rows);
    double sum_k2 = 0;
    std::uint64_t small_k2 = 0;
    const double cap = 10.0 * std::log(static_cast<double>(n));
    for (const auto& [k1, k2] : stats) {
      sum_k2 += static_cast<double>(k2) / n;
      if (k2 <= cap) ++small_k2;
    }
    json s = base_summary("experiment",
                          {{"name", e.name}, {"n", n}, {"p", p}, {"replicas", replicas}},
                          e.seed);
    s["graph_digest"] = perc::graph_digest(g);
    s["mean_k2_density"] = sum_k2 / replicas;
    s["k2_within_10_log_n"] = proportion_json(perc::wilson(small_k2, replicas));
    emit_summary(out, s, clock);
    return 0;
  }

  if (e.name == "kn-box-k2") {
    const int n = e.n ? e.n : 500;
    const double p = e.p >= 0 ? e.p : 2.0 / n;
    const std::uint64_t replicas = e.replicas ? e.replicas : 100000;
    const perc::Graph g =
        perc::Graph::cartesian_product(perc::Graph::complete(n), perc::Graph::complete(2));
    // The bridge orbit is the lifted second factor: the last declared orbit.
    const auto& orbits = *g.edge_orbits();
    const std::vector<std::uint32_t>& bridges = orbits.back();
    std::vector<std::uint8_t> is_bridge(g.n_edges(), 0);
    for (std::uint32_t b : bridges) is_bridge[b] = 1;

    const std::uint32_t nv = g.n_vertices();
    std::vector<std::string> rows(replicas);
    std::vector<std::uint8_t> no_bridge(replicas, 0), big_k2(replicas, 0);
    perc::parallel_for(replicas, [&](std::uint64_t r, int) {
      thread_local perc::Configuration cfg;
      thread_local perc::UnionFind uf(0);
      if (uf.n() != nv) uf = perc::UnionFind(nv);
      perc::SplitRng rng(e.seed, r);
      perc::sample_into(g, p, rng, cfg);
      std::uint32_t open_bridges = 0;
      for (std::uint32_t eid : cfg.open_edges) open_bridges += is_bridge[eid];
      const auto [k1, k2] = perc::k1_k2(g, cfg, uf);
      no_bridge[r] = open_bridges == 0;
      big_k2[r] = static_cast<double>(k2) / nv >= 0.3;
      rows[r] = json{{"replica", r},
                     {"k1", k1},
                     {"k2", k2},
                     {"k2_density", static_cast<double>(k2) / nv},
                     {"open_bridges", open_bridges}}
                    .dump();
    });
    rows_out(rows);
    std::uint64_t nb = 0, bk = 0;
    for (std::uint64_t r = 0; r < replicas; ++r) {
      nb += no_bridge[r];
      bk += big_k2[r];
    }
    json s = base_summary("experiment",
                          {{"name", e.name}, {"n", n}, {"p", p}, {"replicas", replicas}},
                          e.seed);
    s["graph_digest"] = perc::graph_digest(g);
    s["no_bridge"] = proportion_json(perc::wilson(nb, replicas));
    s["no_bridge_reference"] = std::exp(-p * static_cast<double>(bridges.size()));
    s["k2_density_ge_0.3"] = proportion_json(perc::wilson(bk, replicas));
    emit_summary(out, s, clock);
    return 0;
  }

  if (e.name == "torus2d-k2") {
    const int n = e.n ? e.n : 64;
    const double p = e.p >= 0 ? e.p : 0.6;
    const std::uint64_t replicas = e.replicas ? e.replicas : 2000;
    const perc::Graph g = perc::Graph::torus({n, n});
    std::vector<std::string> rows;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stats;
    k1k2_rows(g, p, replicas, rows, stats);
    rows_out(rows);
    double sum_k2 = 0;
    for (const auto& [k1, k2] : stats) sum_k2 += k2;
    const double logv = std::log(static_cast<double>(g.n_vertices()));
    json s = base_summary("experiment",
                          {{"name", e.name}, {"n", n}, {"p", p}, {"replicas", replicas}},
                          e.seed);
    s["graph_digest"] = perc::graph_digest(g);
    s["mean_k2"] = sum_k2 / replicas;
    s["mean_k2_over_log2_v"] = sum_k2 / replicas / (logv * logv);
    emit_summary(out, s, clock);
    return 0;
  }

  if (e.name == "elongated-torus") {
    const int a = e.n ? e.n : 8;
    const int b = e.slow ? 4096 : 256;
    const double p = e.p >= 0 ? e.p : 0.55;
    const std::uint64_t replicas = e.replicas ? e.replicas : 500;
    const perc::Graph g = perc::Graph::torus({a, b});
    std::vector<std::string> rows;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stats;
    k1k2_rows(g, p, replicas, rows, stats);
    rows_out(rows);
    std::uint64_t multi = 0;
    for (const auto& [k1, k2] : stats)
      if (static_cast<double>(k2) / g.n_vertices() >= 0.1) ++multi;
    json s = base_summary(
        "experiment",
        {{"name", e.name}, {"a", a}, {"b", b}, {"p", p}, {"replicas", replicas}}, e.seed);
    s["graph_digest"] = perc::graph_digest(g);
    s["k2_density_ge_0.1"] = proportion_json(perc::wilson(multi, replicas));
    emit_summary(out, s, clock);
    return 0;
  }

  if (e.name == "molecular-chain") {
    const int n = e.n ? e.n : 64;
    const double alpha = e.alpha >= 0 ? e.alpha : 0.4;
    const perc::Graph g = perc::Graph::molecular_chain(n, alpha);
    const double p = e.p >= 0 ? e.p : 3.0 / (4.0 * n);
    const std::uint64_t replicas = e.replicas ? e.replicas : 20000;
    std::vector<std::string> rows;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stats;
    k1k2_rows(g, p, replicas, rows, stats);
    rows_out(rows);
    std::uint64_t two_giants = 0;
    double sum_k2 = 0;
    for (const auto& [k1, k2] : stats) {
      const double d2 = static_cast<double>(k2) / g.n_vertices();
      sum_k2 += d2;
      if (d2 >= 0.15) ++two_giants;
    }
    json s = base_summary("experiment",
                          {{"name", e.name},
                           {"n", n},
                           {"chain_alpha", alpha},
                           {"p", p},
                           {"replicas", replicas}},
                          e.seed);
    s["graph_digest"] = perc::graph_digest(g);
    s["mean_k2_density"] = sum_k2 / replicas;
    s["k2_density_ge_0.15"] = proportion_json(perc::wilson(two_giants, replicas));
    emit_summary(out, s, clock);
    return 0;
  }

  if (e.name == "sharpness-scan") {
    const std::vector<int> sizes = e.sizes.empty() ? std::vector<int>{100, 400, 1600} : e.sizes;
    const std::uint64_t replicas = e.replicas ? e.replicas : 400;
    std::vector<std::string> rows;
    bool inconclusive = false;
    for (int n : sizes) {
      const perc::RatioEstimate r = perc::sharp_density_ratio(
          perc::Graph::complete(n), 0.5, 0.1, 1e-6, e.seed, replicas);
      inconclusive |= r.inconclusive;
      rows.push_back(json{{"family", "complete"},
                          {"n", n},
                          {"beta", 0.5},
                          {"ratio", r.ratio},
                          {"lo", r.ratio_lo},
                          {"hi", r.ratio_hi}}
                         .dump());
    }
    for (int n : sizes) {
      if (n > 400) continue;  // bridge-bottleneck scan stays desk-scale
      const perc::Graph g =
          perc::Graph::cartesian_product(perc::Graph::complete(n), perc::Graph::complete(2));
      const perc::RatioEstimate r = perc::sharp_density_ratio(g, 0.9, 0.1, 1e-6, e.seed, replicas);
      inconclusive |= r.inconclusive;
      rows.push_back(json{{"family", "complete-product"},
                          {"n", n},
                          {"beta", 0.9},
                          {"ratio", r.ratio},
                          {"lo", r.ratio_lo},
                          {"hi", r.ratio_hi}}
                         .dump());
    }
    rows_out(rows);
    json s = base_summary("experiment",
                          {{"name", e.name}, {"sizes", sizes}, {"replicas", replicas}}, e.seed);
    s["inconclusive"] = inconclusive;
    emit_summary(out, s, clock);
    return inconclusive ? 3 : 0;
  }

  if (e.name == "existence-scan") {
    const std::vector<int> sizes = e.sizes.empty() ? std::vector<int>{200, 400, 800} : e.sizes;
    const double alpha = e.alpha >= 0 ? e.alpha : 0.5;
    const std::uint64_t replicas = e.replicas ? e.replicas : 20000;
    std::vector<std::string> rows;
    double min_hat = 1.0;
    for (int n : sizes) {
      const perc::Graph g = perc::Graph::complete(n);
      const double p = e.p >= 0 ? e.p : 2.0 / n;
      const auto target = static_cast<std::uint32_t>(std::ceil(alpha * n - 1e-9));
      std::uint64_t succ = 0;
      perc::Configuration cfg;
      perc::UnionFind uf(g.n_vertices());
      for (std::uint64_t r = 0; r < replicas; ++r) {
        perc::SplitRng rng(e.seed, r);
        perc::sample_into(g, p, rng, cfg);
        if (perc::k1_k2(g, cfg, uf).first >= target) ++succ;
      }
      const perc::Proportion pr = perc::wilson(succ, replicas);
      min_hat = std::min(min_hat, pr.hat);
      rows.push_back(json{{"family", "complete"},
                          {"n", n},
                          {"p", p},
                          {"alpha", alpha},
                          {"estimate", proportion_json(pr)}}
                         .dump());
    }
    rows_out(rows);
    json s = base_summary(
        "experiment",
        {{"name", e.name}, {"sizes", sizes}, {"alpha", alpha}, {"replicas", replicas}},
        e.seed);
    s["min_estimate"] = min_hat;
    emit_summary(out, s, clock);
    return 0;
  }

  throw perc::invalid_parameter("unknown experiment: '" + e.name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percolation laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("perclab ") + kToolVersion);
  int threads = 1;
  app.add_option("--threads", threads, "worker thread cap (output is thread-count invariant)");

  auto configure = [](CLI::App* sub) {
    sub->set_config("--config", "", "flat key=value config file; flags override");
    return sub;
  };

  // gen
  GraphOpts gen_g;
  OutputOpts gen_o;
  CLI::App* gen = configure(app.add_subcommand("gen", "emit a graph as JSON"));
  add_graph_flags(gen, gen_g);
  add_output_flags(gen, gen_o);

  // sim
  GraphOpts sim_g;
  OutputOpts sim_o;
  double sim_p = 0.5, sim_alpha = 0.0;
  std::uint64_t sim_replicas = 1000, sim_seed = 0;
  CLI::App* sim = configure(app.add_subcommand("sim", "sample configurations, emit JSONL"));
  add_graph_flags(sim, sim_g);
  add_output_flags(sim, sim_o);
  sim->add_option("--p", sim_p, "edge probability")->required();
  sim->add_option("--alpha", sim_alpha, "optional event flag: k1 density >= alpha");
  sim->add_option("--replicas", sim_replicas);
  sim->add_option("--seed", sim_seed);

  // sweep
  GraphOpts sw_g;
  OutputOpts sw_o;
  double sw_alpha = 0.0;
  std::uint64_t sw_replicas = 100, sw_seed = 0;
  CLI::App* sw = configure(app.add_subcommand("sweep", "averaged permutation sweeps, CSV"));
  add_graph_flags(sw, sw_g);
  add_output_flags(sw, sw_o);
  sw->add_option("--alpha", sw_alpha, "optional event: k1 density >= alpha");
  sw->add_option("--replicas", sw_replicas);
  sw->add_option("--seed", sw_seed);

  // curve
  GraphOpts cv_g;
  OutputOpts cv_o;
  double cv_alpha = 0.5;
  std::string cv_grid = "0.0:1.0:33", cv_method = "sweep";
  std::uint64_t cv_replicas = 1000, cv_seed = 0;
  CLI::App* cv = configure(app.add_subcommand("curve", "estimate f(p) over a grid, CSV"));
  add_graph_flags(cv, cv_g);
  add_output_flags(cv, cv_o);
  cv->add_option("--alpha", cv_alpha)->required();
  cv->add_option("--grid", cv_grid, "lo:hi:count or comma list");
  cv->add_option("--method", cv_method, "sweep | direct");
  cv->add_option("--replicas", cv_replicas);
  cv->add_option("--seed", cv_seed);

  // threshold
  GraphOpts th_g;
  OutputOpts th_o;
  double th_alpha = 0.5, th_delta = 0.5, th_tol = 1e-3;
  std::uint64_t th_seed = 0;
  CLI::App* th = configure(app.add_subcommand("threshold", "estimate p_c(alpha, delta)"));
  add_graph_flags(th, th_g);
  add_output_flags(th, th_o);
  th->add_option("--alpha", th_alpha)->required();
  th->add_option("--delta", th_delta)->required();
  th->add_option("--tolerance", th_tol);
  th->add_option("--seed", th_seed);

  // ratio
  GraphOpts ra_g;
  OutputOpts ra_o;
  double ra_beta = 0.5, ra_delta = 0.1, ra_tol = 1e-6;
  std::uint64_t ra_replicas = 400, ra_seed = 0;
  CLI::App* ra = configure(
      app.add_subcommand("ratio", "sharpness ratio p_c(beta,1-delta)/p_c(beta,delta)"));
  add_graph_flags(ra, ra_g);
  add_output_flags(ra, ra_o);
  ra->add_option("--beta", ra_beta)->required();
  ra->add_option("--delta", ra_delta)->required();
  ra->add_option("--tolerance", ra_tol);
  ra->add_option("--replicas", ra_replicas);
  ra->add_option("--seed", ra_seed);

  // twopoint
  GraphOpts tp_g;
  OutputOpts tp_o;
  double tp_p = 0.5;
  std::uint32_t tp_source = 0;
  std::uint64_t tp_replicas = 10000, tp_seed = 0;
  CLI::App* tp = configure(app.add_subcommand("twopoint", "two-point function profile, CSV"));
  add_graph_flags(tp, tp_g);
  add_output_flags(tp, tp_o);
  tp->add_option("--p", tp_p)->required();
  tp->add_option("--source", tp_source);
  tp->add_option("--replicas", tp_replicas);
  tp->add_option("--seed", tp_seed);

  // couple
  GraphOpts cp_g;
  OutputOpts cp_o;
  double cp_q = 0.0, cp_p = 0.5;
  std::uint64_t cp_replicas = 1000, cp_seed = 0;
  CLI::App* cp = configure(app.add_subcommand("couple", "monotone coupling check, JSONL"));
  add_graph_flags(cp, cp_g);
  add_output_flags(cp, cp_o);
  cp->add_option("--q", cp_q)->required();
  cp->add_option("--p", cp_p)->required();
  cp->add_option("--replicas", cp_replicas);
  cp->add_option("--seed", cp_seed);

  // sandcastle
  GraphOpts sc_g;
  OutputOpts sc_o;
  double sc_p = 0.5, sc_q = 0.25, sc_alpha = 0.2, sc_beta = 0.2;
  std::uint64_t sc_replicas = 200, sc_inner = 64, sc_seed = 0;
  std::vector<std::uint32_t> sc_probes;
  CLI::App* sc = configure(
      app.add_subcommand("sandcastle", "sandcastle frequency over probe vertices, JSONL"));
  add_graph_flags(sc, sc_g);
  add_output_flags(sc, sc_o);
  sc->add_option("--p", sc_p)->required();
  sc->add_option("--q", sc_q)->required();
  sc->add_option("--alpha", sc_alpha)->required();
  sc->add_option("--beta", sc_beta)->required();
  sc->add_option("--replicas", sc_replicas);
  sc->add_option("--inner", sc_inner, "inner conditional replicas per probe");
  sc->add_option("--probes", sc_probes, "probe vertices (default: 8 evenly spread)")
      ->delimiter(',');
  sc->add_option("--seed", sc_seed);

  // activate
  GraphOpts ac_g;
  OutputOpts ac_o;
  double ac_p = 0.5, ac_alpha = 0.5;
  std::vector<std::uint32_t> ac_edges;
  int ac_orbit = -1;
  std::uint64_t ac_replicas = 10000, ac_seed = 0;
  CLI::App* ac = configure(app.add_subcommand("activate", "activator probability of H"));
  add_graph_flags(ac, ac_g);
  add_output_flags(ac, ac_o);
  ac->add_option("--p", ac_p)->required();
  ac->add_option("--alpha", ac_alpha)->required();
  ac->add_option("--h-edges", ac_edges, "edge indices of H")->delimiter(',');
  ac->add_option("--h-orbit", ac_orbit, "add a whole declared edge orbit to H");
  ac->add_option("--replicas", ac_replicas);
  ac->add_option("--seed", ac_seed);

  // separator
  GraphOpts se_g;
  OutputOpts se_o;
  double se_theta = 1.0 / 3.0;
  std::string se_mode = "heuristic";
  std::uint64_t se_budget = 20000, se_seed = 0x5eed;
  CLI::App* se = configure(app.add_subcommand("separator", "balanced minimum edge cut"));
  add_graph_flags(se, se_g);
  add_output_flags(se, se_o);
  se->add_option("--theta", se_theta);
  se->add_option("--mode", se_mode, "exact | heuristic");
  se->add_option("--budget", se_budget, "heuristic move proposals per restart");
  se->add_option("--seed", se_seed);

  // molecular
  GraphOpts mo_g;
  OutputOpts mo_o;
  double mo_c = 4.0;
  std::uint32_t mo_mmax = 64;
  CLI::App* mo = configure(app.add_subcommand("molecular", "orbit-removal decomposition"));
  add_graph_flags(mo, mo_g);
  add_output_flags(mo, mo_o);
  mo->add_option("--c-max", mo_c, "|F| <= c_max * |V|");
  mo->add_option("--m-max", mo_mmax);

  // oracle-validate
  OutputOpts ov_o;
  std::uint64_t ov_replicas = 100000, ov_seed = 20240801;
  CLI::App* ov = configure(
      app.add_subcommand("oracle-validate", "Monte Carlo vs exact enumeration battery"));
  add_output_flags(ov, ov_o);
  ov->add_option("--replicas", ov_replicas);
  ov->add_option("--seed", ov_seed);

  // experiment
  ExperimentOpts ex;
  OutputOpts ex_o;
  CLI::App* exp = configure(app.add_subcommand("experiment", "named reproduction bundle"));
  exp->add_option("name", ex.name,
                  "kn-giant | kn-box-k2 | torus2d-k2 | elongated-torus | molecular-chain | "
                  "sharpness-scan | existence-scan")
      ->required();
  add_output_flags(exp, ex_o);
  exp->add_option("--n", ex.n);
  exp->add_option("--p", ex.p);
  exp->add_option("--q", ex.q);
  exp->add_option("--alpha", ex.alpha);
  exp->add_option("--beta", ex.beta);
  exp->add_option("--replicas", ex.replicas);
  exp->add_option("--seed", ex.seed);
  exp->add_option("--sizes", ex.sizes)->delimiter(',');
  exp->add_flag("--slow", ex.slow, "enable the full-size variant");

  try {
    app.parse(argc, argv);
    perc::set_max_threads(threads);
    if (gen->parsed()) return run_gen(gen_g, gen_o);
    if (sim->parsed()) return run_sim(sim_g, sim_o, sim_p, sim_alpha, sim_replicas, sim_seed);
    if (sw->parsed()) return run_sweep(sw_g, sw_o, sw_alpha, sw_replicas, sw_seed);
    if (cv->parsed())
      return run_curve(cv_g, cv_o, cv_alpha, cv_grid, cv_replicas, cv_seed, cv_method);
    if (th->parsed()) return run_threshold(th_g, th_o, th_alpha, th_delta, th_tol, th_seed);
    if (ra->parsed())
      return run_ratio(ra_g, ra_o, ra_beta, ra_delta, ra_tol, ra_replicas, ra_seed);
    if (tp->parsed()) return run_twopoint(tp_g, tp_o, tp_p, tp_source, tp_replicas, tp_seed);
    if (cp->parsed()) return run_couple(cp_g, cp_o, cp_q, cp_p, cp_replicas, cp_seed);
    if (sc->parsed())
      return run_sandcastle(sc_g, sc_o, sc_p, sc_q, sc_alpha, sc_beta, sc_replicas, sc_inner,
                            sc_probes, sc_seed);
    if (ac->parsed())
      return run_activate(ac_g, ac_o, ac_p, ac_alpha, ac_edges, ac_orbit, ac_replicas, ac_seed);
    if (se->parsed()) return run_separator(se_g, se_o, se_theta, se_mode, se_budget, se_seed);
    if (mo->parsed()) return run_molecular(mo_g, mo_o, mo_c, mo_mmax);
    if (ov->parsed()) return run_oracle_validate(ov_o, ov_replicas, ov_seed);
    if (exp->parsed()) return run_experiment(ex, ex_o);
    std::cerr << "error: invalid-config: no subcommand\n";
    return 2;
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);  // --help / --version
    std::cerr << "error: invalid-config: " << err.what() << "\n";
    return 2;
  } catch (const perc::size_limit& err) {
    std::cerr << "error: size-limit: " << err.what() << "\n";
    return 4;
  } catch (const perc::resolution_error& err) {
    std::cerr << "error: inconclusive: " << err.what() << "\n";
    return 3;
  } catch (const perc::invalid_parameter& err) {
    std::cerr << "error: invalid-config: " << err.what() << "\n";
    return 2;
  } catch (const perc::unsupported_graph& err) {
    std::cerr << "error: invalid-config: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: invalid-config: " << err.what() << "\n";
    return 2;
  }
}
