// rig: exact calculators, samplers and Monte Carlo experiments for the
// edge count of the random intersection graph G(n, m, p).

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rig/bounds.hpp"
#include "rig/contractions.hpp"
#include "rig/distance.hpp"
#include "rig/model.hpp"
#include "rig/moments.hpp"
#include "rig/subgraphs.hpp"

namespace {

using namespace rig;

// Reals carry 17 significant digits so output round-trips bit-exactly.
std::string fmt_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_real(double v) {
  if (std::isnan(v) || std::isinf(v)) return "\"" + fmt_real(v) + "\"";
  return fmt_real(v);
}

struct Output {
  std::string path;  // empty = stdout
  std::ostringstream body;

  void flush() {
    if (path.empty()) {
      std::fputs(body.str().c_str(), stdout);
    } else {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot open output file: " + path);
      f << body.str();
    }
  }
};

struct CommonOpts {
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  int threads = 0;
};

void add_format(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out_path, "Write output to a file instead of stdout");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RIG_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    throw std::invalid_argument("RIG_SEED must be an unsigned integer");
  }
  return 0;
}

int cmd_moments(const ModelParams& params, CommonOpts& o) {
  VarianceReport r = variance_edges(params);
  Output out;
  out.path = o.out_path;
  if (o.format == "csv") {
    out.body << "n,m,p,mean,variance,term_pairwise,term_cherry\n"
             << params.n << ',' << params.m << ',' << fmt_real(params.p) << ','
             << fmt_real(r.mean) << ',' << fmt_real(r.variance) << ','
             << fmt_real(r.term_pairwise) << ',' << fmt_real(r.term_cherry) << '\n';
  } else {
    out.body << "{\n"
             << "  \"n\": " << params.n << ",\n"
             << "  \"m\": " << params.m << ",\n"
             << "  \"p\": " << json_real(params.p) << ",\n"
             << "  \"mean\": " << json_real(r.mean) << ",\n"
             << "  \"variance\": " << json_real(r.variance) << ",\n"
             << "  \"term_pairwise\": " << json_real(r.term_pairwise) << ",\n"
             << "  \"term_cherry\": " << json_real(r.term_cherry) << ",\n"
             << "  \"regime_mp3\": " << json_real(r.regime_mp3) << "\n"
             << "}\n";
  }
  out.flush();
  return 0;
}

int cmd_prob(const std::string& graph_text, std::int64_t m, double p, bool complement,
             const std::string& plus_text, const std::string& minus_text,
             const std::string& method, CommonOpts& o) {
  SmallGraph H = SmallGraph::parse(graph_text);
  std::string mode;
  double value = 0.0;
  if (!plus_text.empty()) {
    CoverSpec spec;
    spec.plus = parse_vertex_sets(plus_text);
    if (!minus_text.empty()) spec.minus = parse_vertex_sets(minus_text);
    mode = "cover";
    if (method == "exact")
      value = pi_cover_exact(H, spec, m, p);
    else if (method == "approx")
      value = pi_cover_approx(H, spec, m, p);
    else
      value = pi_cover_order(H, spec, m, p);
  } else if (complement) {
    mode = "complement";
    value = pi_complement(H, m, p);
  } else {
    mode = "subgraph";
    value = pi_subgraph(H, m, p);
  }
  Output out;
  out.path = o.out_path;
  const std::string method_out = mode == "cover" ? method : std::string("exact");
  if (o.format == "csv") {
    out.body << "graph,m,p,mode,method,value\n"
             << '"' << graph_text << "\"," << m << ',' << fmt_real(p) << ',' << mode << ','
             << method_out << ',' << fmt_real(value) << '\n';
  } else {
    out.body << "{\n"
             << "  \"graph\": \"" << graph_text << "\",\n"
             << "  \"m\": " << m << ",\n"
             << "  \"p\": " << json_real(p) << ",\n"
             << "  \"mode\": \"" << mode << "\",\n"
             << "  \"method\": \"" << method_out << "\",\n"
             << "  \"value\": " << json_real(value) << "\n"
             << "}\n";
  }
  out.flush();
  return 0;
}

int cmd_norms(std::int64_t m, double p, const std::string& method, CommonOpts& o) {
  struct Row {
    std::string method;
    std::optional<double> n20, n21, n10, n11, n_mix;
  };
  std::vector<Row> rows;
  bool all = method == "all";
  if (all || method == "closed")
    rows.push_back({"closed", closed_norm_g2_20(m, p), closed_norm_g2_21(m, p), {}, {}, {}});
  if (all || method == "alternating")
    rows.push_back({"alternating", {}, {}, alternating_sum_norm(1, m, p),
                    alternating_sum_norm(2, m, p), alternating_sum_norm(3, m, p)});
  if (all || method == "brute")
    rows.push_back({"brute", brute_force_norm({kG2Bar, kG2Bar, 2, 0}, m, p),
                    brute_force_norm({kG2Bar, kG2Bar, 2, 1}, m, p),
                    brute_force_norm({kG1Bar, kG1Bar, 1, 0}, m, p),
                    brute_force_norm({kG2Bar, kG2Bar, 1, 1}, m, p),
                    brute_force_norm({kG2Bar, kG1Bar, 1, 1}, m, p)});
  Output out;
  out.path = o.out_path;
  auto cell_csv = [](const std::optional<double>& v) { return v ? fmt_real(*v) : std::string(); };
  auto cell_json = [](const std::optional<double>& v) {
    return v ? json_real(*v) : std::string("null");
  };
  if (o.format == "csv") {
    out.body << "method,n20,n21,n10,n11,n_mix\n";
    for (const Row& r : rows)
      out.body << r.method << ',' << cell_csv(r.n20) << ',' << cell_csv(r.n21) << ','
               << cell_csv(r.n10) << ',' << cell_csv(r.n11) << ',' << cell_csv(r.n_mix) << '\n';
  } else {
    out.body << "{\n  \"m\": " << m << ",\n  \"p\": " << json_real(p) << ",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      out.body << "    {\"method\": \"" << r.method << "\", \"n20\": " << cell_json(r.n20)
               << ", \"n21\": " << cell_json(r.n21) << ", \"n10\": " << cell_json(r.n10)
               << ", \"n11\": " << cell_json(r.n11) << ", \"n_mix\": " << cell_json(r.n_mix)
               << '}' << (i + 1 < rows.size() ? "," : "") << '\n';
    }
    out.body << "  ]\n}\n";
  }
  out.flush();
  return 0;
}

void distance_output(const ModelParams& params, const DistanceReport& rep, CommonOpts& o) {
  Output out;
  out.path = o.out_path;
  if (o.format == "csv") {
    out.body << "n,m,p,d_K,d_K_radius,d_W,d_W_radius,samples,exact\n"
             << params.n << ',' << params.m << ',' << fmt_real(params.p) << ','
             << fmt_real(rep.d_K) << ',' << fmt_real(rep.d_K_radius) << ',' << fmt_real(rep.d_W)
             << ',' << fmt_real(rep.d_W_radius) << ',' << rep.samples << ','
             << (rep.exact ? "true" : "false") << '\n';
  } else {
    out.body << "{\n"
             << "  \"n\": " << params.n << ",\n"
             << "  \"m\": " << params.m << ",\n"
             << "  \"p\": " << json_real(params.p) << ",\n"
             << "  \"d_K\": " << json_real(rep.d_K) << ",\n"
             << "  \"d_K_radius\": " << json_real(rep.d_K_radius) << ",\n"
             << "  \"d_W\": " << json_real(rep.d_W) << ",\n"
             << "  \"d_W_radius\": " << json_real(rep.d_W_radius) << ",\n"
             << "  \"samples\": " << rep.samples << ",\n"
             << "  \"exact\": " << (rep.exact ? "true" : "false") << "\n"
             << "}\n";
  }
  out.flush();
}

int cmd_exact(const ModelParams& params, bool with_pmf, CommonOpts& o) {
  ExactPmf pmf = exact_pmf(params);
  DistanceReport rep = exact_distances(pmf, params);
  if (!with_pmf || o.format == "csv") {
    distance_output(params, rep, o);
    return 0;
  }
  Output out;
  out.path = o.out_path;
  out.body << "{\n"
           << "  \"n\": " << params.n << ",\n"
           << "  \"m\": " << params.m << ",\n"
           << "  \"p\": " << json_real(params.p) << ",\n"
           << "  \"d_K\": " << json_real(rep.d_K) << ",\n"
           << "  \"d_W\": " << json_real(rep.d_W) << ",\n"
           << "  \"pmf_mean\": " << json_real(pmf.mean) << ",\n"
           << "  \"pmf_variance\": " << json_real(pmf.variance) << ",\n"
           << "  \"pmf\": [";
  for (std::size_t k = 0; k < pmf.probs.size(); ++k)
    out.body << (k ? ", " : "") << json_real(pmf.probs[k]);
  out.body << "]\n}\n";
  out.flush();
  return 0;
}

std::vector<ModelParams> read_curve(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open curve file: " + path);
  std::vector<ModelParams> curve;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    ModelParams p;
    if (ls >> p.n >> p.m >> p.p) curve.push_back(p);
  }
  if (curve.empty()) throw std::invalid_argument("curve file has no points");
  return curve;
}

int cmd_sweep(const std::string& curve_path, std::uint64_t samples, CommonOpts& o) {
  std::vector<ModelParams> curve = read_curve(curve_path);
  auto points = convergence_sweep(curve, samples, o.seed, o.threads);
  Output out;
  out.path = o.out_path;
  out.body << "n,m,p,d_K,d_K_radius,d_W,bracket_quarter,bracket_half,bracket_k14,regime\n";
  for (const SweepPoint& pt : points) {
    out.body << pt.params.n << ',' << pt.params.m << ',' << fmt_real(pt.params.p) << ','
             << fmt_real(pt.dist.d_K) << ',' << fmt_real(pt.dist.d_K_radius) << ','
             << fmt_real(pt.dist.d_W) << ',' << fmt_real(pt.bounds.bracket_main_quarter) << ','
             << fmt_real(pt.bounds.bracket_main_half) << ',' << fmt_real(pt.bounds.bracket_k14)
             << ',' << regime_name(pt.bounds.regime) << '\n';
  }
  out.flush();
  return 0;
}

int cmd_sample(const ModelParams& params, std::uint64_t seed, std::uint64_t replicate,
               CommonOpts& o) {
  AssignmentMatrix a = sample_assignment(params, seed, replicate);
  SampleSummary s = edge_count(a);
  Output out;
  out.path = o.out_path;
  auto row_string = [&](std::int64_t k) {
    std::string r(static_cast<std::size_t>(a.m), '0');
    for (std::int64_t i = 0; i < a.m; ++i)
      if (a.bit(k, i)) r[static_cast<std::size_t>(i)] = '1';
    return r;
  };
  if (o.format == "csv") {
    out.body << "row,bits\n";
    for (std::int64_t k = 0; k < a.n; ++k) out.body << k << ',' << row_string(k) << '\n';
  } else {
    out.body << "{\n"
             << "  \"n\": " << params.n << ",\n"
             << "  \"m\": " << params.m << ",\n"
             << "  \"p\": " << json_real(params.p) << ",\n"
             << "  \"seed\": " << seed << ",\n"
             << "  \"replicate\": " << replicate << ",\n"
             << "  \"edge_count\": " << s.edge_count << ",\n"
             << "  \"nonedge_count\": " << s.nonedge_count << ",\n"
             << "  \"rows\": [";
    for (std::int64_t k = 0; k < a.n; ++k)
      out.body << (k ? ", " : "") << '"' << row_string(k) << '"';
    out.body << "]\n}\n";
  }
  out.flush();
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"edge-count statistics for the random intersection graph G(n, m, p)"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");

  ModelParams params;
  CommonOpts opts;
  opts.seed = default_seed();

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--n", params.n, "Vertex count")->required();
    cmd->add_option("--m", params.m, "Attribute count")->required();
    cmd->add_option("--p", params.p, "Attribute-choice probability")->required();
  };

  auto* c_moments = app.add_subcommand("moments", "Exact mean and variance of the edge count");
  add_params(c_moments);
  add_format(c_moments, opts);

  auto* c_prob = app.add_subcommand("prob", "Subgraph / clique-cover probabilities");
  std::string graph_text, plus_text, minus_text, prob_method = "exact";
  bool complement = false;
  c_prob->add_option("--graph", graph_text, "Graph as \"h;u-v,u-v,...\"")->required();
  c_prob->add_option("--m", params.m, "Attribute count")->required();
  c_prob->add_option("--p", params.p, "Attribute-choice probability")->required();
  c_prob->add_flag("--complement", complement, "Probability that no edge of H appears");
  c_prob->add_option("--plus", plus_text, "Required cover family, e.g. \"{0,1},{1,2}\"");
  c_prob->add_option("--minus", minus_text, "Forbidden family");
  c_prob->add_option("--method", prob_method, "Cover evaluation: exact|approx|order")
      ->check(CLI::IsMember({"exact", "approx", "order"}));
  add_format(c_prob, opts);

  auto* c_norms = app.add_subcommand("norms", "Contraction-norm table");
  std::string norms_method = "all";
  c_norms->add_option("--m", params.m, "Attribute count")->required();
  c_norms->add_option("--p", params.p, "Attribute-choice probability")->required();
  c_norms->add_option("--method", norms_method, "closed|alternating|brute|all")
      ->check(CLI::IsMember({"closed", "alternating", "brute", "all"}));
  add_format(c_norms, opts);

  auto* c_exact = app.add_subcommand("exact", "Exact distribution distances (n <= 6)");
  bool with_pmf = false;
  add_params(c_exact);
  c_exact->add_flag("--pmf", with_pmf, "Include the full pmf in the output");
  add_format(c_exact, opts);

  auto* c_mc = app.add_subcommand("mc", "Monte Carlo distance estimates");
  std::uint64_t samples = 100000;
  add_params(c_mc);
  c_mc->add_option("--samples", samples, "Sample count")->capture_default_str();
  c_mc->add_option("--seed", opts.seed, "RNG seed (default: RIG_SEED or 0)");
  c_mc->add_option("--threads", opts.threads, "Thread cap (0 = hardware)");
  add_format(c_mc, opts);

  auto* c_sweep = app.add_subcommand("sweep", "Distance + bound table along a parameter curve");
  std::string curve_path;
  c_sweep->add_option("--curve", curve_path, "File with one \"n m p\" triple per line")
      ->required();
  c_sweep->add_option("--samples", samples, "Samples per point")->capture_default_str();
  c_sweep->add_option("--seed", opts.seed, "RNG seed (default: RIG_SEED or 0)");
  c_sweep->add_option("--threads", opts.threads, "Thread cap (0 = hardware)");
  c_sweep->add_option("--out", opts.out_path, "Write CSV to a file instead of stdout");

  auto* c_sample = app.add_subcommand("sample", "One assignment-matrix draw");
  std::uint64_t replicate = 0;
  add_params(c_sample);
  c_sample->add_option("--seed", opts.seed, "RNG seed (default: RIG_SEED or 0)");
  c_sample->add_option("--replicate", replicate, "Replicate index");
  add_format(c_sample, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version -> 0, bad arguments -> 2
  }

  if (c_moments->parsed()) { params.validate(); return cmd_moments(params, opts); }
  if (c_prob->parsed())
    return cmd_prob(graph_text, params.m, params.p, complement, plus_text, minus_text,
                    prob_method, opts);
  if (c_norms->parsed()) return cmd_norms(params.m, params.p, norms_method, opts);
  if (c_exact->parsed()) { params.validate(); return cmd_exact(params, with_pmf, opts); }
  if (c_mc->parsed()) {
    params.validate();
    distance_output(params, mc_sample_distances(params, samples, opts.seed, opts.threads), opts);
    return 0;
  }
  if (c_sweep->parsed()) return cmd_sweep(curve_path, samples, opts);
  if (c_sample->parsed()) {
    params.validate();
    return cmd_sample(params, opts.seed, replicate, opts);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rig::budget_error& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
