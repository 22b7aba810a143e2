#include "tmpp/evaluation.hpp"

#include <cmath>
#include <ostream>
#include <thread>

#include "tmpp/errors.hpp"
#include "tmpp/table_io.hpp"

namespace tmpp {

ClusterResult cluster_profiles(const ProfileMatrix& profiles, std::size_t k) {
  const std::size_t n = profiles.node_count();
  if (n == 0) throw ValidationError("no profiled nodes to cluster");
  if (k < 1) throw ValidationError("k must be at least 1");
  ClusterResult out;
  if (n == 1) {
    out.dendrogram = Dendrogram(1, {});
    out.clustering = {{0}, 1};
  } else {
    out.dendrogram = ward_linkage(profiles);
    out.clustering = cut(out.dendrogram, std::min(k, n));
  }
  out.centroids = centroids(profiles.values(), profiles.dim(), out.clustering);
  return out;
}

std::optional<double> block_accuracy(const ProfileMatrix& profiles, const TemporalGraph& graph,
                                     std::span<const int> blocks, std::size_t k) {
  if (profiles.node_count() == 0) return std::nullopt;
  const auto result = cluster_profiles(profiles, k);
  std::vector<int> truth;
  truth.reserve(profiles.node_count());
  for (const auto& name : profiles.names()) {
    const auto id = graph.find(name);
    if (!id) throw ValidationError("profiled node '" + name + "' is not in the graph");
    truth.push_back(blocks[*id]);
  }
  return permutation_accuracy(result.clustering.labels, truth);
}

RunOutcome evaluate_run(const BlockHawkesParams& params, const EvalOptions& opts, std::uint64_t seed) {
  const auto net = simulate(params, seed);
  const auto counts = count_motifs(net.graph, opts.count);
  RunOutcome out;
  out.seed = seed;
  out.edges = net.graph.edge_count();
  const auto positioned = build_positioned(counts, opts.min_motifs);
  const auto positionless = build_positionless(counts, opts.min_motifs);
  out.profiled = positioned.node_count();
  out.positioned = block_accuracy(positioned, net.graph, net.blocks, opts.k);
  out.positionless = block_accuracy(positionless, net.graph, net.blocks, opts.k);
  return out;
}

MethodSummary summarize(std::span<const std::optional<double>> values) {
  MethodSummary s;
  double sum = 0.0;
  for (const auto& v : values) {
    if (!v) continue;
    sum += *v;
    ++s.scored_runs;
  }
  if (s.scored_runs == 0) return s;
  s.mean = sum / static_cast<double>(s.scored_runs);
  if (s.scored_runs >= 2) {
    double ss = 0.0;
    for (const auto& v : values) {
      if (v) ss += (*v - s.mean) * (*v - s.mean);
    }
    const double var = ss / static_cast<double>(s.scored_runs - 1);
    s.std_error = std::sqrt(var / static_cast<double>(s.scored_runs));
  }
  return s;
}

EvalReport evaluate_scenario(const BlockHawkesParams& params, const EvalOptions& opts) {
  params.validate();
  EvalReport report;
  report.runs.resize(opts.runs);
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(opts.runs)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < opts.runs; r += workers) {
          report.runs[r] = evaluate_run(params, opts, opts.first_seed + r);
        }
      });
    }
  }
  std::vector<std::optional<double>> pos, less;
  for (const auto& r : report.runs) {
    pos.push_back(r.positioned);
    less.push_back(r.positionless);
  }
  report.positioned = summarize(pos);
  report.positionless = summarize(less);
  return report;
}

void write_eval_report(std::ostream& out, const EvalReport& report) {
  out << "method,mean,std_error,runs\n";
  auto row = [&](const char* name, const MethodSummary& s) {
    out << name << ',' << format_real(s.mean) << ','
        << (s.std_error ? format_real(*s.std_error) : std::string("NA")) << ',' << s.scored_runs << '\n';
  };
  row("positioned", report.positioned);
  row("positionless", report.positionless);
}

void write_eval_runs(std::ostream& out, const EvalReport& report) {
  out << "seed,edges,profiled,positioned,positionless\n";
  auto cell = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string("NA"); };
  for (const auto& r : report.runs) {
    out << r.seed << ',' << r.edges << ',' << r.profiled << ',' << cell(r.positioned) << ','
        << cell(r.positionless) << '\n';
  }
}

}  // namespace tmpp
