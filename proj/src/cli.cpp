#include "tmpp/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "tmpp/errors.hpp"
#include "tmpp/evaluation.hpp"
#include "tmpp/hawkes.hpp"
#include "tmpp/motif_catalog.hpp"
#include "tmpp/render.hpp"
#include "tmpp/scenarios.hpp"
#include "tmpp/table_io.hpp"
#include "tmpp/temporal_graph.hpp"

namespace tmpp::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Collects the files a subcommand reads and writes so the manifest can
// record their digests.
class OutputDir {
 public:
  explicit OutputDir(const std::string& path) : dir_(path) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw IoError("cannot create output directory '" + path + "'");
  }

  std::string read_input(const std::string& path) {
    auto bytes = read_file(path);
    inputs_.push_back({{"path", path}, {"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}});
    return bytes;
  }

  void write(const std::string& name, const std::string& contents) {
    write_file((dir_ / name).string(), contents);
    outputs_.push_back({{"file", name}, {"sha256", sha256_hex(contents)}, {"bytes", contents.size()}});
  }

  void finish(const std::string& command, Json config) {
    Json m;
    m["toolkit"] = "tmpp";
    m["version"] = kVersion;
    m["command"] = command;
    m["config"] = std::move(config);
    m["inputs"] = inputs_.empty() ? Json::array() : inputs_;
    m["outputs"] = outputs_;
    write_file((dir_ / "manifest.json").string(), m.dump(2) + "\n");
  }

 private:
  fs::path dir_;
  Json inputs_ = Json::array();
  Json outputs_ = Json::array();
};

template <typename F>
std::string to_text(F&& writer) {
  std::ostringstream ss;
  writer(ss);
  return ss.str();
}

TiePolicy parse_ties(const std::string& s) {
  if (s == "seq") return TiePolicy::kSeqOrder;
  if (s == "exclude") return TiePolicy::kExcludeTies;
  throw ValidationError("--ties must be 'seq' or 'exclude'");
}

void require_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("--delta must be a positive number");
}

// Scenario selector: "1", "2" or a JSON parameter file.
BlockHawkesParams load_scenario(const std::string& which, std::size_t nodes, OutputDir& dir, Json& config) {
  if (which == "1" || which == "2") {
    config["scenario"] = std::stoi(which);
    config["nodes"] = nodes;
    return scenario_params(std::stoi(which), nodes);
  }
  const auto text = dir.read_input(which);
  std::istringstream in(text);
  config["scenario"] = which;
  return parse_params(in);
}

std::string svg_stem(const std::string& name, std::size_t index) {
  const bool plain = !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
  return plain ? name : "node" + std::to_string(index);
}

struct Options {
  std::string input;
  std::string out;
  double delta = 0.0;
  std::string ties = "seq";
  bool scc = false;
  unsigned threads = 1;
  std::uint64_t min_motifs = 1;
  bool positionless = false;
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t runs = 100;
  std::string scenario = "1";
  std::size_t nodes = 20;
  unsigned workers = 1;
  std::string centroids_file;
  std::string profiles_file;
  std::string dendrogram_file;
  std::vector<std::string> render_nodes;
  std::optional<double> scale_max;
  bool shared_scale = false;
};

int cmd_count(const Options& o, std::ostream& out) {
  const CountOptions copts{o.delta, parse_ties(o.ties), std::max(1u, o.threads)};
  require_delta(copts.delta);
  OutputDir dir(o.out);
  std::istringstream text(dir.read_input(o.input));
  auto g = parse_edge_list(text);
  const std::size_t parsed_nodes = g.node_count(), parsed_edges = g.edge_count();
  if (o.scc) {
    const auto keep = largest_scc(aggregate_static(g));
    g = filter_nodes(g, keep);
  }
  const auto counts = count_motifs(g, copts);
  dir.write("counts.csv", to_text([&](std::ostream& s) { write_counts_csv(s, counts); }));
  dir.write("motif_totals.csv", to_text([&](std::ostream& s) { write_motif_totals_csv(s, counts); }));

  out << "nodes " << g.node_count() << " edges " << g.edge_count();
  if (o.scc) out << " (largest SCC of " << parsed_nodes << " nodes, " << parsed_edges << " edges)";
  out << "\nmotif   nodes  instances\n";
  for (std::size_t m = 0; m < kMotifCount; ++m) {
    const auto motif = MotifId::from_index(m);
    std::string label = motif.display();
    label.resize(8, ' ');
    out << label << node_count(motif) << "      " << counts.motif_totals()[m] << '\n';
  }

  Json cfg;
  cfg["delta"] = copts.delta;
  cfg["ties"] = o.ties;
  cfg["scc"] = o.scc;
  cfg["nodes"] = g.node_count();
  cfg["edges"] = g.edge_count();
  dir.finish("count", std::move(cfg));
  return 0;
}

int cmd_profile(const Options& o, std::ostream& out) {
  OutputDir dir(o.out);
  std::istringstream text(dir.read_input(o.input));
  const auto counts = read_counts_csv(text);
  const auto kind = o.positionless ? ProfileKind::kPositionless : ProfileKind::kPositioned;
  const auto profiles = build_profiles(counts, kind, o.min_motifs);
  dir.write("profiles.csv", to_text([&](std::ostream& s) { write_profiles_csv(s, profiles); }));
  dir.write("dropped.csv", to_text([&](std::ostream& s) { write_dropped_csv(s, profiles); }));
  out << "profiled " << profiles.node_count() << " nodes, dropped " << profiles.dropped().size()
      << " with fewer than " << o.min_motifs << " motif instances\n";
  Json cfg;
  cfg["min_motifs"] = o.min_motifs;
  cfg["kind"] = o.positionless ? "positionless" : "positioned";
  dir.finish("profile", std::move(cfg));
  return 0;
}

int cmd_cluster(const Options& o, std::ostream& out) {
  OutputDir dir(o.out);
  std::istringstream text(dir.read_input(o.input));
  const auto profiles = read_profiles_csv(text);
  if (profiles.node_count() == 0) throw ValidationError("profile table has no rows to cluster");
  if (o.k < 1 || o.k > profiles.node_count()) {
    throw ValidationError("--k must be between 1 and the number of profiled nodes (" +
                          std::to_string(profiles.node_count()) + ")");
  }
  const auto result = cluster_profiles(profiles, o.k);
  dir.write("dendrogram.txt",
            to_text([&](std::ostream& s) { write_dendrogram(s, result.dendrogram, profiles.names()); }));
  dir.write("clusters.csv",
            to_text([&](std::ostream& s) { write_clusters_csv(s, result.clustering, profiles.names()); }));
  dir.write("centroids.csv", to_text([&](std::ostream& s) {
              write_centroids_csv(s, profiles.kind(), result.centroids, result.clustering);
            }));
  std::vector<std::size_t> size(o.k, 0);
  for (int l : result.clustering.labels) ++size[static_cast<std::size_t>(l)];
  out << "cluster  size\n";
  for (std::size_t c = 0; c < size.size(); ++c) out << c << "        " << size[c] << '\n';
  Json cfg;
  cfg["k"] = o.k;
  cfg["linkage"] = "ward";
  cfg["kind"] = profiles.kind() == ProfileKind::kPositionless ? "positionless" : "positioned";
  dir.finish("cluster", std::move(cfg));
  return 0;
}

int cmd_render(const Options& o, std::ostream& out) {
  if (o.centroids_file.empty() && o.profiles_file.empty() && o.dendrogram_file.empty()) {
    throw ValidationError("render needs --centroids, --profiles or --dendrogram");
  }
  if (o.shared_scale && o.scale_max) throw ValidationError("--shared-scale and --scale-max are exclusive");
  OutputDir dir(o.out);
  std::size_t written = 0;

  struct Item {
    std::string file, title;
    std::vector<double> values;
  };
  std::vector<Item> items;
  std::optional<ProfileKind> kind;

  if (!o.centroids_file.empty()) {
    std::istringstream text(dir.read_input(o.centroids_file));
    const auto table = read_centroids_csv(text);
    kind = table.kind;
    const std::size_t dim = dimension(table.kind);
    for (std::size_t c = 0; c < table.sizes.size(); ++c) {
      items.push_back({"centroid_" + std::to_string(c) + ".svg",
                       "Cluster " + std::to_string(c) + " centroid (" + std::to_string(table.sizes[c]) + " nodes)",
                       {table.values.begin() + static_cast<std::ptrdiff_t>(c * dim),
                        table.values.begin() + static_cast<std::ptrdiff_t>((c + 1) * dim)}});
    }
  }
  if (!o.profiles_file.empty()) {
    std::istringstream text(dir.read_input(o.profiles_file));
    const auto profiles = read_profiles_csv(text);
    if (kind && *kind != profiles.kind()) throw ValidationError("centroid and profile tables differ in kind");
    kind = profiles.kind();
    for (std::size_t i = 0; i < profiles.node_count(); ++i) {
      const auto& name = profiles.names()[i];
      if (!o.render_nodes.empty() &&
          std::find(o.render_nodes.begin(), o.render_nodes.end(), name) == o.render_nodes.end()) {
        continue;
      }
      const auto row = profiles.row(i);
      items.push_back({"profile_" + svg_stem(name, i) + ".svg", "Node " + name, {row.begin(), row.end()}});
    }
    for (const auto& name : o.render_nodes) {
      if (std::find(profiles.names().begin(), profiles.names().end(), name) == profiles.names().end()) {
        throw ValidationError("node '" + name + "' has no profile");
      }
    }
  }

  std::optional<double> anchor = o.scale_max;
  if (o.shared_scale) {
    double m = 0.0;
    for (const auto& it : items) m = std::max(m, *std::max_element(it.values.begin(), it.values.end()));
    anchor = m;
  }
  for (const auto& it : items) {
    dir.write(it.file, heatmap_svg(it.values, *kind, {it.title, anchor}));
    ++written;
  }

  if (!o.dendrogram_file.empty()) {
    std::istringstream text(dir.read_input(o.dendrogram_file));
    std::vector<std::string> names;
    const auto d = read_dendrogram(text, &names);
    if (o.k < 1 || o.k > d.leaf_count()) throw ValidationError("--k must be between 1 and the number of leaves");
    dir.write("dendrogram.svg", dendrogram_svg(d, names, o.k));
    ++written;
  }

  out << "wrote " << written << " SVG file" << (written == 1 ? "" : "s") << '\n';
  Json cfg;
  cfg["k"] = o.k;
  if (anchor) {
    cfg["scale"] = o.shared_scale ? "shared" : "fixed";
    cfg["scale_max"] = *anchor;
  } else {
    cfg["scale"] = "per-profile";
  }
  if (!o.render_nodes.empty()) cfg["nodes"] = o.render_nodes;
  dir.finish("render", std::move(cfg));
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  OutputDir dir(o.out);
  Json cfg;
  const auto params = load_scenario(o.scenario, o.nodes, dir, cfg);
  const auto net = simulate(params, o.seed);
  dir.write("edges.csv", to_text([&](std::ostream& s) { write_edge_list(s, net.graph); }));
  dir.write("labels.csv", to_text([&](std::ostream& s) { write_block_labels(s, net); }));
  dir.write("params.json", to_text([&](std::ostream& s) { write_params(s, params); }));
  out << "simulated " << net.graph.edge_count() << " edges among " << net.graph.node_count() << " nodes\n";
  cfg["seed"] = o.seed;
  cfg["branching_ratio"] = params.branching_ratio();
  dir.finish("simulate", std::move(cfg));
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out) {
  require_delta(o.delta);
  if (o.runs < 1) throw ValidationError("--runs must be at least 1");
  if (o.k < 1) throw ValidationError("--k must be at least 1");
  OutputDir dir(o.out);
  Json cfg;
  const auto params = load_scenario(o.scenario, o.nodes, dir, cfg);
  EvalOptions eopts;
  eopts.count = {o.delta, parse_ties(o.ties), 1};
  eopts.min_motifs = o.min_motifs;
  eopts.k = o.k;
  eopts.runs = o.runs;
  eopts.first_seed = o.seed;
  eopts.workers = std::max(1u, o.workers);
  const auto report = evaluate_scenario(params, eopts);
  const auto accuracy = to_text([&](std::ostream& s) { write_eval_report(s, report); });
  dir.write("accuracy.csv", accuracy);
  dir.write("runs.csv", to_text([&](std::ostream& s) { write_eval_runs(s, report); }));
  out << accuracy;
  cfg["delta"] = o.delta;
  cfg["ties"] = o.ties;
  cfg["min_motifs"] = o.min_motifs;
  cfg["k"] = o.k;
  cfg["runs"] = o.runs;
  cfg["first_seed"] = o.seed;
  dir.finish("eval", std::move(cfg));
  return 0;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  const auto text = to_text([](std::ostream& s) { write_catalog(s); });
  if (o.out.empty()) {
    out << text;
    return 0;
  }
  OutputDir dir(o.out);
  dir.write("catalog.csv", text);
  dir.finish("catalog", Json::object());
  return 0;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positioned temporal motif participation profiles", "tmpp"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto* count = app.add_subcommand("count", "Count per-node (motif, position) participation");
  count->add_option("edges", o.input, "Edge list CSV with header source,target,timestamp")->required();
  count->add_option("--delta", o.delta, "Time window: last edge at most delta after the first")->required();
  count->add_option("--ties", o.ties, "Equal timestamps: seq (input order) or exclude");
  count->add_flag("--scc", o.scc, "Restrict to the largest strongly connected component");
  count->add_option("--threads", o.threads, "Counting threads");
  count->add_option("--out", o.out, "Output directory")->required();

  auto* profile = app.add_subcommand("profile", "Normalize counts into participation profiles");
  profile->add_option("counts", o.input, "counts.csv from `count`")->required();
  profile->add_option("--min-motifs", o.min_motifs, "Drop nodes in fewer motif instances");
  profile->add_flag("--positionless", o.positionless, "Sum out positions (36 columns)");
  profile->add_option("--out", o.out, "Output directory")->required();

  auto* cluster = app.add_subcommand("cluster", "Ward clustering of profiles");
  cluster->add_option("profiles", o.input, "profiles.csv from `profile`")->required();
  cluster->add_option("--k", o.k, "Number of flat clusters")->required();
  cluster->add_option("--out", o.out, "Output directory")->required();

  auto* render = app.add_subcommand("render", "SVG heatmaps and dendrogram drawings");
  render->add_option("--centroids", o.centroids_file, "centroids.csv from `cluster`");
  render->add_option("--profiles", o.profiles_file, "profiles.csv from `profile`");
  render->add_option("--node", o.render_nodes, "Only render these nodes' profiles");
  render->add_option("--dendrogram", o.dendrogram_file, "dendrogram.txt from `cluster`");
  render->add_option("--k", o.k, "Clusters to colour in the dendrogram");
  render->add_flag("--shared-scale", o.shared_scale, "One colour scale across all heatmaps");
  render->add_option("--scale-max", o.scale_max, "Fixed value for the darkest shade");
  render->add_option("--out", o.out, "Output directory")->required();

  auto* sim = app.add_subcommand("simulate", "Simulate a block Hawkes network");
  sim->add_option("--scenario", o.scenario, "1, 2 or a JSON parameter file");
  sim->add_option("--nodes", o.nodes, "Node count for the shipped scenarios");
  sim->add_option("--seed", o.seed, "Random seed");
  sim->add_option("--out", o.out, "Output directory")->required();

  auto* eval = app.add_subcommand("eval", "Block-recovery accuracy over seeded simulations");
  eval->add_option("--scenario", o.scenario, "1, 2 or a JSON parameter file");
  eval->add_option("--nodes", o.nodes, "Node count for the shipped scenarios");
  eval->add_option("--delta", o.delta, "Counting window")->required();
  eval->add_option("--ties", o.ties, "Equal timestamps: seq or exclude");
  eval->add_option("--min-motifs", o.min_motifs, "Profile threshold");
  eval->add_option("--k", o.k, "Clusters per run");
  eval->add_option("--runs", o.runs, "Number of seeds");
  eval->add_option("--seed", o.seed, "First seed");
  eval->add_option("--workers", o.workers, "Parallel runs");
  eval->add_option("--out", o.out, "Output directory")->required();

  auto* catalog = app.add_subcommand("catalog", "List the 36 motifs and their edge patterns");
  catalog->add_option("--out", o.out, "Write catalog.csv here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every usage error maps to the validation code.
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (count->parsed()) return cmd_count(o, out);
    if (profile->parsed()) return cmd_profile(o, out);
    if (cluster->parsed()) return cmd_cluster(o, out);
    if (render->parsed()) return cmd_render(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (catalog->parsed()) return cmd_catalog(o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tmpp::cli
