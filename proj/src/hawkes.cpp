#include "tmpp/hawkes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "json.hpp"
#include "tmpp/errors.hpp"

namespace tmpp {

using nlohmann::json;

std::string_view to_string(ExcitationKind kind) {
  switch (kind) {
    case ExcitationKind::kSelf: return "self";
    case ExcitationKind::kReciprocal: return "reciprocal";
    case ExcitationKind::kSharedReceiver: return "shared-receiver";
    case ExcitationKind::kBroadcast: return "broadcast";
  }
  return "?";
}

ExcitationKind parse_excitation_kind(std::string_view text) {
  for (auto k : {ExcitationKind::kSelf, ExcitationKind::kReciprocal,
                 ExcitationKind::kSharedReceiver, ExcitationKind::kBroadcast}) {
    if (to_string(k) == text) return k;
  }
  throw ValidationError("unknown excitation kind '" + std::string(text) + "'");
}

namespace {

// Number of distinct triggering pairs per kind, as seen from one pair.
double fan_in(ExcitationKind kind, std::size_t n_nodes) {
  switch (kind) {
    case ExcitationKind::kSelf:
    case ExcitationKind::kReciprocal: return 1.0;
    case ExcitationKind::kSharedReceiver:
    case ExcitationKind::kBroadcast: return n_nodes >= 2 ? static_cast<double>(n_nodes - 2) : 0.0;
  }
  return 0.0;
}

}  // namespace

double BlockHawkesParams::branching_ratio() const {
  double worst = 0.0;
  for (std::size_t bs = 0; bs < n_blocks(); ++bs) {
    for (std::size_t br = 0; br < n_blocks(); ++br) {
      double total = 0.0;
      for (const auto& e : excitations) {
        if (e.sender_block == bs && e.receiver_block == br) total += e.alpha * fan_in(e.kind, n_nodes);
      }
      worst = std::max(worst, total);
    }
  }
  return worst;
}

void BlockHawkesParams::validate() const {
  if (n_nodes < 2) throw ValidationError("n_nodes must be at least 2");
  if (block_probs.empty()) throw ValidationError("at least one block is required");
  double psum = 0.0;
  for (double p : block_probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("block probabilities must be >= 0");
    psum += p;
  }
  if (std::abs(psum - 1.0) > 1e-9) throw ValidationError("block probabilities must sum to 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ValidationError("horizon must be positive");
  if (baseline.size() != n_blocks() * n_blocks()) {
    throw ValidationError("baseline must be an n_blocks x n_blocks matrix");
  }
  for (double mu : baseline) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw ValidationError("baseline rates must be >= 0");
  }
  for (const auto& e : excitations) {
    if (e.sender_block >= n_blocks() || e.receiver_block >= n_blocks()) {
      throw ValidationError("excitation refers to a missing block");
    }
    if (!(e.alpha >= 0.0) || !std::isfinite(e.alpha)) throw ValidationError("alpha must be >= 0");
    if (!(e.beta > 0.0) || !std::isfinite(e.beta)) throw ValidationError("beta must be > 0");
  }
  const double ratio = branching_ratio();
  if (ratio >= 1.0) {
    throw ValidationError("unstable parameters: branching ratio " + std::to_string(ratio) + " >= 1");
  }
}

BlockHawkesParams parse_params(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario file is not valid JSON: ") + e.what());
  }
  BlockHawkesParams p;
  try {
    p.n_nodes = j.at("n_nodes").get<std::size_t>();
    p.horizon = j.at("horizon").get<double>();
    p.block_probs = j.at("block_probs").get<std::vector<double>>();
    const auto rows = j.at("baseline").get<std::vector<std::vector<double>>>();
    p.baseline.clear();
    for (const auto& r : rows) {
      if (r.size() != rows.size()) throw ValidationError("baseline must be square");
      p.baseline.insert(p.baseline.end(), r.begin(), r.end());
    }
    p.excitations.clear();
    for (const auto& e : j.value("excitations", json::array())) {
      p.excitations.push_back({e.at("sender_block").get<std::size_t>(),
                               e.at("receiver_block").get<std::size_t>(),
                               parse_excitation_kind(e.at("kind").get<std::string>()),
                               e.at("alpha").get<double>(), e.at("beta").get<double>()});
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario file: ") + e.what());
  }
  p.validate();
  return p;
}

BlockHawkesParams read_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_params(in);
}

void write_params(std::ostream& out, const BlockHawkesParams& p) {
  json j;
  j["n_nodes"] = p.n_nodes;
  j["horizon"] = p.horizon;
  j["block_probs"] = p.block_probs;
  json rows = json::array();
  for (std::size_t b = 0; b < p.n_blocks(); ++b) {
    rows.push_back(std::vector<double>(p.baseline.begin() + static_cast<std::ptrdiff_t>(b * p.n_blocks()),
                                       p.baseline.begin() + static_cast<std::ptrdiff_t>((b + 1) * p.n_blocks())));
  }
  j["baseline"] = rows;
  json ex = json::array();
  for (const auto& e : p.excitations) {
    ex.push_back({{"sender_block", e.sender_block},
                  {"receiver_block", e.receiver_block},
                  {"kind", std::string(to_string(e.kind))},
                  {"alpha", e.alpha},
                  {"beta", e.beta}});
  }
  j["excitations"] = ex;
  out << j.dump(2) << '\n';
}

namespace {

bool applies(ExcitationKind kind, NodeId u, NodeId v, const HawkesEvent& e) {
  switch (kind) {
    case ExcitationKind::kSelf: return e.source == u && e.target == v;
    case ExcitationKind::kReciprocal: return e.source == v && e.target == u;
    case ExcitationKind::kSharedReceiver: return e.target == v && e.source != u;
    case ExcitationKind::kBroadcast: return e.source == u && e.target != v;
  }
  return false;
}

}  // namespace

double intensity(const BlockHawkesParams& params, std::span<const int> blocks,
                 std::span<const HawkesEvent> history, NodeId u, NodeId v, double t) {
  const auto bu = static_cast<std::size_t>(blocks[u]);
  const auto bv = static_cast<std::size_t>(blocks[v]);
  double lambda = params.baseline_rate(bu, bv);
  for (const auto& ex : params.excitations) {
    if (ex.sender_block != bu || ex.receiver_block != bv) continue;
    for (const auto& e : history) {
      if (e.time <= t && applies(ex.kind, u, v, e)) {
        lambda += ex.alpha * ex.beta * std::exp(-ex.beta * (t - e.time));
      }
    }
  }
  return lambda;
}

std::string simulated_node_name(std::size_t i, std::size_t n_nodes) {
  const std::size_t width = std::to_string(n_nodes > 0 ? n_nodes - 1 : 0).size();
  std::string digits = std::to_string(i);
  return "n" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

namespace {

// Uniform and exponential draws built directly on mt19937_64 output so the
// stream is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::mt19937_64 engine_;
};

// Incremental excitation state: one decaying sum per (pair, excitation)
// combination that applies to the pair's block pair.
class ExcitationState {
 public:
  ExcitationState(const BlockHawkesParams& params, std::span<const int> blocks)
      : params_(params), n_(params.n_nodes), offset_(n_ * n_ + 1, 0), baseline_(n_ * n_, 0.0) {
    for (NodeId u = 0; u < n_; ++u) {
      for (NodeId v = 0; v < n_; ++v) {
        const std::size_t p = pair(u, v);
        offset_[p + 1] = offset_[p];
        if (u == v) continue;
        const auto bu = static_cast<std::size_t>(blocks[u]);
        const auto bv = static_cast<std::size_t>(blocks[v]);
        baseline_[p] = params.baseline_rate(bu, bv);
        for (std::size_t x = 0; x < params.excitations.size(); ++x) {
          const auto& ex = params.excitations[x];
          if (ex.sender_block == bu && ex.receiver_block == bv) {
            entry_.push_back(x);
            ++offset_[p + 1];
          }
        }
      }
    }
    value_.assign(entry_.size(), 0.0);
  }

  void decay(double dt) {
    if (dt <= 0.0) return;
    std::vector<double> factor(params_.excitations.size());
    for (std::size_t x = 0; x < factor.size(); ++x) factor[x] = std::exp(-params_.excitations[x].beta * dt);
    for (std::size_t s = 0; s < value_.size(); ++s) value_[s] *= factor[entry_[s]];
  }

  [[nodiscard]] double pair_intensity(std::size_t p) const {
    double lambda = baseline_[p];
    for (std::size_t s = offset_[p]; s < offset_[p + 1]; ++s) lambda += value_[s];
    return lambda;
  }

  [[nodiscard]] double total() const {
    double sum = 0.0;
    for (std::size_t p = 0; p < n_ * n_; ++p) sum += pair_intensity(p);
    return sum;
  }

  /// Adds the jumps caused by an event on (x, y).
  void excite(NodeId x, NodeId y) {
    bump(x, y, ExcitationKind::kSelf);
    bump(y, x, ExcitationKind::kReciprocal);
    for (NodeId u = 0; u < n_; ++u) {
      if (u != x && u != y) bump(u, y, ExcitationKind::kSharedReceiver);
    }
    for (NodeId v = 0; v < n_; ++v) {
      if (v != x && v != y) bump(x, v, ExcitationKind::kBroadcast);
    }
  }

  [[nodiscard]] std::size_t pair(NodeId u, NodeId v) const { return static_cast<std::size_t>(u) * n_ + v; }
  [[nodiscard]] std::size_t pair_count() const { return n_ * n_; }

 private:
  void bump(NodeId u, NodeId v, ExcitationKind kind) {
    const std::size_t p = pair(u, v);
    for (std::size_t s = offset_[p]; s < offset_[p + 1]; ++s) {
      const auto& ex = params_.excitations[entry_[s]];
      if (ex.kind == kind) value_[s] += ex.alpha * ex.beta;
    }
  }

  const BlockHawkesParams& params_;
  std::size_t n_;
  std::vector<std::size_t> offset_;
  std::vector<double> baseline_;
  std::vector<std::size_t> entry_;
  std::vector<double> value_;
};

SimulatedNetwork run_thinning(const BlockHawkesParams& params, std::vector<int> blocks, Rng& rng) {
  const std::size_t n = params.n_nodes;
  ExcitationState state(params, blocks);
  std::vector<TemporalEdge> edges;

  double t = 0.0;
  double bound = state.total();
  while (bound > 0.0) {
    const double candidate = t + rng.exponential(bound);
    if (candidate > params.horizon) break;
    state.decay(candidate - t);
    t = candidate;
    const double total = state.total();
    // Between events every kernel decays, so the intensity at the last
    // event (or rejection) bounds it from above.
    if (total > bound * (1.0 + 1e-9)) throw std::logic_error("thinning bound violated");
    if (rng.uniform() * bound <= total) {
      double target = rng.uniform() * total;
      std::size_t chosen = state.pair_count();
      for (std::size_t p = 0; p < state.pair_count(); ++p) {
        const double lambda = state.pair_intensity(p);
        if (lambda <= 0.0) continue;
        chosen = p;
        if (target < lambda) break;
        target -= lambda;
      }
      const auto u = static_cast<NodeId>(chosen / n);
      const auto v = static_cast<NodeId>(chosen % n);
      edges.push_back({u, v, t, edges.size()});
      state.excite(u, v);
      bound = state.total();
    } else {
      bound = total;
    }
  }

  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(simulated_node_name(i, n));
  return {TemporalGraph(std::move(names), std::move(edges)), std::move(blocks)};
}

}  // namespace

SimulatedNetwork simulate_with_blocks(const BlockHawkesParams& params, std::vector<int> blocks,
                                      std::uint64_t seed) {
  params.validate();
  if (blocks.size() != params.n_nodes) throw ValidationError("one block label per node required");
  for (int b : blocks) {
    if (b < 0 || static_cast<std::size_t>(b) >= params.n_blocks()) {
      throw ValidationError("block label out of range");
    }
  }
  Rng rng(seed);
  return run_thinning(params, std::move(blocks), rng);
}

SimulatedNetwork simulate(const BlockHawkesParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  std::vector<int> blocks(params.n_nodes, 0);
  for (auto& b : blocks) {
    double u = rng.uniform();
    std::size_t k = 0;
    while (k + 1 < params.n_blocks() && u >= params.block_probs[k]) {
      u -= params.block_probs[k];
      ++k;
    }
    b = static_cast<int>(k);
  }
  return run_thinning(params, std::move(blocks), rng);
}

void write_block_labels(std::ostream& out, const SimulatedNetwork& net) {
  out << "node,block\n";
  for (NodeId v = 0; v < net.graph.node_count(); ++v) out << net.graph.name(v) << ',' << net.blocks[v] << '\n';
}

}  // namespace tmpp
