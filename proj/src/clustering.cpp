#include "tmpp/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "tmpp/errors.hpp"

namespace tmpp {

namespace {

// Ward heights are monotone in exact arithmetic; allow for rounding only.
bool height_drop(double prev, double next) {
  return next < prev - 1e-12 * std::max(1.0, std::abs(prev));
}

}  // namespace

Dendrogram::Dendrogram(std::size_t leaf_count, std::vector<Merge> merges)
    : leaves_(leaf_count), merges_(std::move(merges)) {
  if (leaves_ == 0) throw ValidationError("dendrogram needs at least one leaf");
  if (merges_.size() != leaves_ - 1) {
    throw ValidationError("dendrogram over " + std::to_string(leaves_) + " leaves needs " +
                          std::to_string(leaves_ - 1) + " merges, got " +
                          std::to_string(merges_.size()));
  }
  std::vector<std::size_t> size(2 * leaves_ - 1, 0);
  std::vector<bool> consumed(2 * leaves_ - 1, false);
  std::fill(size.begin(), size.begin() + static_cast<std::ptrdiff_t>(leaves_), 1);
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    const auto& m = merges_[i];
    const std::size_t id = leaves_ + i;
    if (m.left >= id || m.right >= id || m.left >= m.right) {
      throw ValidationError("merge " + std::to_string(i) + " has invalid child ids");
    }
    if (consumed[m.left] || consumed[m.right]) {
      throw ValidationError("merge " + std::to_string(i) + " reuses a cluster");
    }
    if (!(m.height >= 0.0) || !std::isfinite(m.height)) {
      throw ValidationError("merge " + std::to_string(i) + " has invalid height");
    }
    if (i > 0 && height_drop(merges_[i - 1].height, m.height)) {
      throw ValidationError("merge heights decrease at merge " + std::to_string(i));
    }
    if (m.size != size[m.left] + size[m.right]) {
      throw ValidationError("merge " + std::to_string(i) + " has inconsistent size");
    }
    consumed[m.left] = consumed[m.right] = true;
    size[id] = m.size;
  }
}

std::vector<std::size_t> Dendrogram::leaf_order() const {
  std::vector<std::size_t> order;
  order.reserve(leaves_);
  std::vector<std::size_t> stack{2 * leaves_ - 2};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    if (id < leaves_) {
      order.push_back(id);
      continue;
    }
    const auto& m = merges_[id - leaves_];
    stack.push_back(m.right);
    stack.push_back(m.left);
  }
  return order;
}

Dendrogram ward_linkage(std::span<const double> points, std::size_t dim) {
  if (dim == 0 || points.size() % dim != 0) throw ValidationError("point matrix shape mismatch");
  const std::size_t n = points.size() / dim;
  if (n == 0) throw ValidationError("ward linkage needs at least one point");
  if (n == 1) return Dendrogram(1, {});

  // dist[i*n+j] holds the Ward merge cost between active slots i and j.
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = points[i * dim + d] - points[j * dim + d];
        sq += diff * diff;
      }
      dist[i * n + j] = dist[j * n + i] = 0.5 * sq;
    }
  }
  std::vector<std::size_t> id(n), size(n, 1);
  std::iota(id.begin(), id.end(), 0);
  std::vector<bool> active(n, true);

  std::vector<Merge> merges;
  merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best_ids{SIZE_MAX, SIZE_MAX};
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const double d = dist[i * n + j];
        const std::pair<std::size_t, std::size_t> ids = std::minmax(id[i], id[j]);
        if (d < best || (d == best && ids < best_ids)) {
          best = d;
          best_ids = ids;
          bi = i;
          bj = j;
        }
      }
    }
    const std::size_t ni = size[bi], nj = size[bj];
    merges.push_back({best_ids.first, best_ids.second, best, ni + nj});

    // Lance-Williams update into slot bi; slot bj retires.
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double nk = static_cast<double>(size[k]);
      const double updated = ((static_cast<double>(ni) + nk) * dist[k * n + bi] +
                              (static_cast<double>(nj) + nk) * dist[k * n + bj] - nk * best) /
                             (static_cast<double>(ni + nj) + nk);
      dist[k * n + bi] = dist[bi * n + k] = std::max(0.0, updated);
    }
    active[bj] = false;
    size[bi] = ni + nj;
    id[bi] = n + step;
  }
  return Dendrogram(n, std::move(merges));
}

Dendrogram ward_linkage(const ProfileMatrix& profiles) {
  return ward_linkage(profiles.values(), profiles.dim());
}

FlatClustering cut(const Dendrogram& d, std::size_t k) {
  const std::size_t n = d.leaf_count();
  if (k < 1 || k > n) {
    throw ValidationError("cluster count " + std::to_string(k) + " out of range 1.." + std::to_string(n));
  }
  // Apply the first n-k merges; every leaf then belongs to one surviving root.
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n - k; ++i) {
    const auto& m = d.merges()[i];
    parent[m.left] = parent[m.right] = n + i;
  }
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  FlatClustering out;
  out.k = static_cast<int>(k);
  out.labels.assign(n, -1);
  std::map<std::size_t, int> number;
  for (std::size_t leaf : d.leaf_order()) {
    const auto [it, fresh] = number.emplace(root(leaf), static_cast<int>(number.size()));
    out.labels[leaf] = it->second;
  }
  return out;
}

std::vector<double> centroids(std::span<const double> points, std::size_t dim,
                              const FlatClustering& clustering) {
  if (dim == 0 || points.size() != clustering.labels.size() * dim) {
    throw ValidationError("clustering does not cover the profile rows");
  }
  const auto k = static_cast<std::size_t>(clustering.k);
  std::vector<double> sum(k * dim, 0.0);
  std::vector<std::size_t> members(k, 0);
  for (std::size_t i = 0; i < clustering.labels.size(); ++i) {
    const int c = clustering.labels[i];
    if (c < 0 || static_cast<std::size_t>(c) >= k) throw ValidationError("cluster label out of range");
    ++members[static_cast<std::size_t>(c)];
    for (std::size_t d = 0; d < dim; ++d) sum[static_cast<std::size_t>(c) * dim + d] += points[i * dim + d];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (members[c] == 0) throw ValidationError("cluster " + std::to_string(c) + " is empty");
    for (std::size_t d = 0; d < dim; ++d) sum[c * dim + d] /= static_cast<double>(members[c]);
  }
  return sum;
}

std::vector<std::size_t> max_weight_assignment(std::span<const double> weights, std::size_t n) {
  if (weights.size() != n * n) throw ValidationError("assignment matrix must be square");
  // Hungarian algorithm (potentials form) minimizing -weight; 1-based inner arrays.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -weights[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) assignment[p[j] - 1] = j - 1;
  }
  return assignment;
}

double permutation_accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw ValidationError("predicted and true labels cover different node counts");
  }
  if (predicted.empty()) throw ValidationError("no labels to score");

  auto densify = [](std::span<const int> labels) {
    std::map<int, std::size_t> dense;
    for (int l : labels) dense.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [label, idx] : dense) idx = next++;
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (int l : labels) out.push_back(dense[l]);
    return std::pair{out, dense.size()};
  };
  const auto [pred, np] = densify(predicted);
  const auto [true_, nt] = densify(truth);
  const std::size_t s = std::max(np, nt);

  std::vector<double> table(s * s, 0.0);
  for (std::size_t i = 0; i < pred.size(); ++i) table[pred[i] * s + true_[i]] += 1.0;

  double best = 0.0;
  if (s <= 8) {
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double hit = 0.0;
      for (std::size_t r = 0; r < s; ++r) hit += table[r * s + perm[r]];
      best = std::max(best, hit);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    const auto assign = max_weight_assignment(table, s);
    for (std::size_t r = 0; r < s; ++r) best += table[r * s + assign[r]];
  }
  return best / static_cast<double>(predicted.size());
}

}  // namespace tmpp
