#pragma once

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "tmpp/clustering.hpp"

namespace tmpp::test {

// Within-cluster sum of squares of the given rows.
inline double ess(const std::vector<double>& x, std::size_t dim, const std::vector<std::size_t>& members) {
  std::vector<double> mean(dim, 0.0);
  for (auto i : members)
    for (std::size_t k = 0; k < dim; ++k) mean[k] += x[i * dim + k];
  for (auto& v : mean) v /= static_cast<double>(members.size());
  double s = 0.0;
  for (auto i : members)
    for (std::size_t k = 0; k < dim; ++k) s += (x[i * dim + k] - mean[k]) * (x[i * dim + k] - mean[k]);
  return s;
}

// Ward by direct recomputation: every step scores every pair from the current
// cluster members rather than by update formula.
inline std::vector<Merge> naive_ward(const std::vector<double>& x, std::size_t dim) {
  struct Cluster {
    std::size_t id;
    std::vector<std::size_t> members;
  };
  const std::size_t n = x.size() / dim;
  std::vector<Cluster> live;
  for (std::size_t i = 0; i < n; ++i) live.push_back({i, {i}});
  std::vector<Merge> merges;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        auto both = live[i].members;
        both.insert(both.end(), live[j].members.begin(), live[j].members.end());
        const double delta = ess(x, dim, both) - ess(x, dim, live[i].members) - ess(x, dim, live[j].members);
        if (delta < best) {
          best = delta;
          bi = i;
          bj = j;
        }
      }
    }
    Cluster merged{n + step, live[bi].members};
    merged.members.insert(merged.members.end(), live[bj].members.begin(), live[bj].members.end());
    merges.push_back({std::min(live[bi].id, live[bj].id), std::max(live[bi].id, live[bj].id), best,
                      merged.members.size()});
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(bj));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(bi));
    live.push_back(merged);
  }
  return merges;
}

// Best accuracy over every relabelling of the predicted clusters.
inline double brute_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  const int s = std::max(*std::max_element(pred.begin(), pred.end()),
                         *std::max_element(truth.begin(), truth.end())) + 1;
  std::vector<int> perm(static_cast<std::size_t>(s));
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) hit += perm[static_cast<std::size_t>(pred[i])] == truth[i];
    best = std::max(best, hit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

struct PoissonFit {
  double mean = 0.0;
  double variance = 0.0;
  double chi2 = 0.0;
  double critical = 0.0;  ///< chi-square quantile at the 0.01 level
  double min_expected = 0.0;
};

// Moments and a chi-square fit of counts against Poisson(lambda). Bins are
// <= lo, each integer in (lo, hi), and >= hi.
inline PoissonFit poisson_fit(const std::vector<int>& counts, double lambda, int lo, int hi) {
  PoissonFit f;
  const double n = static_cast<double>(counts.size());
  for (int c : counts) f.mean += c;
  f.mean /= n;
  for (int c : counts) f.variance += (c - f.mean) * (c - f.mean);
  f.variance /= n - 1;

  const std::size_t bins = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> prob(bins, 0.0);
  double pk = std::exp(-lambda);
  for (int k = 0; k < hi; ++k) {
    prob[static_cast<std::size_t>(std::max(k, lo) - lo)] += pk;
    pk *= lambda / (k + 1);
  }
  prob[bins - 1] = 1.0 - std::accumulate(prob.begin(), prob.end() - 1, 0.0);
  std::vector<double> observed(bins, 0.0);
  for (int c : counts) observed[static_cast<std::size_t>(std::clamp(c, lo, hi) - lo)] += 1.0;
  f.min_expected = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < bins; ++i) {
    const double expect = prob[i] * n;
    f.min_expected = std::min(f.min_expected, expect);
    f.chi2 += (observed[i] - expect) * (observed[i] - expect) / expect;
  }
  const boost::math::chi_squared dist(static_cast<double>(bins - 1));
  f.critical = boost::math::quantile(boost::math::complement(dist, 0.01));
  return f;
}

}  // namespace tmpp::test
