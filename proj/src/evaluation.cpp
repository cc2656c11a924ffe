#include "scld/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace scld {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent per-cell seed so sweep cells can run in any order.
std::uint64_t cell_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return splitmix64(base ^ splitmix64(a * 0x51ed270b0903cbb5ULL + 1) ^
                    splitmix64(b * 0x9e6c63d0876a9a41ULL + 11));
}

int sweep_thread_count(std::size_t cells) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SCLD_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) hw = static_cast<unsigned>(v);
  }
  return static_cast<int>(std::min<std::size_t>(hw, std::max<std::size_t>(cells, 1)));
}

// Static slot assignment; results land in caller-owned storage, so the
// aggregate is independent of scheduling.
template <class Fn>
void parallel_cells(std::size_t cells, Fn&& fn) {
  const int threads = sweep_thread_count(cells);
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < cells; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<int> min_cost_assignment(const DenseMatrix& cost) {
  const Eigen::Index n = cost.rows();
  if (cost.cols() != n) {
    throw InvalidArgument("min_cost_assignment: cost matrix must be square");
  }
  if (n == 0) return {};

  // Shortest-augmenting-path formulation with 1-based sentinels.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (Eigen::Index i = 1; i <= n; ++i) {
    match[0] = static_cast<int>(i);
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= n; ++j) assignment[match[j] - 1] = j - 1;
  return assignment;
}

ErrorReport clustering_error(const std::vector<int>& predicted,
                             const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) {
    throw DimensionMismatch("clustering_error: label vectors differ in length");
  }
  if (predicted.empty()) {
    throw InvalidArgument("clustering_error: empty label vectors");
  }
  int k = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] < 0 || truth[i] < 0) {
      throw InvalidArgument("clustering_error: labels must be nonnegative");
    }
    k = std::max({k, predicted[i] + 1, truth[i] + 1});
  }

  ErrorReport report;
  report.confusion = Eigen::MatrixXi::Zero(k, k);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    report.confusion(truth[i], predicted[i]) += 1;
  }

  // Best bijection maximizes the matched count.
  const std::vector<int> rows =
      min_cost_assignment(-report.confusion.cast<double>());
  report.matched_permutation.assign(k, 0);
  long matched = 0;
  for (int t = 0; t < k; ++t) {
    report.matched_permutation[rows[t]] = t;  // predicted -> truth
    matched += report.confusion(t, rows[t]);
  }
  report.error_rate =
      1.0 - static_cast<double>(matched) / static_cast<double>(predicted.size());
  return report;
}

ClusteringResult run_clustering(const DenseMatrix& x, int k,
                                const SolverConfig& solver,
                                const ClusterParams& params) {
  const SolverResult rep = solve(x, solver);
  const SpectralDecomposition skinny = skinny_svd(rep.z_star, params.rank_tol);
  const AffinityMatrix graph = build_affinity(skinny, params.alpha, params.side);
  return spectral_cluster(graph, k, params.seed);
}

std::vector<CorruptionSweepRow> corruption_sweep(
    const SyntheticSpec& spec, const std::vector<double>& fractions,
    int trials, const SolverConfig& solver, const ClusterParams& params) {
  if (trials < 1) throw InvalidArgument("corruption_sweep: trials must be >= 1");
  for (double f : fractions) {
    if (!(f >= 0.0) || !(f <= 1.0)) {
      throw InvalidArgument("corruption_sweep: fractions must lie in [0, 1]");
    }
  }

  const std::size_t cells = fractions.size() * static_cast<std::size_t>(trials);
  std::vector<double> errors(cells, 0.0);
  std::vector<std::string> failures(cells);

  parallel_cells(cells, [&](std::size_t cell) {
    const std::size_t fi = cell / trials;
    const int trial = static_cast<int>(cell % trials);
    try {
      SyntheticSpec trial_spec = spec;
      trial_spec.corruption_fraction = fractions[fi];
      trial_spec.seed = cell_seed(spec.seed, fi, static_cast<std::uint64_t>(trial));
      const LabeledDataset data = generate(trial_spec);

      ClusterParams trial_params = params;
      trial_params.seed = cell_seed(params.seed + 0x5eedULL, fi,
                                    static_cast<std::uint64_t>(trial));
      const ClusteringResult labels =
          run_clustering(data.x, spec.num_subspaces, solver, trial_params);
      errors[cell] = clustering_error(labels.labels, data.labels).error_rate;
    } catch (const std::exception& e) {
      failures[cell] = e.what();
    }
  });

  for (const auto& f : failures) {
    if (!f.empty()) throw NumericalError("corruption_sweep: cell failed: " + f);
  }

  std::vector<CorruptionSweepRow> table;
  table.reserve(fractions.size());
  for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
    double mean = 0.0;
    for (int t = 0; t < trials; ++t) mean += errors[fi * trials + t];
    mean /= trials;
    double var = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double d = errors[fi * trials + t] - mean;
      var += d * d;
    }
    var /= trials;
    table.push_back({fractions[fi], mean, std::sqrt(var), trials});
  }
  return table;
}

std::vector<RhoSweepRow> rho_sweep(const LabeledDataset& dataset,
                                   const std::vector<double>& rhos, int k,
                                   const SolverConfig& solver,
                                   const ClusterParams& params) {
  for (double r : rhos) {
    if (!(r > 0.0)) throw InvalidArgument("rho_sweep: rhos must be positive");
  }
  std::vector<RhoSweepRow> table(rhos.size());
  std::vector<std::string> failures(rhos.size());
  parallel_cells(rhos.size(), [&](std::size_t i) {
    try {
      SolverConfig cfg = solver;
      cfg.rho = rhos[i];
      const ClusteringResult labels =
          run_clustering(dataset.x, k, cfg, params);
      table[i] = {rhos[i],
                  clustering_error(labels.labels, dataset.labels).error_rate};
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (const auto& f : failures) {
    if (!f.empty()) throw NumericalError("rho_sweep: cell failed: " + f);
  }
  return table;
}

}  // namespace scld
