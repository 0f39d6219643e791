#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cfs/adjacency.hpp"
#include "cfs/factorization.hpp"
#include "cfs/metrics.hpp"
#include "cfs/partition.hpp"

namespace cfs {

/// Bumped whenever a report field changes meaning; every JSON report carries
/// it as "schema_version".
inline constexpr int kReportSchemaVersion = 1;

/// One detection job: model choice, solver knobs, restart policy.
struct DetectOptions {
  std::string model = "cfs";  // nmf | snmf | gnmf | cfs
  int k = 2;
  double mu = 0.03125;
  double lambda = 10.0;
  double tol = 1e-6;
  int max_iters = 500;
  double eps_guard = 1e-12;
  std::uint64_t seed = 0;  // restart r uses seed + r
  int restarts = 10;
  int workers = 1;
};

/// Maps the user-facing model name onto a solver configuration. gnmf becomes
/// the cfs rule with mu pinned to zero; nmf and snmf drop both regularizer
/// weights. Throws DomainError on an unknown name.
SolverConfig resolve_solver_config(const DetectOptions& options);

struct RestartResult {
  std::uint64_t seed = 0;
  double modularity = 0.0;
  std::optional<double> nmi;  // only with ground truth
  std::optional<double> ari;
  double asymmetry = 0.0;
  int iterations = 0;
  bool converged = false;
  double kkt_residual = 0.0;
  double wall_seconds = 0.0;
};

struct RunReport {
  std::string model;    // requested name
  SolverConfig config;  // effective solver configuration
  int restarts = 0;
  int workers = 0;
  int nodes = 0;
  std::int64_t stored_entries = 0;
  std::vector<RestartResult> runs;
  std::uint64_t best_seed = 0;  // highest modularity, ties to the lowest seed
  std::vector<double> best_objective_trace;
};

struct DetectOutcome {
  RunReport report;
  Partition best_partition;
};

/// Runs `restarts` seeded solves (in parallel when workers > 1; results are
/// identical for every worker count), scores each against modularity and the
/// optional ground truth, and keeps the best-modularity restart's partition
/// and objective trace.
DetectOutcome run_detect(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                         const std::optional<GroundTruth>& truth,
                         const DetectOptions& options);

/// Two-phase hyperparameter sweep driven by modularity alone: lambda over its
/// grid with mu held at fixed_mu, then mu over its grid at the winning
/// lambda.
struct SweepGrid {
  std::vector<double> lambda_values = {0.0, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0};
  std::vector<double> mu_values = {0.0009765625, 0.00390625, 0.015625,
                                   0.0625,       0.25,       1.0,
                                   2.0};  // 2^-10 .. 2^1
  double fixed_mu = 0.00390625;           // 2^-8, held during the lambda phase
};

struct SweepPoint {
  double value = 0.0;
  double mean_modularity = 0.0;
  double std_modularity = 0.0;
};

struct SweepReport {
  DetectOptions base;
  SweepGrid grid;
  std::vector<SweepPoint> lambda_phase;
  std::vector<SweepPoint> mu_phase;
  double best_lambda = 0.0;  // argmax mean modularity, first grid point wins ties
  double best_mu = 0.0;
};

/// Only the cfs model sweeps; any other model raises DomainError.
SweepReport run_sweep(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                      const DetectOptions& base, const SweepGrid& grid);

/// A named dataset for model comparison; pointers stay owned by the caller.
struct CompareDataset {
  std::string name;
  const AdjacencyMatrix* graph = nullptr;
  const LaplacianPair* lap = nullptr;
  const GroundTruth* truth = nullptr;
};

struct CompareReport {
  ScoreTable nmi_scores;  // percent
  std::vector<double> nmi_ranks;
  std::optional<ScoreTable> ari_scores;
  std::optional<std::vector<double>> ari_ranks;
};

/// Scores every model on every dataset (mean NMI% / ARI% over restarts) and
/// applies Friedman ranking to the resulting tables.
CompareReport run_compare(const std::vector<CompareDataset>& datasets,
                          const std::vector<std::string>& models,
                          const DetectOptions& base);

/// Ranks an externally supplied score matrix without running any model.
CompareReport rank_score_table(const ScoreTable& table);

/// Tab-separated score matrix: a header line "<title> <model>..." followed by
/// one "<dataset> <score>..." line per dataset. '#' lines are comments.
ScoreTable parse_score_table(std::istream& in);
ScoreTable load_score_table(const std::string& path);

/// Mean and sample standard deviation (n-1; zero for a single value).
struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;
};
Aggregate aggregate(const std::vector<double>& values);

// ---- report emission ------------------------------------------------------
// JSON layouts are documented in the README; numbers round-trip exactly and
// key order is fixed, so identical runs serialize to identical bytes (wall
// times aside).

void write_detect_report(std::ostream& out, const DetectOutcome& outcome);
/// One "node_label<TAB>community_id" line per node in dense index order.
void write_assignments(std::ostream& out, const AdjacencyMatrix& graph,
                       const Partition& partition);
void write_sweep_report(std::ostream& out, const SweepReport& report);
/// Plot-ready table: value, mean_modularity, std_modularity; lambda phase
/// rows first, then mu phase rows, section-labelled with '#' comments.
void write_sweep_table(std::ostream& out, const SweepReport& report);
void write_compare_report(std::ostream& out, const CompareReport& report);

}  // namespace cfs
