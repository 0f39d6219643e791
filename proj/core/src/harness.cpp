#include "cfs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "cfs/errors.hpp"
#include "format.hpp"

namespace cfs {
namespace {

using ordered_json = nlohmann::ordered_json;
using detail::format_double;

// Runs fn(0..jobs-1) on up to `workers` threads. Job indices determine where
// results land, so the outcome does not depend on scheduling; the
// lowest-index exception wins.
void parallel_for(int jobs, int workers, const std::function<void(int)>& fn) {
  if (jobs <= 0) return;
  const int threads = std::min(std::max(workers, 1), jobs);
  if (threads == 1) {
    for (int i = 0; i < jobs; ++i) fn(i);
    return;
  }

  std::vector<std::exception_ptr> failures(jobs);
  std::atomic<int> next{0};
  auto body = [&] {
    for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  for (auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

ordered_json to_json(const Aggregate& a) {
  return ordered_json{{"mean", a.mean}, {"std", a.stddev}};
}

ordered_json restart_aggregates(const std::vector<RestartResult>& runs) {
  auto collect = [&](auto&& get) {
    std::vector<double> values;
    values.reserve(runs.size());
    for (const auto& r : runs) values.push_back(get(r));
    return aggregate(values);
  };

  ordered_json agg;
  agg["modularity"] = to_json(collect([](const auto& r) { return r.modularity; }));
  if (!runs.empty() && runs.front().nmi) {
    agg["nmi"] = to_json(collect([](const auto& r) { return *r.nmi; }));
    agg["ari"] = to_json(collect([](const auto& r) { return *r.ari; }));
  }
  agg["asymmetry"] = to_json(collect([](const auto& r) { return r.asymmetry; }));
  agg["iterations"] =
      to_json(collect([](const auto& r) { return double(r.iterations); }));
  agg["kkt_residual"] =
      to_json(collect([](const auto& r) { return r.kkt_residual; }));
  agg["wall_seconds"] =
      to_json(collect([](const auto& r) { return r.wall_seconds; }));
  return agg;
}

ordered_json score_table_json(const ScoreTable& t) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < t.values.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < t.values.cols(); ++c)
      row.push_back(t.values(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SolverConfig resolve_solver_config(const DetectOptions& options) {
  SolverConfig cfg;
  cfg.k = options.k;
  cfg.tol = options.tol;
  cfg.max_iters = options.max_iters;
  cfg.eps_guard = options.eps_guard;
  cfg.seed = options.seed;

  if (options.model == "nmf") {
    cfg.model = Model::nmf;
    cfg.mu = 0.0;
    cfg.lambda = 0.0;
  } else if (options.model == "snmf") {
    cfg.model = Model::snmf;
    cfg.mu = 0.0;
    cfg.lambda = 0.0;
  } else if (options.model == "gnmf") {
    cfg.model = Model::cfs;
    cfg.mu = 0.0;  // the graph-regularized rule is cfs without the symmetry term
    cfg.lambda = options.lambda;
  } else if (options.model == "cfs") {
    cfg.model = Model::cfs;
    cfg.mu = options.mu;
    cfg.lambda = options.lambda;
  } else {
    throw DomainError("unknown model '" + options.model +
                      "' (expected nmf, snmf, gnmf or cfs)");
  }
  cfg.validate();
  return cfg;
}

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  if (values.empty()) return a;
  for (double v : values) a.mean += v;
  a.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return a;
}

DetectOutcome run_detect(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                         const std::optional<GroundTruth>& truth,
                         const DetectOptions& options) {
  if (options.restarts < 1) throw ContractError("restarts must be >= 1");
  if (options.workers < 1) throw ContractError("workers must be >= 1");
  const SolverConfig base = resolve_solver_config(options);
  if (truth && static_cast<int>(truth->labels.size()) != graph.node_count())
    throw ContractError("ground truth does not cover the graph");

  const std::optional<Partition> reference =
      truth ? std::optional<Partition>(to_partition(*truth)) : std::nullopt;

  std::vector<RestartResult> runs(options.restarts);
  std::vector<Partition> partitions(options.restarts);
  std::vector<std::vector<double>> traces(options.restarts);

  parallel_for(options.restarts, options.workers, [&](int r) {
    SolverConfig cfg = base;
    cfg.seed = options.seed + static_cast<std::uint64_t>(r);
    SolveResult solved = solve(graph, lap, cfg);
    Partition part = assign(solved.factors);

    RestartResult& out = runs[r];
    out.seed = cfg.seed;
    out.modularity = modularity(graph, part);
    if (reference) {
      out.nmi = nmi(*reference, part);
      out.ari = ari(*reference, part);
    }
    out.asymmetry = asymmetry(solved.factors);
    out.iterations = solved.iterations_run;
    out.converged = solved.converged;
    out.kkt_residual = solved.kkt_residual;
    out.wall_seconds = solved.wall_seconds;
    partitions[r] = std::move(part);
    traces[r] = std::move(solved.objective_trace);
  });

  int best = 0;
  for (int r = 1; r < options.restarts; ++r)
    if (runs[r].modularity > runs[best].modularity) best = r;

  DetectOutcome outcome;
  outcome.report.model = options.model;
  outcome.report.config = base;
  outcome.report.restarts = options.restarts;
  outcome.report.workers = options.workers;
  outcome.report.nodes = graph.node_count();
  outcome.report.stored_entries = graph.stored_entries();
  outcome.report.runs = std::move(runs);
  outcome.report.best_seed = outcome.report.runs[best].seed;
  outcome.report.best_objective_trace = std::move(traces[best]);
  outcome.best_partition = std::move(partitions[best]);
  return outcome;
}

SweepReport run_sweep(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                      const DetectOptions& base, const SweepGrid& grid) {
  if (base.model != "cfs")
    throw DomainError("only the cfs model exposes both sweep parameters");
  if (grid.lambda_values.empty() || grid.mu_values.empty())
    throw ContractError("sweep grids must be nonempty");
  for (double v : grid.lambda_values)
    if (v < 0.0) throw DomainError("lambda grid values must be >= 0");
  for (double v : grid.mu_values)
    if (v < 0.0) throw DomainError("mu grid values must be >= 0");

  auto evaluate = [&](double mu, double lambda) {
    DetectOptions point = base;
    point.mu = mu;
    point.lambda = lambda;
    const DetectOutcome outcome = run_detect(graph, lap, std::nullopt, point);
    std::vector<double> q;
    q.reserve(outcome.report.runs.size());
    for (const auto& r : outcome.report.runs) q.push_back(r.modularity);
    const Aggregate a = aggregate(q);
    return SweepPoint{0.0, a.mean, a.stddev};
  };

  SweepReport report;
  report.base = base;
  report.grid = grid;

  for (double lambda : grid.lambda_values) {
    SweepPoint p = evaluate(grid.fixed_mu, lambda);
    p.value = lambda;
    report.lambda_phase.push_back(p);
  }
  const auto best_l = std::max_element(
      report.lambda_phase.begin(), report.lambda_phase.end(),
      [](const auto& a, const auto& b) {
        return a.mean_modularity < b.mean_modularity;  // first max wins
      });
  report.best_lambda = best_l->value;

  for (double mu : grid.mu_values) {
    SweepPoint p = evaluate(mu, report.best_lambda);
    p.value = mu;
    report.mu_phase.push_back(p);
  }
  const auto best_m = std::max_element(
      report.mu_phase.begin(), report.mu_phase.end(),
      [](const auto& a, const auto& b) {
        return a.mean_modularity < b.mean_modularity;
      });
  report.best_mu = best_m->value;
  return report;
}

CompareReport run_compare(const std::vector<CompareDataset>& datasets,
                          const std::vector<std::string>& models,
                          const DetectOptions& base) {
  if (datasets.empty()) throw ContractError("compare needs at least one dataset");
  if (models.size() < 2) throw ContractError("compare needs at least two models");

  ScoreTable nmi_table, ari_table;
  nmi_table.models = models;
  ari_table.models = models;
  nmi_table.values.resize(datasets.size(), models.size());
  ari_table.values.resize(datasets.size(), models.size());

  for (std::size_t d = 0; d < datasets.size(); ++d) {
    const auto& ds = datasets[d];
    if (ds.graph == nullptr || ds.lap == nullptr || ds.truth == nullptr)
      throw ContractError("compare dataset '" + ds.name +
                          "' needs a graph, its Laplacian and ground truth");
    nmi_table.datasets.push_back(ds.name);
    ari_table.datasets.push_back(ds.name);

    for (std::size_t m = 0; m < models.size(); ++m) {
      DetectOptions opts = base;
      opts.model = models[m];
      const DetectOutcome outcome =
          run_detect(*ds.graph, *ds.lap, *ds.truth, opts);
      std::vector<double> nmis, aris;
      for (const auto& r : outcome.report.runs) {
        nmis.push_back(*r.nmi * 100.0);
        aris.push_back(*r.ari * 100.0);
      }
      nmi_table.values(d, m) = aggregate(nmis).mean;
      ari_table.values(d, m) = aggregate(aris).mean;
    }
  }

  CompareReport report;
  report.nmi_scores = std::move(nmi_table);
  report.nmi_ranks = friedman_ranks(report.nmi_scores);
  report.ari_scores = std::move(ari_table);
  report.ari_ranks = friedman_ranks(*report.ari_scores);
  return report;
}

CompareReport rank_score_table(const ScoreTable& table) {
  CompareReport report;
  report.nmi_scores = table;
  report.nmi_ranks = friedman_ranks(table);
  return report;
}

ScoreTable parse_score_table(std::istream& in) {
  ScoreTable table;
  std::vector<std::vector<double>> rows;

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    if (!have_header) {
      if (tokens.size() < 2)
        throw ParseError("score header needs at least one model column", line_no);
      table.models.assign(tokens.begin() + 1, tokens.end());
      have_header = true;
      continue;
    }

    if (tokens.size() != table.models.size() + 1)
      throw ParseError("expected " + std::to_string(table.models.size()) +
                           " scores for dataset '" + tokens.front() + "'",
                       line_no);
    table.datasets.push_back(tokens.front());
    std::vector<double> row;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      double v = 0.0;
      const char* begin = tokens[i].data();
      const char* end = begin + tokens[i].size();
      auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc() || ptr != end)
        throw ParseError("invalid score '" + tokens[i] + "'", line_no);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }

  if (!have_header) throw ParseError("score table is empty", line_no);
  table.values.resize(rows.size(), table.models.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < table.models.size(); ++c)
      table.values(r, c) = rows[r][c];
  table.validate();
  return table;
}

ScoreTable load_score_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open score table: " + path);
  return parse_score_table(in);
}

void write_detect_report(std::ostream& out, const DetectOutcome& outcome) {
  const RunReport& r = outcome.report;

  ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "detect";
  doc["model"] = r.model;
  doc["config"] = ordered_json{{"model", to_string(r.config.model)},
                               {"k", r.config.k},
                               {"mu", r.config.mu},
                               {"lambda", r.config.lambda},
                               {"tol", r.config.tol},
                               {"max_iters", r.config.max_iters},
                               {"eps_guard", r.config.eps_guard},
                               {"seed", r.config.seed},
                               {"restarts", r.restarts},
                               {"workers", r.workers}};
  doc["graph"] = ordered_json{{"nodes", r.nodes},
                              {"stored_entries", r.stored_entries}};

  ordered_json runs = ordered_json::array();
  for (const auto& run : r.runs) {
    ordered_json j;
    j["seed"] = run.seed;
    j["modularity"] = run.modularity;
    if (run.nmi) j["nmi"] = *run.nmi;
    if (run.ari) j["ari"] = *run.ari;
    j["asymmetry"] = run.asymmetry;
    j["iterations"] = run.iterations;
    j["converged"] = run.converged;
    j["kkt_residual"] = run.kkt_residual;
    j["wall_seconds"] = run.wall_seconds;
    runs.push_back(std::move(j));
  }
  doc["restarts"] = std::move(runs);
  doc["aggregates"] = restart_aggregates(r.runs);
  doc["best"] = ordered_json{{"seed", r.best_seed},
                             {"objective_trace", r.best_objective_trace}};
  out << doc.dump(2) << '\n';
}

void write_assignments(std::ostream& out, const AdjacencyMatrix& graph,
                       const Partition& partition) {
  if (static_cast<int>(partition.labels.size()) != graph.node_count())
    throw ContractError("partition does not cover the graph");
  const auto& names = graph.node_labels();
  for (int i = 0; i < graph.node_count(); ++i)
    out << names[i] << '\t' << partition.labels[i] << '\n';
}

void write_sweep_report(std::ostream& out, const SweepReport& report) {
  auto phase_json = [](const std::vector<SweepPoint>& phase) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : phase)
      arr.push_back(ordered_json{{"value", p.value},
                                 {"mean_modularity", p.mean_modularity},
                                 {"std_modularity", p.std_modularity}});
    return arr;
  };

  ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "sweep";
  doc["config"] = ordered_json{{"model", report.base.model},
                               {"k", report.base.k},
                               {"tol", report.base.tol},
                               {"max_iters", report.base.max_iters},
                               {"seed", report.base.seed},
                               {"restarts", report.base.restarts},
                               {"workers", report.base.workers},
                               {"fixed_mu", report.grid.fixed_mu}};
  doc["lambda_phase"] = phase_json(report.lambda_phase);
  doc["best_lambda"] = report.best_lambda;
  doc["mu_phase"] = phase_json(report.mu_phase);
  doc["best_mu"] = report.best_mu;
  out << doc.dump(2) << '\n';
}

void write_sweep_table(std::ostream& out, const SweepReport& report) {
  out << "# value\tmean_modularity\tstd_modularity\n";
  out << "# lambda sweep, mu fixed at " << format_double(report.grid.fixed_mu)
      << '\n';
  for (const auto& p : report.lambda_phase)
    out << format_double(p.value) << '\t' << format_double(p.mean_modularity)
        << '\t' << format_double(p.std_modularity) << '\n';
  out << "# mu sweep, lambda fixed at " << format_double(report.best_lambda)
      << '\n';
  for (const auto& p : report.mu_phase)
    out << format_double(p.value) << '\t' << format_double(p.mean_modularity)
        << '\t' << format_double(p.std_modularity) << '\n';
}

void write_compare_report(std::ostream& out, const CompareReport& report) {
  ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "compare";
  doc["datasets"] = report.nmi_scores.datasets;
  doc["models"] = report.nmi_scores.models;
  doc["nmi"] = score_table_json(report.nmi_scores);
  doc["nmi_ranks"] = report.nmi_ranks;
  if (report.ari_scores) {
    doc["ari"] = score_table_json(*report.ari_scores);
    doc["ari_ranks"] = *report.ari_ranks;
  }
  out << doc.dump(2) << '\n';
}

}  // namespace cfs
