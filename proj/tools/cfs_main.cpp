// Command-line front end: detect / sweep / compare / gen-sbm over edge-list
// graphs, with JSON reports and TSV tables written to --out.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cfs/edge_list.hpp"
#include "cfs/errors.hpp"
#include "cfs/harness.hpp"
#include "cfs/sbm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

namespace fs = std::filesystem;

struct CommonFlags {
  std::string edges;
  bool weighted = false;
  std::string ground_truth;
  std::string out_dir = ".";
  cfs::DetectOptions options;
};

void add_solver_flags(CLI::App* cmd, CommonFlags& flags, bool with_model) {
  cmd->add_option("--edges", flags.edges, "Edge-list file (src dst [weight])");
  cmd->add_flag("--weighted", flags.weighted, "Read a third column as weight");
  cmd->add_option("--ground-truth", flags.ground_truth,
                  "Node-community file for NMI/ARI scoring");
  if (with_model)
    cmd->add_option("--model", flags.options.model, "nmf | snmf | gnmf | cfs")
        ->capture_default_str();
  cmd->add_option("--k", flags.options.k, "Community count")
      ->capture_default_str();
  cmd->add_option("--mu", flags.options.mu, "Symmetry-regularizer weight")
      ->capture_default_str();
  cmd->add_option("--lambda", flags.options.lambda, "Graph-regularizer weight")
      ->capture_default_str();
  cmd->add_option("--tol", flags.options.tol,
                  "Relative objective-change stopping threshold")
      ->capture_default_str();
  cmd->add_option("--max-iters", flags.options.max_iters, "Iteration cap")
      ->capture_default_str();
  cmd->add_option("--restarts", flags.options.restarts,
                  "Seeded restarts per configuration")
      ->capture_default_str();
  cmd->add_option("--seed", flags.options.seed, "Base seed; restart r uses seed+r")
      ->capture_default_str();
  cmd->add_option("--workers", flags.options.workers,
                  "Worker threads for independent jobs")
      ->capture_default_str();
  cmd->add_option("--out", flags.out_dir, "Output directory")
      ->capture_default_str();
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cfs::IoError("cannot write " + path.string());
  return out;
}

std::string percent(double fraction) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << fraction * 100.0 << '%';
  return ss.str();
}

struct LoadedGraph {
  cfs::AdjacencyMatrix graph;
  cfs::LaplacianPair lap;
  std::optional<cfs::GroundTruth> truth;
};

LoadedGraph load_inputs(const CommonFlags& flags) {
  if (flags.edges.empty()) throw cfs::IoError("--edges is required");
  LoadedGraph in;
  auto parsed = cfs::load_edge_list(flags.edges, flags.weighted);
  if (parsed.self_loops_skipped > 0)
    std::cerr << "warning: skipped " << parsed.self_loops_skipped
              << " self-loop line(s)\n";
  in.graph = std::move(parsed.graph);
  in.lap = cfs::build_laplacian(in.graph);
  if (!flags.ground_truth.empty())
    in.truth = cfs::load_ground_truth(flags.ground_truth, in.graph);
  return in;
}

int run_detect_cmd(const CommonFlags& flags) {
  const LoadedGraph in = load_inputs(flags);
  const cfs::DetectOutcome outcome =
      cfs::run_detect(in.graph, in.lap, in.truth, flags.options);

  fs::create_directories(flags.out_dir);
  {
    auto out = open_output(fs::path(flags.out_dir) / "report.json");
    cfs::write_detect_report(out, outcome);
  }
  {
    auto out = open_output(fs::path(flags.out_dir) / "assignments.tsv");
    cfs::write_assignments(out, in.graph, outcome.best_partition);
  }

  const auto& runs = outcome.report.runs;
  std::vector<double> q;
  for (const auto& r : runs) q.push_back(r.modularity);
  const cfs::Aggregate mod = cfs::aggregate(q);
  std::cout << "model " << flags.options.model << "  k=" << flags.options.k
            << "  restarts=" << flags.options.restarts << '\n';
  std::cout << "modularity " << mod.mean << " +/- " << mod.stddev << '\n';
  if (in.truth) {
    std::vector<double> n, a;
    for (const auto& r : runs) {
      n.push_back(*r.nmi);
      a.push_back(*r.ari);
    }
    const auto nm = cfs::aggregate(n), ar = cfs::aggregate(a);
    std::cout << "nmi " << percent(nm.mean) << " +/- " << percent(nm.stddev)
              << "   ari " << percent(ar.mean) << " +/- " << percent(ar.stddev)
              << '\n';
  }
  std::cout << "wrote " << (fs::path(flags.out_dir) / "report.json").string()
            << " and assignments.tsv\n";
  return kExitOk;
}

int run_sweep_cmd(const CommonFlags& flags, const cfs::SweepGrid& grid) {
  const LoadedGraph in = load_inputs(flags);
  const cfs::SweepReport report =
      cfs::run_sweep(in.graph, in.lap, flags.options, grid);

  fs::create_directories(flags.out_dir);
  {
    auto out = open_output(fs::path(flags.out_dir) / "sweep.json");
    cfs::write_sweep_report(out, report);
  }
  {
    auto out = open_output(fs::path(flags.out_dir) / "sweep.tsv");
    cfs::write_sweep_table(out, report);
  }
  std::cout << "best lambda " << report.best_lambda << "  best mu "
            << report.best_mu << '\n';
  std::cout << "wrote sweep.json and sweep.tsv under " << flags.out_dir << '\n';
  return kExitOk;
}

int run_compare_cmd(const CommonFlags& flags, const std::string& scores_path,
                    const std::vector<std::string>& edge_paths,
                    const std::vector<std::string>& truth_paths,
                    const std::vector<std::string>& models) {
  cfs::CompareReport report;
  if (!scores_path.empty()) {
    report = cfs::rank_score_table(cfs::load_score_table(scores_path));
  } else {
    std::vector<LoadedGraph> loaded;
    loaded.reserve(edge_paths.size());
    std::vector<cfs::CompareDataset> datasets;
    for (std::size_t i = 0; i < edge_paths.size(); ++i) {
      CommonFlags one = flags;
      one.edges = edge_paths[i];
      one.ground_truth = truth_paths[i];
      loaded.push_back(load_inputs(one));
    }
    for (std::size_t i = 0; i < edge_paths.size(); ++i)
      datasets.push_back({fs::path(edge_paths[i]).stem().string(),
                          &loaded[i].graph, &loaded[i].lap,
                          &*loaded[i].truth});
    report = cfs::run_compare(datasets, models, flags.options);
  }

  fs::create_directories(flags.out_dir);
  {
    auto out = open_output(fs::path(flags.out_dir) / "compare.json");
    cfs::write_compare_report(out, report);
  }

  std::cout << std::fixed << std::setprecision(2);
  std::cout << "model";
  for (const auto& m : report.nmi_scores.models) std::cout << '\t' << m;
  std::cout << '\n';
  for (std::size_t d = 0; d < report.nmi_scores.datasets.size(); ++d) {
    std::cout << report.nmi_scores.datasets[d];
    for (Eigen::Index c = 0; c < report.nmi_scores.values.cols(); ++c)
      std::cout << '\t' << report.nmi_scores.values(d, c);
    std::cout << '\n';
  }
  std::cout << "rank";
  for (double r : report.nmi_ranks) std::cout << '\t' << r;
  std::cout << '\n';
  std::cout << "wrote compare.json under " << flags.out_dir << '\n';
  return kExitOk;
}

int run_gen_sbm_cmd(const std::vector<int>& blocks, double p_in, double p_out,
                    std::uint64_t seed, const std::string& out_dir) {
  const cfs::SbmGraph generated = cfs::generate_sbm(blocks, p_in, p_out, seed);
  fs::create_directories(out_dir);
  {
    auto out = open_output(fs::path(out_dir) / "edges.tsv");
    cfs::write_edge_list(out, generated.graph);
  }
  {
    auto out = open_output(fs::path(out_dir) / "ground_truth.tsv");
    cfs::write_ground_truth(out, generated.graph, generated.truth);
  }
  std::cout << "generated " << generated.graph.node_count() << " nodes, "
            << generated.graph.stored_entries() / 2 << " edges under "
            << out_dir << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection via regularized nonnegative matrix "
               "factorization"};
  app.require_subcommand(1);

  CommonFlags detect_flags;
  auto* detect = app.add_subcommand("detect", "Run one detection job");
  add_solver_flags(detect, detect_flags, /*with_model=*/true);

  CommonFlags sweep_flags;
  cfs::SweepGrid grid;
  auto* sweep = app.add_subcommand(
      "sweep", "Modularity-driven lambda-then-mu hyperparameter sweep");
  add_solver_flags(sweep, sweep_flags, /*with_model=*/false);
  sweep->add_option("--lambda-grid", grid.lambda_values, "Lambda grid values")
      ->delimiter(',');
  sweep->add_option("--mu-grid", grid.mu_values, "Mu grid values")
      ->delimiter(',');
  sweep->add_option("--fixed-mu", grid.fixed_mu,
                    "Mu held fixed during the lambda phase")
      ->capture_default_str();

  CommonFlags compare_flags;
  std::string scores_path;
  std::vector<std::string> compare_edges, compare_truths, compare_models;
  auto* compare = app.add_subcommand(
      "compare", "Score multiple models (or rank an existing score table)");
  compare->add_option("--scores", scores_path,
                      "Rank this score table instead of running models");
  compare->add_option("--edges", compare_edges, "Edge-list file, repeatable");
  compare->add_option("--ground-truth", compare_truths,
                      "Ground-truth file, one per --edges");
  compare->add_option("--model", compare_models,
                      "Model to compare, repeatable or comma-separated")
      ->delimiter(',');
  compare->add_flag("--weighted", compare_flags.weighted,
                    "Read a third column as weight");
  compare->add_option("--k", compare_flags.options.k, "Community count")
      ->capture_default_str();
  compare->add_option("--mu", compare_flags.options.mu,
                      "Symmetry-regularizer weight (cfs)");
  compare->add_option("--lambda", compare_flags.options.lambda,
                      "Graph-regularizer weight (gnmf/cfs)");
  compare->add_option("--tol", compare_flags.options.tol, "Stopping threshold");
  compare->add_option("--max-iters", compare_flags.options.max_iters,
                      "Iteration cap");
  compare->add_option("--restarts", compare_flags.options.restarts,
                      "Restarts per dataset x model cell");
  compare->add_option("--seed", compare_flags.options.seed, "Base seed");
  compare->add_option("--workers", compare_flags.options.workers,
                      "Worker threads");
  compare->add_option("--out", compare_flags.out_dir, "Output directory")
      ->capture_default_str();

  std::vector<int> blocks;
  double p_in = 0.3, p_out = 0.05;
  std::uint64_t sbm_seed = 0;
  std::string sbm_out = ".";
  auto* gen = app.add_subcommand("gen-sbm",
                                 "Generate a planted-partition benchmark graph");
  gen->add_option("--blocks", blocks, "Comma-separated block sizes")
      ->delimiter(',')
      ->required();
  gen->add_option("--p-in", p_in, "Intra-block edge probability")
      ->capture_default_str();
  gen->add_option("--p-out", p_out, "Inter-block edge probability")
      ->capture_default_str();
  gen->add_option("--seed", sbm_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", sbm_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    // Flag-level semantic validation, before any file is touched.
    if (detect->parsed()) cfs::resolve_solver_config(detect_flags.options);
    if (sweep->parsed()) {
      sweep_flags.options.model = "cfs";
      cfs::resolve_solver_config(sweep_flags.options);
      if (grid.lambda_values.empty() || grid.mu_values.empty())
        throw cfs::DomainError("sweep grids must be nonempty");
      for (double v : grid.lambda_values)
        if (v < 0.0) throw cfs::DomainError("lambda grid values must be >= 0");
      for (double v : grid.mu_values)
        if (v < 0.0) throw cfs::DomainError("mu grid values must be >= 0");
      if (grid.fixed_mu < 0.0)
        throw cfs::DomainError("--fixed-mu must be >= 0");
    }
    if (compare->parsed()) {
      if (scores_path.empty()) {
        if (compare_edges.empty())
          throw cfs::DomainError("compare needs --scores or --edges");
        if (compare_truths.size() != compare_edges.size())
          throw cfs::DomainError(
              "compare needs one --ground-truth per --edges");
        if (compare_models.size() < 2)
          throw cfs::DomainError("compare needs at least two --model values");
        for (const auto& m : compare_models) {
          cfs::DetectOptions probe = compare_flags.options;
          probe.model = m;
          cfs::resolve_solver_config(probe);
        }
      } else if (!compare_edges.empty()) {
        throw cfs::DomainError("--scores and --edges are mutually exclusive");
      }
    }
    if (gen->parsed()) {
      // generate_sbm validates blocks and probabilities; all of its inputs
      // are flags, so failures surface as usage errors below.
    }
  } catch (const cfs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (detect->parsed()) return run_detect_cmd(detect_flags);
    if (sweep->parsed()) return run_sweep_cmd(sweep_flags, grid);
    if (compare->parsed())
      return run_compare_cmd(compare_flags, scores_path, compare_edges,
                             compare_truths, compare_models);
    if (gen->parsed()) {
      try {
        return run_gen_sbm_cmd(blocks, p_in, p_out, sbm_seed, sbm_out);
      } catch (const cfs::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
    }
  } catch (const cfs::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const cfs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
