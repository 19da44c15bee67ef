/*
 * Copyright 2026 The nepart Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
 * implied. See the License for the specific language governing
 * permissions and limitations under the License.
 */

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nepart/baselines.hpp"
#include "nepart/engine.hpp"
#include "nepart/graph.hpp"
#include "nepart/metrics.hpp"
#include "nepart/rmat.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

struct GraphSource {
  std::string input_path;
  std::string rmat_spec;

  bool configured() const { return !input_path.empty() || !rmat_spec.empty(); }
  std::string label() const;
  nepart::Graph load(std::uint64_t seed) const;
};

nepart::RmatParams parse_rmat_spec(const std::string& spec,
                                   std::uint64_t seed) {
  std::vector<double> fields;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    fields.push_back(std::stod(token));
  }
  if (fields.size() != 2 && fields.size() != 6) {
    throw nepart::ConfigError("--rmat expects scale,ef[,a,b,c,d]");
  }
  nepart::RmatParams p;
  p.scale = static_cast<std::uint32_t>(fields[0]);
  p.edge_factor = static_cast<std::uint32_t>(fields[1]);
  if (fields.size() == 6) {
    p.a = fields[2];
    p.b = fields[3];
    p.c = fields[4];
    p.d = fields[5];
  }
  p.seed = seed;
  return p;
}

std::string GraphSource::label() const {
  if (!input_path.empty()) {
    return std::filesystem::path(input_path).filename().string();
  }
  auto comma = rmat_spec.find(',');
  std::string scale = rmat_spec.substr(0, comma);
  std::string rest = rmat_spec.substr(comma + 1);
  std::string ef = rest.substr(0, rest.find(','));
  return "rmat-s" + scale + "-ef" + ef;
}

nepart::Graph GraphSource::load(std::uint64_t seed) const {
  if (!input_path.empty()) {
    std::ifstream in(input_path);
    if (!in) {
      throw nepart::ConfigError("cannot open input file: " + input_path);
    }
    return nepart::load_edge_list(in);
  }
  return nepart::generate_rmat(parse_rmat_spec(rmat_spec, seed));
}

struct RunSpec {
  GraphSource source;
  std::string method = "dne";
  std::uint32_t parts = 1;
  double alpha = 1.1;
  double lambda = 0.1;
  std::uint64_t seed = 0;
  bool deterministic = false;
  std::uint32_t workers = 0;
  bool verbose = false;
  std::string trace_path;
  std::string output_path;
  std::string report_path;
};

struct RunOutcome {
  nepart::PartitionAssignment assignment;
  nepart::QualityReport report;
};

RunOutcome run_partitioner(const nepart::Graph& g, const RunSpec& spec) {
  using Clock = std::chrono::steady_clock;
  std::ofstream trace;
  if (!spec.trace_path.empty()) {
    trace.open(spec.trace_path);
    if (!trace) {
      throw nepart::ConfigError("cannot open trace file: " + spec.trace_path);
    }
  }

  RunOutcome out;
  std::uint64_t iterations = 0;
  const auto started = Clock::now();
  if (spec.method == "dne") {
    nepart::EngineConfig cfg;
    cfg.num_partitions = spec.parts;
    cfg.alpha = spec.alpha;
    cfg.lambda = spec.lambda;
    cfg.seed = spec.seed;
    cfg.deterministic = spec.deterministic;
    cfg.workers = spec.workers;
    cfg.trace = spec.trace_path.empty() ? nullptr : &trace;
    cfg.progress = spec.verbose ? &std::cerr : nullptr;
    auto result = nepart::partition_graph(g, cfg);
    iterations = result.iterations;
    out.assignment = std::move(result.assignment);
  } else if (spec.method == "random") {
    out.assignment = nepart::partition_random(g, spec.parts, spec.seed);
  } else if (spec.method == "grid") {
    out.assignment = nepart::partition_grid(g, spec.parts, spec.seed);
  } else if (spec.method == "dbh") {
    out.assignment = nepart::partition_dbh(g, spec.parts, spec.seed);
  } else if (spec.method == "seqne") {
    out.assignment = nepart::partition_sequential_ne(g, spec.parts, spec.alpha,
                                                     spec.seed);
  } else {
    throw nepart::ConfigError("unknown method: " + spec.method);
  }
  const auto elapsed = Clock::now() - started;

  out.report = nepart::measure_quality(out.assignment, g);
  out.report.graph = spec.source.label();
  out.report.partitioner = spec.method;
  out.report.alpha = spec.alpha;
  out.report.lambda = spec.method == "dne" ? spec.lambda : 0.0;
  out.report.seed = spec.seed;
  out.report.iterations = iterations;
  out.report.elapsed_ms =
      std::chrono::duration<double, std::milli>(elapsed).count();
  return out;
}

void write_partition_file(const nepart::Graph& g,
                          const nepart::PartitionAssignment& a,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw nepart::ConfigError("cannot open output file: " + path);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << edges[i].src << ' ' << edges[i].dst << ' ' << a.partition_of(i)
        << '\n';
  }
  if (!out.good()) throw nepart::ConfigError("failed writing " + path);
}

void append_report(const std::string& path, const nepart::QualityReport& r) {
  const bool add_header =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw nepart::ConfigError("cannot open report file: " + path);
  if (add_header) out << nepart::kQualityReportCsvHeader << '\n';
  out << nepart::to_csv_row(r) << '\n';
}

int cmd_generate(const nepart::RmatParams& params, const std::string& output) {
  nepart::Graph g = nepart::generate_rmat(params);
  std::ofstream out(output);
  if (!out) throw nepart::ConfigError("cannot open output file: " + output);
  nepart::save_edge_list(g, out);
  if (!out.good()) throw nepart::ConfigError("failed writing " + output);
  std::cout << "vertices " << g.vertex_count() << " edges " << g.edge_count()
            << '\n';
  return kExitOk;
}

int cmd_partition(const RunSpec& spec) {
  nepart::Graph g = spec.source.load(spec.seed);
  RunOutcome out = run_partitioner(g, spec);
  if (!spec.output_path.empty()) {
    write_partition_file(g, out.assignment, spec.output_path);
  }
  if (!spec.report_path.empty()) append_report(spec.report_path, out.report);
  std::cout << nepart::kQualityReportCsvHeader << '\n'
            << nepart::to_csv_row(out.report) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunSpec& base, const std::vector<double>& lambdas,
              const std::vector<std::uint32_t>& parts) {
  if (lambdas.empty() == parts.empty()) {
    throw nepart::ConfigError("sweep: give exactly one of --lambdas/--parts");
  }
  nepart::Graph g = base.source.load(base.seed);
  std::cout << nepart::kQualityReportCsvHeader << '\n';
  auto run_one = [&](const RunSpec& spec) {
    RunOutcome out = run_partitioner(g, spec);
    if (!spec.report_path.empty()) append_report(spec.report_path, out.report);
    std::cout << nepart::to_csv_row(out.report) << '\n';
  };
  if (!lambdas.empty()) {
    for (double l : lambdas) {
      RunSpec spec = base;
      spec.lambda = l;
      run_one(spec);
    }
  } else {
    for (std::uint32_t p : parts) {
      RunSpec spec = base;
      spec.parts = p;
      run_one(spec);
    }
  }
  return kExitOk;
}

int cmd_verify(const GraphSource& source, const std::string& partition_path,
               std::uint64_t seed) {
  nepart::Graph g = source.load(seed);
  std::ifstream in(partition_path);
  if (!in) {
    throw nepart::ConfigError("cannot open partition file: " + partition_path);
  }
  std::vector<nepart::runtime::EdgeAssignmentRecord> records;
  std::uint32_t max_partition = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::uint64_t u, v, p;
    if (!(ls >> u >> v >> p)) {
      std::cerr << "malformed partition record at line " << line_no << '\n';
      return kExitValidation;
    }
    records.push_back({nepart::Edge(static_cast<nepart::VertexId>(u),
                                    static_cast<nepart::VertexId>(v)),
                       static_cast<nepart::PartitionId>(p)});
    max_partition = std::max(max_partition, static_cast<std::uint32_t>(p));
  }
  const std::uint32_t parts = max_partition + 1;
  auto violations = nepart::validate_assignment_records(g, parts, records);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << v << '\n';
    std::cerr << violations.size() << " violation(s)\n";
    return kExitValidation;
  }
  auto assignment = nepart::PartitionAssignment::from_records(g, parts, records);
  const double rf = nepart::replication_factor(assignment, g);
  const double ub = nepart::theoretical_upper_bound(g.vertex_count(),
                                                    g.edge_count(), parts);
  if (rf > ub) {
    std::cerr << "replication factor " << rf << " exceeds bound " << ub
              << '\n';
    return kExitValidation;
  }
  std::cout << "ok: " << records.size() << " edges, " << parts
            << " partitions, rf " << rf << " <= bound " << ub << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge partitioner: distributed neighbor expansion plus "
               "hash/greedy baselines"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate an RMAT edge list");
  nepart::RmatParams gen_params;
  std::string gen_output;
  std::string gen_probs;
  gen->add_option("--scale", gen_params.scale, "log2 of the vertex count")
      ->required()
      ->check(CLI::Range(1u, 31u));
  gen->add_option("--edge-factor", gen_params.edge_factor,
                  "average edges per vertex")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_params.seed, "random seed");
  gen->add_option("--probs", gen_probs, "quadrant probabilities a,b,c,d");
  gen->add_option("-o,--output", gen_output, "output edge-list path")
      ->required();

  // shared run options
  RunSpec spec;
  auto add_source = [](CLI::App* cmd, GraphSource& src) {
    auto* input = cmd->add_option("-i,--input", src.input_path,
                                  "input edge-list file");
    auto* rmat = cmd->add_option("--rmat", src.rmat_spec,
                                 "generate input: scale,ef[,a,b,c,d]");
    input->excludes(rmat);
  };

  auto* part = app.add_subcommand("partition", "Partition a graph");
  add_source(part, spec.source);
  part->add_option("--method", spec.method,
                   "one of dne, random, grid, dbh, seqne")
      ->check(CLI::IsMember({"dne", "random", "grid", "dbh", "seqne"}));
  part->add_option("-P,--partitions", spec.parts, "number of partitions")
      ->required()
      ->check(CLI::PositiveNumber);
  part->add_option("--alpha", spec.alpha, "imbalance factor (default 1.1)");
  part->add_option("--lambda", spec.lambda, "expansion factor (default 0.1)");
  part->add_option("--seed", spec.seed, "random seed");
  part->add_flag("--deterministic", spec.deterministic,
                 "single-threaded deterministic replay mode");
  part->add_option("--workers", spec.workers,
                   "worker threads in parallel mode (default |P|)");
  part->add_flag("-v,--verbose", spec.verbose, "per-iteration progress log");
  part->add_option("--trace", spec.trace_path, "message trace output path");
  part->add_option("-o,--output", spec.output_path, "partition file path");
  part->add_option("--report", spec.report_path, "CSV report path (append)");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  RunSpec sweep_spec;
  std::vector<double> sweep_lambdas;
  std::vector<std::uint32_t> sweep_parts;
  add_source(sweep, sweep_spec.source);
  sweep->add_option("--method", sweep_spec.method,
                    "one of dne, random, grid, dbh, seqne")
      ->check(CLI::IsMember({"dne", "random", "grid", "dbh", "seqne"}));
  sweep->add_option("-P,--partitions", sweep_spec.parts,
                    "number of partitions");
  sweep->add_option("--alpha", sweep_spec.alpha, "imbalance factor");
  sweep->add_option("--lambda", sweep_spec.lambda, "expansion factor");
  sweep->add_option("--seed", sweep_spec.seed, "random seed");
  sweep->add_flag("--deterministic", sweep_spec.deterministic,
                  "deterministic replay mode");
  sweep->add_option("--workers", sweep_spec.workers, "worker threads");
  sweep->add_option("--lambdas", sweep_lambdas,
                    "lambda values to sweep")
      ->delimiter(',');
  sweep->add_option("--parts", sweep_parts, "partition counts to sweep")
      ->delimiter(',');
  sweep->add_option("--report", sweep_spec.report_path, "CSV report path");

  auto* verify = app.add_subcommand("verify", "Validate a partition file");
  GraphSource verify_source;
  std::string verify_partition;
  std::uint64_t verify_seed = 0;
  add_source(verify, verify_source);
  verify->add_option("partition_file", verify_partition,
                     "partition file to check")
      ->required();
  verify->add_option("--seed", verify_seed,
                     "seed used when the input is --rmat");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (!gen_probs.empty()) {
        auto full = std::to_string(gen_params.scale) + "," +
                    std::to_string(gen_params.edge_factor) + "," + gen_probs;
        auto parsed = parse_rmat_spec(full, gen_params.seed);
        gen_params = parsed;
      }
      return cmd_generate(gen_params, gen_output);
    }
    if (part->parsed()) {
      if (!spec.source.configured()) {
        throw nepart::ConfigError("partition: need -i or --rmat");
      }
      return cmd_partition(spec);
    }
    if (sweep->parsed()) {
      if (!sweep_spec.source.configured()) {
        throw nepart::ConfigError("sweep: need -i or --rmat");
      }
      return cmd_sweep(sweep_spec, sweep_lambdas, sweep_parts);
    }
    if (verify->parsed()) {
      if (!verify_source.configured()) {
        throw nepart::ConfigError("verify: need -i or --rmat");
      }
      return cmd_verify(verify_source, verify_partition, verify_seed);
    }
  } catch (const nepart::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nepart::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
