/*
 * Copyright 2026 The cdeforest Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli/commands.h"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "cdeforest/error.h"
#include "cdeforest/forest.h"
#include "cdeforest/forest_io.h"
#include "cdeforest/loss.h"
#include "cdeforest/parallel.h"
#include "cdeforest/simgen.h"
#include "cli/csv.h"

namespace cdeforest::cli {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string> SplitList(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, sep)) parts.push_back(part);
  return parts;
}

template <typename T>
T ParseNumber(const std::string& text, const std::string& what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument(what + ": '" + text + "' is not a valid number");
  }
  return value;
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  return out;
}

void CloseOutput(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

// Response columns: explicit list, else "z", else the run z1, z2, ...
std::vector<std::string> ResolveResponseColumns(const CsvTable& table,
                                                const std::string& requested) {
  if (!requested.empty()) return SplitList(requested, ',');
  if (table.ColumnIndex("z")) return {"z"};
  std::vector<std::string> names;
  for (int k = 1; table.ColumnIndex("z" + std::to_string(k)); ++k) {
    names.push_back("z" + std::to_string(k));
  }
  if (names.empty()) {
    throw InvalidArgument("no response columns given and none named z or z1.. found");
  }
  return names;
}

std::vector<std::string> Complement(const CsvTable& table,
                                    const std::vector<std::string>& excluded) {
  std::vector<std::string> rest;
  for (const std::string& name : table.header) {
    if (std::find(excluded.begin(), excluded.end(), name) == excluded.end()) {
      rest.push_back(name);
    }
  }
  return rest;
}

// Covariate block of `table` laid out the way `forest` was trained.
Matrix QueryCovariates(const Forest& forest, const CsvTable& table) {
  const ColumnNames& names = forest.column_names();
  if (!names.covariates.empty()) {
    for (const std::string& name : names.covariates) {
      if (!table.ColumnIndex(name)) {
        throw InvalidArgument("covariate column '" + name +
                              "' used in training is missing from the input");
      }
    }
    return table.Select(names.covariates);
  }
  const std::vector<std::string> rest = Complement(table, names.responses);
  if (rest.size() != forest.n_covariates()) {
    throw InvalidArgument("input has " + std::to_string(rest.size()) +
                          " covariate columns, model expects " +
                          std::to_string(forest.n_covariates()));
  }
  return table.Select(rest);
}

std::vector<std::string> ResponseNames(const Forest& forest) {
  if (!forest.column_names().responses.empty()) return forest.column_names().responses;
  if (forest.response_dim() == 1) return {"z"};
  std::vector<std::string> names;
  for (std::size_t k = 1; k <= forest.response_dim(); ++k) {
    names.push_back("z" + std::to_string(k));
  }
  return names;
}

void CheckGridDim(const Lattice& grid, std::size_t d) {
  if (grid.dim() != d) {
    throw InvalidArgument("grid has " + std::to_string(grid.dim()) +
                          " dimensions, responses have " + std::to_string(d));
  }
}

struct SimulateArgs {
  std::string design = "univariate";
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  double sigma = 1.0;
  std::string z2_law = "between";
  std::string out;
};

int Simulate(const SimulateArgs& a, std::ostream& out) {
  std::ofstream file = OpenOutput(a.out);
  if (a.design == "univariate") {
    const SimData data = GenerateUnivariate({a.n, a.sigma, a.seed});
    for (std::size_t i = 1; i <= 10; ++i) file << 'x' << i << ',';
    for (std::size_t i = 1; i <= 10; ++i) file << 'y' << i << ',';
    file << "z\n";
    std::vector<double> row(kUnivariateCovariates + 1);
    for (std::size_t i = 0; i < a.n; ++i) {
      std::copy(data.x.row(i).begin(), data.x.row(i).end(), row.begin());
      row.back() = data.z(i, 0);
      WriteRow(file, row);
    }
  } else {
    const JointZ2Law law =
        a.z2_law == "upper" ? JointZ2Law::kXToOne : JointZ2Law::kBetweenZ1AndX;
    const SimData data = GenerateJoint(a.n, a.seed, law);
    file << "x,z1,z2\n";
    for (std::size_t i = 0; i < a.n; ++i) {
      const double row[] = {data.x(i, 0), data.z(i, 0), data.z(i, 1)};
      WriteRow(file, row);
    }
  }
  CloseOutput(file, a.out);
  out << "wrote " << a.n << " rows to " << a.out << '\n';
  return kExitOk;
}

struct TrainArgs {
  std::string data;
  std::string response_cols;
  ForestParams params;
  std::string criterion = "cde";
  std::string bootstrap = "on";
  std::string out;
  int threads = 1;
};

int Train(TrainArgs a, std::ostream& out, std::ostream& err) {
  const CsvTable table = ReadCsv(a.data);
  const std::vector<std::string> responses = ResolveResponseColumns(table, a.response_cols);
  const std::vector<std::string> covariates = Complement(table, responses);
  const Matrix z = table.Select(responses);
  const Matrix x = table.Select(covariates);
  a.params.criterion = ParseCriterion(a.criterion);
  a.params.bootstrap = a.bootstrap == "on";

  const auto start = Clock::now();
  Forest forest = Forest::Fit(x, z, a.params, {a.threads});
  const double seconds = SecondsSince(start);
  forest.set_column_names({covariates, responses});
  SaveForestFile(forest, a.out);

  err << "train_seconds=" << seconds << '\n';
  out << "trained " << forest.trees().size() << " trees on " << x.rows() << " rows; model "
      << a.out << '\n';
  return kExitOk;
}

struct PredictArgs {
  std::string model;
  std::string data;
  std::string grid;
  std::string bandwidth = "adaptive";
  std::string out;
  int threads = 1;
};

int Predict(const PredictArgs& a, std::ostream& out, std::ostream& err) {
  const Forest forest = LoadForestFile(a.model);
  const CsvTable table = ReadCsv(a.data);
  const Matrix x = QueryCovariates(forest, table);
  const Lattice grid = ParseGridSpec(a.grid);
  CheckGridDim(grid, forest.response_dim());
  const BandwidthSpec bandwidth = BandwidthSpec::Parse(a.bandwidth);

  const auto start = Clock::now();
  std::vector<std::vector<double>> values(x.rows());
  ParallelFor(x.rows(), a.threads, [&](std::size_t q) {
    values[q] = forest.PredictDensityValues(x.row(q), grid, bandwidth);
  });
  const double seconds = SecondsSince(start);

  std::ofstream file = OpenOutput(a.out);
  file << "query_index";
  for (const std::string& name : ResponseNames(forest)) file << ',' << name;
  file << ",density\n";
  std::vector<double> row(grid.dim() + 2);
  for (std::size_t q = 0; q < x.rows(); ++q) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      row[0] = static_cast<double>(q);
      const std::vector<double> point = grid.Point(g);
      std::copy(point.begin(), point.end(), row.begin() + 1);
      row.back() = values[q][g];
      WriteRow(file, row);
    }
  }
  CloseOutput(file, a.out);
  err << "predict_seconds=" << seconds << '\n';
  out << "wrote " << x.rows() * grid.size() << " density rows to " << a.out << '\n';
  return kExitOk;
}

struct EvaluateArgs {
  std::string model;
  std::string data;
  std::string response_cols;
  std::string grid;
  std::string bandwidth = "adaptive";
  std::string out;
  bool reference_uniform = false;
  int threads = 1;
};

int Evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const CsvTable table = ReadCsv(a.data);
  const Lattice grid = ParseGridSpec(a.grid);

  Matrix x;
  Matrix z;
  DensityFn estimator;
  std::optional<Forest> forest;
  std::optional<BandwidthSpec> bandwidth;
  if (a.reference_uniform) {
    const std::vector<std::string> responses = ResolveResponseColumns(table, a.response_cols);
    z = table.Select(responses);
    x = table.Select(Complement(table, responses));
    const double level = 1.0 / grid.Volume();
    estimator = [level, &grid](std::size_t, std::span<const double>) {
      return std::vector<double>(grid.size(), level);
    };
  } else {
    if (a.model.empty()) throw InvalidArgument("--model is required unless --reference-uniform");
    forest = LoadForestFile(a.model);
    bandwidth = BandwidthSpec::Parse(a.bandwidth);
    const std::vector<std::string> responses =
        a.response_cols.empty() ? ResponseNames(*forest) : SplitList(a.response_cols, ',');
    z = table.Select(responses);
    x = QueryCovariates(*forest, table);
    estimator = [&](std::size_t, std::span<const double> query) {
      return forest->PredictDensityValues(query, grid, *bandwidth);
    };
  }
  CheckGridDim(grid, z.cols());

  const auto start = Clock::now();
  const LossReport report = CdeLoss(estimator, x, z, grid, a.threads);
  const double seconds = SecondsSince(start);

  out << "loss=" << FormatDouble(report.loss) << '\n'
      << "se=" << FormatDouble(report.se) << '\n'
      << "term_sq=" << FormatDouble(report.term_sq) << '\n'
      << "term_lik=" << FormatDouble(report.term_lik) << '\n'
      << "n_test=" << report.n_test << '\n'
      << "outside_hull=" << report.outside_hull << '\n'
      << "se_kind=per_test_point\n";
  if (report.outside_hull > 0) {
    err << "warning: " << report.outside_hull
        << " test responses lie outside the grid and contribute 0 density\n";
  }
  err << "predict_seconds=" << seconds << '\n';

  if (!a.out.empty()) {
    std::ofstream file = OpenOutput(a.out);
    file << "row,integral_sq,density_at_z,contribution\n";
    for (std::size_t i = 0; i < report.n_test; ++i) {
      const double row[] = {static_cast<double>(i), report.integral_sq[i],
                            report.density_at_z[i],
                            report.integral_sq[i] - 2.0 * report.density_at_z[i]};
      WriteRow(file, row);
    }
    CloseOutput(file, a.out);
  }
  return kExitOk;
}

void AddForestOptions(CLI::App* cmd, TrainArgs& a) {
  cmd->add_option("--ntrees", a.params.n_trees, "Number of trees")->default_val(100);
  cmd->add_option("--mtry", a.params.mtry, "Covariates sampled per split")->default_val(1);
  cmd->add_option("--node-size", a.params.node_size, "Minimum leaf size")->default_val(5);
  cmd->add_option("--n-basis", a.params.n_basis, "Cosine basis functions per response dim")
      ->default_val(15);
  cmd->add_option("--criterion", a.criterion, "Split criterion")
      ->check(CLI::IsMember({"cde", "mse"}))
      ->default_val("cde");
  cmd->add_option("--bootstrap", a.bootstrap, "Bootstrap resampling per tree")
      ->check(CLI::IsMember({"on", "off"}))
      ->default_val("on");
  cmd->add_option("--seed", a.params.seed, "Random seed")->default_val(0);
}

}  // namespace

Lattice ParseGridSpec(const std::string& text) {
  if (text.empty()) throw InvalidArgument("--grid is required (lo:hi:steps per dimension)");
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<std::size_t> steps;
  for (const std::string& dim : SplitList(text, ',')) {
    const std::vector<std::string> parts = SplitList(dim, ':');
    if (parts.size() != 3) {
      throw InvalidArgument("grid dimension '" + dim + "' must be lo:hi:steps");
    }
    lo.push_back(ParseNumber<double>(parts[0], "grid minimum"));
    hi.push_back(ParseNumber<double>(parts[1], "grid maximum"));
    steps.push_back(ParseNumber<std::size_t>(parts[2], "grid steps"));
  }
  return Lattice::Regular(lo, hi, steps);
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random forests for conditional density estimation"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a simulated data set");
  simulate->add_option("--design", sim.design, "Simulation design")
      ->check(CLI::IsMember({"univariate", "joint"}))
      ->default_val("univariate");
  simulate->add_option("--n", sim.n, "Number of rows")->default_val(1000);
  simulate->add_option("--seed", sim.seed, "Random seed")->default_val(0);
  simulate->add_option("--sigma", sim.sigma, "Noise sd (univariate)")->default_val(1.0);
  simulate->add_option("--z2-law", sim.z2_law, "Joint design: z2 ~ U(z1,x) or U(x,1)")
      ->check(CLI::IsMember({"between", "upper"}))
      ->default_val("between");
  simulate->add_option("--out", sim.out, "Output CSV")->required();

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "Fit a forest and write a model file");
  train->add_option("--data", train_args.data, "Training CSV")->required();
  train->add_option("--response-cols", train_args.response_cols,
                    "Comma-separated response column names");
  AddForestOptions(train, train_args);
  train->add_option("--out", train_args.out, "Model output path")->required();
  train->add_option("--threads", train_args.threads, "Worker threads")->default_val(1);

  PredictArgs pred;
  CLI::App* predict = app.add_subcommand("predict", "Densities on a response grid");
  predict->add_option("--model", pred.model, "Model file")->required();
  predict->add_option("--data", pred.data, "Query CSV")->required();
  predict->add_option("--grid", pred.grid, "lo:hi:steps per response dimension")->required();
  predict->add_option("--bandwidth", pred.bandwidth, "Number, per-dim list, or adaptive")
      ->default_val("adaptive");
  predict->add_option("--out", pred.out, "Output CSV")->required();
  predict->add_option("--threads", pred.threads, "Worker threads")->default_val(1);

  EvaluateArgs eval;
  CLI::App* evaluate = app.add_subcommand("evaluate", "CDE loss on held-out data");
  evaluate->add_option("--model", eval.model, "Model file");
  evaluate->add_option("--data", eval.data, "Test CSV")->required();
  evaluate->add_option("--response-cols", eval.response_cols, "Response column names");
  evaluate->add_option("--grid", eval.grid, "lo:hi:steps per response dimension")->required();
  evaluate->add_option("--bandwidth", eval.bandwidth, "Number, per-dim list, or adaptive")
      ->default_val("adaptive");
  evaluate->add_option("--out", eval.out, "Optional per-point CSV");
  evaluate->add_flag("--reference-uniform", eval.reference_uniform,
                     "Score the uniform density over the grid instead of a model");
  evaluate->add_option("--threads", eval.threads, "Worker threads")->default_val(1);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (simulate->parsed()) return Simulate(sim, out);
    if (train->parsed()) return Train(train_args, out, err);
    if (predict->parsed()) return Predict(pred, out, err);
    return Evaluate(eval, out, err);
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const DegenerateData& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerateData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace cdeforest::cli
