// mixdist: mixture distance between mutation-timed binary trees.
//
//   mixdist dist A.nwk B.nwk [--algo naive|coloring|fast|nodal] [--normalize] [--raw-ticks]
//   mixdist dist PAIR.nwk ...            (first two trees of one file)
//   mixdist validate FILE [--weak]
//   mixdist gen --leaves N [--seed S] [--shape random|complete|caterpillar] [--pair MODE] [--out PATH]
//   mixdist bench [--shapes L] [--algos L] [--min-exp A] [--max-exp B] [--repeats R] [--seed S]
//
// Exit codes: 0 ok, 2 parse/validation/spec error, 3 trees not comparable, 4 overflow.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixdist/bench.hpp"
#include "mixdist/distance.hpp"
#include "mixdist/error.hpp"
#include "mixdist/fast_distance.hpp"
#include "mixdist/newick.hpp"
#include "mixdist/nodal.hpp"
#include "mixdist/treegen.hpp"

namespace {

using namespace mixdist;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCompare = 3;
constexpr int kExitOverflow = 4;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotComparable: return kExitCompare;
    case ErrorCode::Overflow: return kExitOverflow;
    default: return kExitInput;
  }
}

// Error already carrying its file/line context.
struct ReportedError {
  ErrorCode code;
  std::string line;
};

[[noreturn]] void fail(ErrorCode code, const std::string& where, const std::string& what) {
  std::string line{error_prefix(code)};
  line += ' ';
  if (!where.empty()) line += where + ": ";
  line += what;
  throw ReportedError{code, line};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::EmptyInput, path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<MixtureTree> load_trees(const std::string& path, Strictness strictness) {
  std::vector<MixtureTree> trees;
  for (const auto& line : split_tree_lines(read_file(path))) {
    try {
      trees.push_back(parse_newick(line.text, strictness));
    } catch (const Error& e) {
      fail(e.code(), path + ":" + std::to_string(line.line_number), e.what());
    }
  }
  if (trees.empty()) fail(ErrorCode::EmptyInput, path, "EmptyInput: no tree in file");
  return trees;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// Rounds numerator / denominator to the nearest integer, halves up.
uint128 rounded_quotient(uint128 numerator, uint128 denominator) {
  return (numerator + denominator / 2) / denominator;
}

struct DistOptions {
  std::vector<std::string> files;
  std::string algo = "fast";
  bool normalize = false;
  bool raw_ticks = false;
  bool weak = false;
};

int cmd_dist(const DistOptions& opt) {
  const Strictness strictness = opt.weak ? Strictness::weak : Strictness::strict;
  std::vector<MixtureTree> trees;
  if (opt.files.size() == 1) {
    trees = load_trees(opt.files[0], strictness);
    if (trees.size() < 2) fail(ErrorCode::EmptyInput, opt.files[0], "a single file must hold two trees");
  } else {
    trees.push_back(std::move(load_trees(opt.files[0], strictness).front()));
    trees.push_back(std::move(load_trees(opt.files[1], strictness).front()));
  }
  const MixtureTree& t1 = trees[0];
  const MixtureTree& t2 = trees[1];

  const uint128 n = t1.leaf_count();
  const uint128 pairs = n * (n - 1) / 2;
  if (opt.normalize && n < 2) fail(ErrorCode::InvalidSpec, "", "InvalidSpec: --normalize needs at least two leaves");

  try {
    if (opt.algo == "nodal") {
      const std::uint64_t d = nodal_distance(t1, t2);
      if (opt.normalize) {
        std::cout << format_ticks_as_units(rounded_quotient(static_cast<uint128>(d) * kTicksPerUnit, pairs)) << '\n';
      } else {
        std::cout << d << '\n';
      }
      return kExitOk;
    }
    const uint128 ticks = mixture_distance(t1, t2, parse_algorithm(opt.algo)).ticks();
    const uint128 shown = opt.normalize ? rounded_quotient(ticks, pairs) : ticks;
    std::cout << (opt.raw_ticks ? to_string(shown) : format_ticks_as_units(shown)) << '\n';
  } catch (const Error& e) {
    fail(e.code(), "", e.what());
  }
  return kExitOk;
}

int cmd_validate(const std::string& path, bool weak) {
  const auto lines = split_tree_lines(read_file(path));
  if (lines.empty()) fail(ErrorCode::EmptyInput, path, "EmptyInput: no tree in file");

  bool ok = true;
  for (const auto& line : lines) {
    const std::string where = path + ":" + std::to_string(line.line_number);
    try {
      const auto tree = MixtureTree::assemble(parse_newick_records(line.text));
      const auto report = validate(tree, weak ? Strictness::weak : Strictness::strict);
      for (const auto& v : report.violations) {
        ok = false;
        std::cout << where << ": " << error_prefix(v.code) << ' ' << to_string(v.code) << " at node "
                  << to_index(v.node) << ": " << v.message << '\n';
      }
    } catch (const Error& e) {
      ok = false;
      std::cout << where << ": " << error_prefix(e.code()) << ' ' << e.what() << '\n';
    }
  }
  if (ok) std::cout << "OK\n";
  return ok ? kExitOk : kExitInput;
}

struct GenOptions {
  std::uint64_t leaves = 0;
  std::uint64_t seed = 0;
  std::string shape = "random";
  std::string pair;
  std::string time_model = "unit";
  std::uint64_t max_step = kTicksPerUnit;
  std::uint64_t jitter = kDefaultPairJitter;
  std::string out;
};

int cmd_gen(const GenOptions& opt) {
  std::string text;
  try {
    GenSpec spec;
    spec.leaves = opt.leaves;
    spec.seed = opt.seed;
    spec.shape = parse_shape(opt.shape);
    if (opt.time_model == "unit") {
      spec.time_model = TimeModel::unit();
    } else if (opt.time_model == "jitter") {
      spec.time_model = TimeModel::jitter(opt.max_step);
    } else {
      throw Error(ErrorCode::InvalidSpec, "unknown time model '" + opt.time_model + "'");
    }
    if (opt.pair.empty()) {
      text = write_newick(random_mixture_tree(spec)) + "\n";
    } else {
      const auto [a, b] = random_comparable_pair(spec, parse_pair_mode(opt.pair), opt.jitter);
      text = write_newick(a) + "\n" + write_newick(b) + "\n";
    }
  } catch (const Error& e) {
    fail(ErrorCode::InvalidSpec, "", e.what());
  }

  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidSpec, opt.out, "cannot write file");
    out << text;
  }
  return kExitOk;
}

struct BenchOptions {
  std::string shapes = "complete";
  std::string algos = "fast";
  unsigned min_exp = 10;
  unsigned max_exp = 14;
  unsigned repeats = 5;
  std::uint64_t seed = 1;
  unsigned naive_cap = 13;
  bool verbose = false;
};

int cmd_bench(const BenchOptions& opt) {
  std::vector<bench::BenchRecord> rows;
  try {
    bench::BenchConfig config;
    config.shapes.clear();
    config.algos.clear();
    for (const auto& s : split_list(opt.shapes)) config.shapes.push_back(parse_shape(s));
    for (const auto& a : split_list(opt.algos)) config.algos.push_back(bench::parse_metric(a));
    config.min_exp = opt.min_exp;
    config.max_exp = opt.max_exp;
    config.repeats = opt.repeats;
    config.seed = opt.seed;
    config.naive_cap_exp = opt.naive_cap;
    rows = bench::run(config);
  } catch (const Error& e) {
    fail(ErrorCode::InvalidSpec, "", e.what());
  }

  std::cout << bench::csv_header() << '\n';
  for (const auto& row : rows) {
    std::cout << bench::csv_row(row) << '\n';
    if (opt.verbose) {
      std::cerr << row.n << ',' << to_string(row.shape) << ',' << to_string(row.algo);
      for (double s : row.samples) std::cerr << ',' << s;
      std::cerr << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixture distance between mutation-timed rooted binary trees"};
  app.require_subcommand(1);

  DistOptions dist;
  auto* dist_cmd = app.add_subcommand("dist", "Distance between two trees");
  dist_cmd->add_option("files", dist.files, "Two tree files, or one file holding two trees")
      ->required()
      ->expected(1, 2);
  dist_cmd->add_option("--algo", dist.algo, "naive | coloring | fast | nodal")
      ->check(CLI::IsMember({"naive", "coloring", "fast", "nodal"}));
  dist_cmd->add_flag("--normalize", dist.normalize, "Divide by the number of leaf pairs");
  dist_cmd->add_flag("--raw-ticks", dist.raw_ticks, "Print ticks (1e-6 time units) instead of time units");
  dist_cmd->add_flag("--weak", dist.weak, "Accept equal parent/child times");

  std::string validate_path;
  bool validate_weak = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check every tree in a file");
  validate_cmd->add_option("path", validate_path, "Tree file")->required();
  validate_cmd->add_flag("--weak", validate_weak, "Accept equal parent/child times");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random trees");
  gen_cmd->add_option("--leaves", gen.leaves, "Leaf count")->required();
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--shape", gen.shape, "random | complete | caterpillar");
  gen_cmd->add_option("--pair", gen.pair, "independent | same_topology_jittered_times | permuted_leaves");
  gen_cmd->add_option("--time-model", gen.time_model, "unit | jitter");
  gen_cmd->add_option("--max-step", gen.max_step, "Largest merge step in ticks for --time-model jitter");
  gen_cmd->add_option("--jitter", gen.jitter, "Largest per-step time offset in ticks for jittered pairs");
  gen_cmd->add_option("--out", gen.out, "Output file (default: standard output)");

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Time the engines and print CSV");
  bench_cmd->add_option("--shapes", bench_opt.shapes, "Comma-separated shapes");
  bench_cmd->add_option("--algos", bench_opt.algos, "Comma-separated algorithms");
  bench_cmd->add_option("--min-exp", bench_opt.min_exp, "Smallest n = 2^A");
  bench_cmd->add_option("--max-exp", bench_opt.max_exp, "Largest n = 2^B");
  bench_cmd->add_option("--repeats", bench_opt.repeats, "Repeats per cell (>= 3)");
  bench_cmd->add_option("--seed", bench_opt.seed, "64-bit seed");
  bench_cmd->add_option("--naive-cap", bench_opt.naive_cap, "Skip naive cells above n = 2^cap");
  bench_cmd->add_flag("--verbose", bench_opt.verbose, "Per-repeat times on standard error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*dist_cmd) return cmd_dist(dist);
    if (*validate_cmd) return cmd_validate(validate_path, validate_weak);
    if (*gen_cmd) return cmd_gen(gen);
    if (*bench_cmd) return cmd_bench(bench_opt);
  } catch (const ReportedError& e) {
    std::cerr << e.line << '\n';
    return exit_code_for(e.code);
  } catch (const Error& e) {
    std::cerr << error_prefix(e.code()) << ' ' << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitInput;
}
