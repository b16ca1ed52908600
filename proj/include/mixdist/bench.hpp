#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixdist/treegen.hpp"

namespace mixdist::bench {

enum class Metric { naive, coloring, fast, nodal };

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

/// One row of bench CSV: n,shape,algo,repeats,seconds_median,distance
struct BenchRecord {
  std::uint64_t n = 0;
  Shape shape = Shape::random;
  Metric algo = Metric::fast;
  unsigned repeats = 0;
  double seconds_median = 0;
  std::string distance;         // time units for mixture engines, edge count for nodal
  std::vector<double> samples;  // per-repeat seconds
};

struct BenchConfig {
  std::vector<Shape> shapes{Shape::complete};
  std::vector<Metric> algos{Metric::fast};
  unsigned min_exp = 10;
  unsigned max_exp = 14;
  unsigned repeats = 5;
  std::uint64_t seed = 1;
  unsigned naive_cap_exp = 13;  // naive cells with n > 2^cap are skipped
};

inline constexpr unsigned kMinRepeats = 3;

/// Times one (n, shape, algo) cell on a deterministic tree pair: random shapes
/// use independent pairs, fixed shapes use permuted leaves. Only the distance
/// call is timed.
BenchRecord run_cell(std::uint64_t n, Shape shape, Metric algo, unsigned repeats, std::uint64_t seed);

/// Throws Error(InvalidSpec) on bad ranges or repeat counts. Rows are ordered
/// by shape, algo, then n.
std::vector<BenchRecord> run(const BenchConfig& config);

std::string csv_header();
std::string csv_row(const BenchRecord& record);

double median(std::vector<double> values);

/// Least-squares slope of log(seconds) against log(n).
double loglog_slope(std::span<const double> n, std::span<const double> seconds);

}  // namespace mixdist::bench
