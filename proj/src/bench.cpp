#include "mixdist/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "mixdist/distance.hpp"
#include "mixdist/error.hpp"
#include "mixdist/fast_distance.hpp"
#include "mixdist/nodal.hpp"

namespace mixdist::bench {

Metric parse_metric(std::string_view name) {
  if (name == "naive") return Metric::naive;
  if (name == "coloring") return Metric::coloring;
  if (name == "fast") return Metric::fast;
  if (name == "nodal") return Metric::nodal;
  throw Error(ErrorCode::InvalidSpec, "unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::naive: return "naive";
    case Metric::coloring: return "coloring";
    case Metric::fast: return "fast";
    case Metric::nodal: return "nodal";
  }
  return "unknown";
}

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

BenchRecord run_cell(std::uint64_t n, Shape shape, Metric algo, unsigned repeats, std::uint64_t seed) {
  GenSpec spec;
  spec.leaves = n;
  spec.seed = seed;
  spec.shape = shape;
  const auto mode = shape == Shape::random ? PairMode::independent : PairMode::permuted_leaves;
  const auto [t1, t2] = random_comparable_pair(spec, mode);

  BenchRecord record;
  record.n = n;
  record.shape = shape;
  record.algo = algo;
  record.repeats = repeats;
  for (unsigned r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    std::string distance;
    switch (algo) {
      case Metric::naive: distance = format_ticks_as_units(mixture_distance_bruteforce(t1, t2).ticks()); break;
      case Metric::coloring: distance = format_ticks_as_units(mixture_distance_coloring(t1, t2).ticks()); break;
      case Metric::fast: distance = format_ticks_as_units(mixture_distance_fast(t1, t2).ticks()); break;
      case Metric::nodal: distance = std::to_string(nodal_distance(t1, t2)); break;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    record.samples.push_back(elapsed.count());
    record.distance = std::move(distance);
  }
  record.seconds_median = median(record.samples);
  return record;
}

std::vector<BenchRecord> run(const BenchConfig& config) {
  if (config.min_exp > config.max_exp) throw Error(ErrorCode::InvalidSpec, "min-exp must not exceed max-exp");
  if (config.max_exp > 24) throw Error(ErrorCode::InvalidSpec, "max-exp above 24 is not supported");
  if (config.repeats < kMinRepeats) throw Error(ErrorCode::InvalidSpec, "repeats must be at least 3");
  if (config.shapes.empty() || config.algos.empty()) throw Error(ErrorCode::InvalidSpec, "nothing to run");

  std::vector<BenchRecord> rows;
  for (Shape shape : config.shapes) {
    for (Metric algo : config.algos) {
      for (unsigned e = config.min_exp; e <= config.max_exp; ++e) {
        if (algo == Metric::naive && e > config.naive_cap_exp) continue;
        rows.push_back(run_cell(1ULL << e, shape, algo, config.repeats, config.seed));
      }
    }
  }
  return rows;
}

std::string csv_header() { return "n,shape,algo,repeats,seconds_median,distance"; }

std::string csv_row(const BenchRecord& record) {
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.9f", record.seconds_median);
  return std::to_string(record.n) + "," + std::string(to_string(record.shape)) + "," +
         std::string(to_string(record.algo)) + "," + std::to_string(record.repeats) + "," + seconds + "," +
         record.distance;
}

double loglog_slope(std::span<const double> n, std::span<const double> seconds) {
  const std::size_t k = std::min(n.size(), seconds.size());
  if (k < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double x = std::log(n[i]);
    const double y = std::log(seconds[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = static_cast<double>(k) * sxx - sx * sx;
  return (static_cast<double>(k) * sxy - sx * sy) / denom;
}

}  // namespace mixdist::bench
