#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mixdist/bench.hpp"

using namespace mixdist;
using namespace mixdist::bench;

TEST(Bench, Median) {
  EXPECT_DOUBLE_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
}

TEST(Bench, LoglogSlopeOfPowerLaw) {
  std::vector<double> n;
  std::vector<double> quadratic;
  std::vector<double> linear;
  for (int e = 8; e <= 14; ++e) {
    n.push_back(std::ldexp(1.0, e));
    quadratic.push_back(3e-9 * n.back() * n.back());
    linear.push_back(5e-7 * n.back());
  }
  EXPECT_NEAR(loglog_slope(n, quadratic), 2.0, 1e-9);
  EXPECT_NEAR(loglog_slope(n, linear), 1.0, 1e-9);
}

TEST(Bench, CsvShape) {
  EXPECT_EQ(csv_header(), "n,shape,algo,repeats,seconds_median,distance");
  const auto record = run_cell(64, Shape::complete, Metric::fast, 3, 1);
  EXPECT_EQ(record.samples.size(), 3u);
  EXPECT_GT(record.seconds_median, 0.0);
  const auto row = csv_row(record);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 5);
  EXPECT_EQ(row.rfind("64,complete,fast,3,", 0), 0u) << row;
}

TEST(Bench, DistancesAgreeAcrossEngines) {
  for (auto shape : {Shape::random, Shape::complete, Shape::caterpillar}) {
    const auto naive = run_cell(32, shape, Metric::naive, 3, 5).distance;
    EXPECT_EQ(run_cell(32, shape, Metric::coloring, 3, 5).distance, naive);
    EXPECT_EQ(run_cell(32, shape, Metric::fast, 3, 5).distance, naive);
  }
}

TEST(Bench, RunCoversGridAndCapsNaive) {
  BenchConfig config;
  config.shapes = {Shape::complete, Shape::caterpillar};
  config.algos = {Metric::naive, Metric::fast, Metric::nodal};
  config.min_exp = 3;
  config.max_exp = 5;
  config.repeats = 3;
  config.naive_cap_exp = 4;
  const auto records = run(config);
  // 2 shapes x 3 sizes x 3 algos, minus naive at 2^5 for each shape.
  EXPECT_EQ(records.size(), 16u);
  for (const auto& r : records) {
    if (r.algo == Metric::naive) EXPECT_LE(r.n, 16u);
  }
}

TEST(Bench, RejectsBadConfig) {
  BenchConfig reversed;
  reversed.min_exp = 6;
  reversed.max_exp = 5;
  EXPECT_THROW(run(reversed), Error);
  BenchConfig few;
  few.repeats = 2;
  EXPECT_THROW(run(few), Error);
  EXPECT_THROW(parse_metric("slow"), Error);
}
