#pragma once

// Measurement harness: seeded workloads, oracle verification, prediction
// accuracy and the warmup/timed query protocol, with CSV output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spider/bit_vector.hpp"
#include "spider/variants.hpp"

namespace spider::bench {

enum class query_kind { rank, select };

std::string_view name(query_kind kind) noexcept;
query_kind parse_query_kind(std::string_view text);

struct workload {
  query_kind kind = query_kind::rank;
  std::vector<uint64_t> queries;
  uint64_t seed = 0;
};

/// Uniform queries: rank positions in [0, n-1], select ranks in [1, n1].
/// Throws empty_select_error for a select workload when n1 == 0.
workload make_workload(query_kind kind, uint64_t n, uint64_t n1, uint64_t count, uint64_t seed);

struct verify_result {
  bool passed = true;
  uint64_t rank_checked = 0;
  uint64_t select_checked = 0;
  std::string counterexample;  // first mismatch, empty on success
};

/// Compares the index against the linear-scan oracle. `sample` = nullopt
/// checks every rank(i) and every select(j); otherwise that many random
/// queries of each kind. Select is skipped when the vector has no ones.
verify_result verify(const any_index& index, const bit_vector& bv, std::optional<uint64_t> sample,
                     uint64_t seed = 1);

/// Mean wrong_blocks over a select workload.
double accuracy_report(const any_index& index, const workload& queries);

/// wrong_blocks per query, in workload order.
std::vector<uint64_t> wrong_blocks(const any_index& index, const workload& queries);

struct timing {
  double mean_ns = 0;
  uint64_t checksum = 0;
};

/// Runs `warmup` untimed, then `timed` under a monotonic clock.
timing time_queries(const any_index& index, const workload& warmup, const workload& timed);

struct bench_config {
  std::vector<structure_kind> structures{structure_kind::spider, structure_kind::ni_spider};
  std::vector<query_kind> kinds{query_kind::rank, query_kind::select};
  uint64_t warmup = 1'000'000;
  uint64_t queries = 1'000'000;
  unsigned reps = 5;
  uint64_t seed = 1;
  std::string dataset = "dataset";
};

struct bench_report {
  std::string structure;
  std::string dataset;
  uint64_t n = 0;
  double density = 0;
  query_kind kind = query_kind::rank;
  double build_ms = 0;
  space_report space;
  double mean_ns = 0;
  std::optional<double> mean_wrong_blocks;  // select only
  unsigned reps = 0;
  uint64_t seed = 0;
  std::vector<uint64_t> checksums;  // one per repetition
};

/// Builds each structure `reps` times (averaging build time), then per query
/// kind runs `reps` repetitions of warmup + timed loops over pre-generated
/// workloads. Warmup and timed workloads use independent seeds. Throws
/// std::invalid_argument for a select workload on a vector without ones.
std::vector<bench_report> run_bench(const bench_config& config, const bit_vector& bv);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const bench_report& report);

}  // namespace spider::bench
