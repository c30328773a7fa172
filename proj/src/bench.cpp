#include "spider/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <variant>

#include "spider/errors.hpp"
#include "spider/oracle.hpp"

namespace spider::bench {

namespace {

using clock = std::chrono::steady_clock;

// Lemire's multiply-shift: uniform in [0, range) from one 64-bit draw.
uint64_t bounded(std::mt19937_64& rng, uint64_t range) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(rng()) * range) >> 64);
}

std::string mismatch(std::string_view what, uint64_t query, uint64_t expected, uint64_t got) {
  return std::string(what) + "(" + std::to_string(query) + "): expected " + std::to_string(expected) + ", got " +
         std::to_string(got);
}

double elapsed_ms(clock::time_point start) {
  return std::chrono::duration<double, std::milli>(clock::now() - start).count();
}

// Independent stream for warmup queries.
constexpr uint64_t warmup_seed_mix = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::string_view name(query_kind kind) noexcept { return kind == query_kind::rank ? "rank" : "select"; }

query_kind parse_query_kind(std::string_view text) {
  if (text == "rank") return query_kind::rank;
  if (text == "select") return query_kind::select;
  throw std::invalid_argument("unknown query kind: " + std::string(text));
}

workload make_workload(query_kind kind, uint64_t n, uint64_t n1, uint64_t count, uint64_t seed) {
  if (kind == query_kind::select && n1 == 0) throw empty_select_error("select workload on a vector without ones");
  if (kind == query_kind::rank && n == 0) throw std::invalid_argument("rank workload on an empty vector");
  workload w{kind, {}, seed};
  w.queries.resize(count);
  std::mt19937_64 rng(seed);
  for (uint64_t& q : w.queries) q = kind == query_kind::rank ? bounded(rng, n) : 1 + bounded(rng, n1);
  return w;
}

verify_result verify(const any_index& index, const bit_vector& bv, std::optional<uint64_t> sample, uint64_t seed) {
  verify_result result;
  if (index.size() != bv.size() || index.ones() != bv.ones()) {
    result.passed = false;
    result.counterexample = "size/ones mismatch: index (" + std::to_string(index.size()) + ", " +
                            std::to_string(index.ones()) + ") vs vector (" + std::to_string(bv.size()) + ", " +
                            std::to_string(bv.ones()) + ")";
    return result;
  }

  auto fail = [&](std::string message) {
    result.passed = false;
    result.counterexample = std::move(message);
    return result;
  };

  try {
    if (!sample) {
      const oracle::table expected(bv);
      for (uint64_t i = 0; i < bv.size(); ++i, ++result.rank_checked) {
        const uint64_t got = index.rank(i);
        if (got != expected.rank(i)) return fail(mismatch("rank", i, expected.rank(i), got));
      }
      for (uint64_t j = 1; j <= bv.ones(); ++j, ++result.select_checked) {
        const uint64_t got = index.select(j);
        if (got != expected.select(j)) return fail(mismatch("select", j, expected.select(j), got));
      }
      return result;
    }

    auto positions = make_workload(query_kind::rank, bv.size(), bv.ones(), *sample, seed).queries;
    std::sort(positions.begin(), positions.end());
    const auto ranks = oracle::rank_sorted(bv, positions);
    for (uint64_t q = 0; q < positions.size(); ++q, ++result.rank_checked) {
      const uint64_t got = index.rank(positions[q]);
      if (got != ranks[q]) return fail(mismatch("rank", positions[q], ranks[q], got));
    }
    if (bv.ones() == 0) return result;
    auto js = make_workload(query_kind::select, bv.size(), bv.ones(), *sample, seed + 1).queries;
    std::sort(js.begin(), js.end());
    const auto selects = oracle::select_sorted(bv, js);
    for (uint64_t q = 0; q < js.size(); ++q, ++result.select_checked) {
      const uint64_t got = index.select(js[q]);
      if (got != selects[q]) return fail(mismatch("select", js[q], selects[q], got));
    }
  } catch (const std::exception& e) {
    return fail(std::string("query threw: ") + e.what());
  }
  return result;
}

std::vector<uint64_t> wrong_blocks(const any_index& index, const workload& queries) {
  if (queries.kind != query_kind::select) throw std::invalid_argument("wrong_blocks: needs a select workload");
  std::vector<uint64_t> out;
  out.reserve(queries.queries.size());
  std::visit(
      [&](const auto& idx) {
        for (uint64_t j : queries.queries) out.push_back(idx.select_instrumented(j).wrong_blocks);
      },
      index.get());
  return out;
}

double accuracy_report(const any_index& index, const workload& queries) {
  if (index.ones() == 0) throw empty_select_error("accuracy_report: vector has no ones");
  const auto counts = wrong_blocks(index, queries);
  if (counts.empty()) return 0.0;
  return static_cast<double>(std::accumulate(counts.begin(), counts.end(), uint64_t{0})) /
         static_cast<double>(counts.size());
}

timing time_queries(const any_index& index, const workload& warmup, const workload& timed) {
  return std::visit(
      [&](const auto& idx) {
        auto run = [&idx](const workload& w) {
          uint64_t checksum = 0;
          if (w.kind == query_kind::rank) {
            for (uint64_t q : w.queries) checksum += idx.rank(q);
          } else {
            for (uint64_t q : w.queries) checksum += idx.select(q);
          }
          return checksum;
        };
        timing t;
        t.checksum = run(warmup);  // folded in so the warmup loop is not elided
        const auto start = clock::now();
        const uint64_t timed_sum = run(timed);
        const auto ns = std::chrono::duration<double, std::nano>(clock::now() - start).count();
        t.checksum = timed_sum;
        t.mean_ns = timed.queries.empty() ? 0.0 : ns / static_cast<double>(timed.queries.size());
        return t;
      },
      index.get());
}

std::vector<bench_report> run_bench(const bench_config& config, const bit_vector& bv) {
  if (config.reps == 0) throw std::invalid_argument("run_bench: reps must be at least 1");
  if (bv.empty()) throw std::invalid_argument("run_bench: empty bit vector");
  const bool wants_select =
      std::find(config.kinds.begin(), config.kinds.end(), query_kind::select) != config.kinds.end();
  if (wants_select && bv.ones() == 0) {
    throw std::invalid_argument("run_bench: select workload requested on a vector without ones");
  }

  const double density = static_cast<double>(bv.ones()) / static_cast<double>(bv.size());
  std::vector<bench_report> reports;
  for (structure_kind kind : config.structures) {
    any_index index;
    double build_total = 0;
    for (unsigned r = 0; r < config.reps; ++r) {
      index = any_index{};
      const auto start = clock::now();
      index = build_structure(kind, bv);
      build_total += elapsed_ms(start);
    }
    const double build_ms = build_total / config.reps;

    for (query_kind qk : config.kinds) {
      const auto warmup = make_workload(qk, bv.size(), bv.ones(), config.warmup, config.seed ^ warmup_seed_mix);
      const auto timed = make_workload(qk, bv.size(), bv.ones(), config.queries, config.seed);
      bench_report report;
      report.structure = std::string(name(kind));
      report.dataset = config.dataset;
      report.n = bv.size();
      report.density = density;
      report.kind = qk;
      report.build_ms = build_ms;
      report.space = index.space();
      report.reps = config.reps;
      report.seed = config.seed;
      double total_ns = 0;
      for (unsigned r = 0; r < config.reps; ++r) {
        const timing t = time_queries(index, warmup, timed);
        total_ns += t.mean_ns;
        report.checksums.push_back(t.checksum);
      }
      report.mean_ns = total_ns / config.reps;
      if (qk == query_kind::select) report.mean_wrong_blocks = accuracy_report(index, timed);
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

void write_csv_header(std::ostream& out) {
  out << "structure,dataset,n,density,kind,build_ms,space_pct,mean_ns,mean_wrong_blocks,reps,seed\n";
}

void write_csv_row(std::ostream& out, const bench_report& r) {
  out << r.structure << ',' << r.dataset << ',' << r.n << ',' << r.density << ',' << name(r.kind) << ','
      << r.build_ms << ',' << r.space.overhead_percent() << ',' << r.mean_ns << ',';
  if (r.mean_wrong_blocks) out << *r.mean_wrong_blocks;
  out << ',' << r.reps << ',' << r.seed << '\n';
}

}  // namespace spider::bench
