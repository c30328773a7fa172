// spider-cli: generate bit vectors, build and verify indexes, and run the
// timing / prediction-accuracy benchmarks.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spider/bench.hpp"
#include "spider/datagen.hpp"
#include "spider/kernels.hpp"
#include "spider/serialize.hpp"
#include "spider/variants.hpp"

namespace {

using namespace spider;

struct dataset_options {
  std::string in;
  std::optional<uint64_t> n;
  double density = 0.5;
  uint64_t seed = 1;
};

void add_dataset_options(CLI::App* cmd, dataset_options& opts, bool allow_generate) {
  auto* in = cmd->add_option("--in", opts.in, "SPBV bit-vector file");
  if (allow_generate) {
    auto* n = cmd->add_option("--n", opts.n, "Generate a random vector of this many bits instead of --in");
    cmd->add_option("--density", opts.density, "Density for a generated vector")->capture_default_str();
    cmd->add_option("--data-seed", opts.seed, "Seed for a generated vector")->capture_default_str();
    in->excludes(n);
  } else {
    in->required();
  }
}

bit_vector load_dataset(const dataset_options& opts) {
  if (opts.n) return datagen::gen_random(*opts.n, opts.density, opts.seed);
  if (opts.in.empty()) throw std::invalid_argument("need --in or --n");
  return load_bit_vector(opts.in);
}

std::string dataset_label(const dataset_options& opts) {
  if (opts.n) return "random-" + std::to_string(opts.density);
  return std::filesystem::path(opts.in).filename().string();
}

void print_space(const space_report& space) {
  for (const auto& c : space.components) std::printf("  %-20s %14llu bytes\n", c.name, static_cast<unsigned long long>(c.bytes));
  std::printf("  overhead             %14.4f %%\n", space.overhead_percent());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPIDER rank/select bit vectors: datasets, indexes, verification and benchmarks"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a bit vector file");
  uint64_t gen_n = 0;
  double gen_density = 0.5;
  uint64_t gen_every = 0;
  std::string gen_text, gen_preset = "protein", gen_out;
  uint64_t gen_seed = 1;
  auto* gen_n_opt = gen->add_option("--n", gen_n, "Number of bits");
  gen->add_option("--density", gen_density, "Probability of a one bit")->capture_default_str();
  gen->add_option("--every", gen_every, "Evenly spaced ones: every k-th bit is set");
  auto* text_opt = gen->add_option("--text-file", gen_text, "Derive bits from the bytes of this file");
  gen->add_option("--preset", gen_preset, "Character map: wikipedia | protein | protein-even")->capture_default_str();
  gen->add_option("--seed", gen_seed, "PRNG seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output SPBV file")->required();
  text_opt->excludes(gen_n_opt);

  // build
  auto* build = app.add_subcommand("build", "Build an index and optionally save it");
  std::string build_structure_name = "spider", build_out;
  dataset_options build_data;
  build->add_option("--structure", build_structure_name, "Structure name")->capture_default_str();
  add_dataset_options(build, build_data, false);
  build->add_option("--out", build_out, "Index file (spider -> SPIX, ni-spider -> NIIX)");

  // verify
  auto* verify = app.add_subcommand("verify", "Check an index against the linear-scan oracle");
  std::string verify_structure_name = "spider", verify_sample = "full";
  dataset_options verify_data;
  uint64_t verify_seed = 1;
  verify->add_option("--structure", verify_structure_name, "Structure name or 'all'")->capture_default_str();
  add_dataset_options(verify, verify_data, true);
  verify->add_option("--sample", verify_sample, "Number of random queries per kind, or 'full'")->capture_default_str();
  verify->add_option("--seed", verify_seed, "Query seed")->capture_default_str();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Time rank/select queries (warmup + timed loops)");
  std::vector<std::string> bench_structures{"spider", "ni-spider"};
  std::string bench_kind = "both", bench_csv, bench_dataset;
  dataset_options bench_data;
  bench::bench_config bench_cfg;
  bench_cmd->add_option("--structure,--structures", bench_structures, "Structure names (repeatable or comma list)")
      ->delimiter(',')
      ->capture_default_str();
  add_dataset_options(bench_cmd, bench_data, true);
  bench_cmd->add_option("--warmup", bench_cfg.warmup, "Untimed warmup queries")->capture_default_str();
  bench_cmd->add_option("--queries", bench_cfg.queries, "Timed queries per repetition")->capture_default_str();
  bench_cmd->add_option("--reps", bench_cfg.reps, "Repetitions to average")->capture_default_str();
  bench_cmd->add_option("--kind", bench_kind, "rank | select | both")->capture_default_str();
  bench_cmd->add_option("--seed", bench_cfg.seed, "Workload seed")->capture_default_str();
  bench_cmd->add_option("--dataset", bench_dataset, "Dataset label for the CSV");
  bench_cmd->add_option("--csv", bench_csv, "Write CSV here instead of stdout");
  bool full_scale = false;
  bench_cmd->add_flag("--full-scale", full_scale, "Use 10^8 warmup and 10^8 timed queries");

  // accuracy
  auto* accuracy = app.add_subcommand("accuracy", "Mean wrong basic blocks per select query");
  std::string accuracy_structure_name = "spider";
  dataset_options accuracy_data;
  uint64_t accuracy_queries = 1'000'000, accuracy_seed = 1;
  accuracy->add_option("--structure", accuracy_structure_name, "Structure name or 'all'")->capture_default_str();
  add_dataset_options(accuracy, accuracy_data, true);
  accuracy->add_option("--queries", accuracy_queries, "Number of select queries")->capture_default_str();
  accuracy->add_option("--seed", accuracy_seed, "Query seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  auto structures_from = [](const std::string& text) {
    if (text == "all") return all_structures();
    return std::vector<structure_kind>{parse_structure(text)};
  };

  try {
    if (gen->parsed()) {
      bit_vector bv;
      if (!gen_text.empty()) {
        bv = datagen::text_to_bits(datagen::read_file_bytes(gen_text), datagen::preset_map(gen_preset));
      } else if (gen_every != 0) {
        bv = datagen::gen_every_kth(gen_n, gen_every);
      } else {
        bv = datagen::gen_random(gen_n, gen_density, gen_seed);
      }
      save_bit_vector(bv, gen_out);
      std::printf("wrote %s: n=%llu ones=%llu\n", gen_out.c_str(), static_cast<unsigned long long>(bv.size()),
                  static_cast<unsigned long long>(bv.ones()));
      return 0;
    }

    if (build->parsed()) {
      const auto kind = parse_structure(build_structure_name);
      const bit_vector bv = load_dataset(build_data);
      const auto start = std::chrono::steady_clock::now();
      const any_index index = build_structure(kind, bv);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::printf("%s: n=%llu ones=%llu build=%.3f ms kernels=%s\n", std::string(name(kind)).c_str(),
                  static_cast<unsigned long long>(bv.size()), static_cast<unsigned long long>(bv.ones()), ms,
                  std::string(kernels::best().name).c_str());
      print_space(index.space());
      if (!build_out.empty()) {
        if (const auto* s = std::get_if<spider_index>(&index.get())) {
          save_index(*s, build_out);
        } else if (const auto* ni = std::get_if<ni_spider_index>(&index.get())) {
          save_index(*ni, build_out);
        } else {
          throw std::invalid_argument("--out is only supported for spider and ni-spider");
        }
        std::printf("wrote %s\n", build_out.c_str());
      }
      return 0;
    }

    if (verify->parsed()) {
      const bit_vector bv = load_dataset(verify_data);
      std::optional<uint64_t> sample;
      if (verify_sample != "full") sample = std::stoull(verify_sample);
      bool all_passed = true;
      for (auto kind : structures_from(verify_structure_name)) {
        const auto result = bench::verify(build_structure(kind, bv), bv, sample, verify_seed);
        std::printf("%-20s %s  rank=%llu select=%llu%s%s\n", std::string(name(kind)).c_str(),
                    result.passed ? "PASS" : "FAIL", static_cast<unsigned long long>(result.rank_checked),
                    static_cast<unsigned long long>(result.select_checked), result.passed ? "" : "  ",
                    result.counterexample.c_str());
        all_passed = all_passed && result.passed;
      }
      return all_passed ? 0 : 1;
    }

    if (bench_cmd->parsed()) {
      const bit_vector bv = load_dataset(bench_data);
      bench_cfg.structures.clear();
      for (const auto& s : bench_structures) {
        for (auto kind : structures_from(s)) bench_cfg.structures.push_back(kind);
      }
      if (bench_kind == "both") {
        bench_cfg.kinds = {bench::query_kind::rank, bench::query_kind::select};
      } else {
        bench_cfg.kinds = {bench::parse_query_kind(bench_kind)};
      }
      if (full_scale) bench_cfg.warmup = bench_cfg.queries = 100'000'000;
      bench_cfg.dataset = bench_dataset.empty() ? dataset_label(bench_data) : bench_dataset;
      const auto reports = bench::run_bench(bench_cfg, bv);
      std::ofstream file;
      if (!bench_csv.empty()) {
        file.open(bench_csv);
        if (!file) throw std::runtime_error("cannot create " + bench_csv);
      }
      std::ostream& out = bench_csv.empty() ? std::cout : file;
      bench::write_csv_header(out);
      for (const auto& r : reports) bench::write_csv_row(out, r);
      for (const auto& r : reports) {
        if (std::adjacent_find(r.checksums.begin(), r.checksums.end(), std::not_equal_to<>()) != r.checksums.end()) {
          std::cerr << "warning: checksum differs across repetitions for " << r.structure << '\n';
        }
      }
      return 0;
    }

    if (accuracy->parsed()) {
      const bit_vector bv = load_dataset(accuracy_data);
      const auto queries =
          bench::make_workload(bench::query_kind::select, bv.size(), bv.ones(), accuracy_queries, accuracy_seed);
      for (auto kind : structures_from(accuracy_structure_name)) {
        const any_index index = build_structure(kind, bv);
        auto counts = bench::wrong_blocks(index, queries);
        const double mean = bench::accuracy_report(index, queries);
        std::sort(counts.begin(), counts.end());
        const uint64_t p999 = counts.empty() ? 0 : counts[std::min(counts.size() - 1, counts.size() * 999 / 1000)];
        std::printf("%-20s mean_wrong_blocks=%.6f p99.9=%llu max=%llu\n", std::string(name(kind)).c_str(), mean,
                    static_cast<unsigned long long>(p999),
                    static_cast<unsigned long long>(counts.empty() ? 0 : counts.back()));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
