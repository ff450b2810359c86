// mxyz: build, verify, and simulate the Majorana-XYZ subsystem code on an
// LxL triangular torus. Emits deterministic JSON reports (sorted keys, no
// timestamps unless requested) so runs are diff-able.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "mxyz/analysis.hpp"
#include "mxyz/code.hpp"
#include "mxyz/report.hpp"
#include "mxyz/simulator.hpp"

namespace {

struct GlobalOpts {
  unsigned threads = 0;  // 0 = auto
  bool timestamps = false;
  std::string out = "-";
};

unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void stamp(mxyz::json& report, const GlobalOpts& g) {
  if (!g.timestamps) return;
  const auto now = std::chrono::system_clock::now();
  report["timestamp_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          now.time_since_epoch())
          .count();
}

int emit(const mxyz::json& report, const GlobalOpts& g) {
  const std::string text = report.dump(2) + "\n";
  if (g.out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file: " << g.out << "\n";
    return 2;
  }
  f << text;
  return 0;
}

mxyz::json census_to_json(const mxyz::ErrorCensus& census) {
  mxyz::json rows = mxyz::json::array();
  for (const auto& r : census.rows)
    rows.push_back({{"weight", r.weight},
                    {"detectable", r.detectable},
                    {"gauge", r.gauge},
                    {"logical", r.logical}});
  mxyz::json j;
  j["rows"] = rows;
  j["gauge_w3"] = census.gauge_w3;
  j["gauge_w3_scaled_triangle"] = census.gauge_w3_scaled_triangle;
  j["gauge_w4"] = census.gauge_w4;
  j["gauge_w4_two_triangle"] = census.gauge_w4_two_triangle;
  j["w4_mixed_orientation_pairs"] = census.w4_mixed_orientation_pairs;
  j["w4_same_orientation_pairs"] = census.w4_same_orientation_pairs;
  mxyz::json ge = mxyz::json::array(), le = mxyz::json::array();
  for (const auto& p : census.gauge_examples) ge.push_back(p.str());
  for (const auto& p : census.logical_examples) le.push_back(p.str());
  j["gauge_examples"] = ge;
  j["logical_examples"] = le;
  return j;
}

int cmd_build(std::size_t L, const GlobalOpts& g) {
  const mxyz::CodeStructure code = mxyz::build_code(L);
  mxyz::json report = mxyz::code_to_json(code);
  stamp(report, g);
  return emit(report, g);
}

int cmd_verify(std::size_t L, std::size_t max_weight,
               std::size_t distance_budget, uint64_t seed,
               const GlobalOpts& g) {
  const mxyz::CodeStructure code = mxyz::build_code(L);
  const mxyz::VerificationReport rep = mxyz::verify_all(code, seed);
  mxyz::json results;
  results["L"] = L;
  results["params"] = mxyz::params_to_json(code.params);
  results["closed_forms"] = mxyz::closed_forms_to_json(rep.closed_forms);
  results["closed_forms_all_match"] = rep.all_closed_forms_match();
  if (max_weight > 0)
    results["census"] = census_to_json(mxyz::classify_exhaustive(code, max_weight));
  if (distance_budget > 0) {
    const auto cert = mxyz::certify_distance(code, distance_budget);
    mxyz::json d;
    d["lower_bound"] = cert.lower_bound;
    if (cert.distance) d["d"] = *cert.distance;
    if (cert.witness) d["witness"] = cert.witness->str();
    results["distance"] = d;
  }
  mxyz::json report = mxyz::make_report(
      "verify",
      {{"L", L},
       {"max_weight", max_weight},
       {"distance_budget", distance_budget},
       {"seed", seed}},
      results, mxyz::checks_to_json(rep.checks));
  stamp(report, g);
  const int rc = emit(report, g);
  if (rc != 0) return rc;
  return rep.all_checks_pass() ? 0 : 1;
}

int cmd_distance(std::size_t L, std::size_t budget, const GlobalOpts& g) {
  const mxyz::CodeStructure code = mxyz::build_code(L);
  if (budget == 0) budget = L;  // a single loop is a weight-L logical
  const auto cert = mxyz::certify_distance(code, budget);
  mxyz::json results;
  results["L"] = L;
  results["lower_bound"] = cert.lower_bound;
  if (cert.distance) results["d"] = *cert.distance;
  if (cert.witness) results["witness"] = cert.witness->str();
  mxyz::json report = mxyz::make_report(
      "distance", {{"L", L}, {"budget", budget}}, results);
  stamp(report, g);
  return emit(report, g);
}

int cmd_classify(std::size_t L, std::size_t max_weight, const GlobalOpts& g) {
  const mxyz::CodeStructure code = mxyz::build_code(L);
  const auto census = mxyz::classify_exhaustive(code, max_weight);
  mxyz::json report = mxyz::make_report(
      "classify", {{"L", L}, {"max_weight", max_weight}},
      census_to_json(census));
  stamp(report, g);
  return emit(report, g);
}

int cmd_sample(std::size_t L, double p, uint64_t shots, uint64_t seed,
               const std::string& csv_path, const GlobalOpts& g) {
  const mxyz::CodeStructure code = mxyz::build_code(L);
  const mxyz::NoiseModel noise(p);
  const mxyz::DecoderTable dec = mxyz::build_decoder(code);
  const auto mc = mxyz::monte_carlo(code, dec, noise, shots, seed,
                                    effective_threads(g.threads));
  mxyz::json results;
  results["L"] = L;
  results["p"] = p;
  results["shots"] = mc.shots;
  results["failures"] = mc.failures;
  results["rate"] = mc.rate;
  results["ci_low"] = mc.ci.low;
  results["ci_high"] = mc.ci.high;
  results["unknown_syndrome_count"] = mc.unknown_syndromes;
  results["seed"] = seed;
  results["t"] = dec.t;
  mxyz::json report = mxyz::make_report(
      "sample", {{"L", L}, {"p", p}, {"shots", shots}, {"seed", seed}},
      results);
  stamp(report, g);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) {
      std::cerr << "error: cannot open CSV file: " << csv_path << "\n";
      return 2;
    }
    csv << "L,p,shots,failures,rate,ci_low,ci_high,unknown_syndrome_count,"
           "seed\n";
    char line[256];
    std::snprintf(line, sizeof line,
                  "%zu,%.17g,%llu,%llu,%.17g,%.17g,%.17g,%llu,%llu\n", L, p,
                  static_cast<unsigned long long>(mc.shots),
                  static_cast<unsigned long long>(mc.failures), mc.rate,
                  mc.ci.low, mc.ci.high,
                  static_cast<unsigned long long>(mc.unknown_syndromes),
                  static_cast<unsigned long long>(seed));
    csv << line;
  }
  return emit(report, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana-XYZ subsystem code toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--threads", g.threads,
                 "Worker threads (0 = available parallelism)");
  app.add_flag("--timestamps", g.timestamps, "Include a timestamp in reports");
  app.add_option("--out", g.out, "Output path ('-' = stdout)");

  std::size_t L = 3;
  std::size_t max_weight = 0;
  std::size_t distance_budget = 0;
  uint64_t seed = 0;
  uint64_t shots = 0;
  double p = 0.0;
  std::string csv_path;

  auto* build = app.add_subcommand("build", "Construct the code and emit its JSON description");
  build->fallthrough();
  build->add_option("--L", L, "Lattice size (L >= 3)")->required();

  auto* verify = app.add_subcommand("verify", "Run the full invariant suite");
  verify->fallthrough();
  verify->add_option("--L", L, "Lattice size (L >= 3)")->required();
  verify->add_option("--max-weight", max_weight,
                     "Also run the exhaustive error census up to this weight");
  verify->add_option("--distance-budget", distance_budget,
                     "Also certify the distance up to this weight");
  verify->add_option("--seed", seed, "Seed for randomized checks");

  auto* distance = app.add_subcommand("distance", "Certify the code distance");
  distance->fallthrough();
  distance->add_option("--L", L, "Lattice size (L >= 3)")->required();
  distance->add_option("--budget", distance_budget,
                       "Search weight budget (default: L)");

  auto* classify = app.add_subcommand("classify", "Exhaustive error census");
  classify->fallthrough();
  classify->add_option("--L", L, "Lattice size (L >= 3)")->required();
  classify->add_option("--max-weight", max_weight, "Maximum error weight")
      ->required();

  auto* sample = app.add_subcommand("sample", "Monte-Carlo decoding run");
  sample->fallthrough();
  sample->add_option("--L", L, "Lattice size (L >= 3)")->required();
  sample->add_option("--p", p, "Depolarizing probability")->required();
  sample->add_option("--shots", shots, "Number of shots")->required();
  sample->add_option("--seed", seed, "RNG seed")->required();
  sample->add_option("--csv", csv_path, "Also write a one-row CSV summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(L, g);
    if (verify->parsed())
      return cmd_verify(L, max_weight, distance_budget, seed, g);
    if (distance->parsed()) return cmd_distance(L, distance_budget, g);
    if (classify->parsed()) return cmd_classify(L, max_weight, g);
    if (sample->parsed()) return cmd_sample(L, p, shots, seed, csv_path, g);
  } catch (const std::exception& e) {
    mxyz::json err;
    err["error"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
  return 2;
}
