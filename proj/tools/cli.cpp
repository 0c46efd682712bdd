#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "revsynth/rng.hpp"
#include "revsynth/synth.hpp"

namespace revsynth::cli {

namespace {

struct ModelFlags {
  int toffoli = 15;
  std::string mct = "12m22";
  int full_factor = 2;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model-toffoli", toffoli,
                    "Elementary cost of a Toffoli gate");
    cmd->add_option("--model-mct", mct, "Linear-range formula")
        ->check(CLI::IsMember({"12m22", "14m22"}));
    cmd->add_option("--model-full-factor", full_factor,
                    "Constant factor on the n^2 full-control cost");
  }

  CostModel model() const {
    CostModel m;
    m.toffoli_cost = toffoli;
    m.mct_small_slope = mct == "14m22" ? 14 : 12;
    m.mct_full_factor = full_factor;
    return m;
  }
};

Permutation load_truth_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_truth_table(in);
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_circuit(in);
}

// Verification bound: a 2^20 table times the gate list is the largest
// check we run; wider requests are refused rather than skipped.
constexpr int kVerifyCap = 20;

int verify_against(const Circuit& c, const Permutation& p, std::ostream& out,
                   std::ostream& err) {
  if (c.width() != p.width()) {
    err << "width mismatch: circuit has " << c.width() << " wires, table has "
        << p.width() << "\n";
    return kExitVerifyFailed;
  }
  const Permutation sim = simulate(c);
  for (std::uint64_t x = 0; x < p.size(); ++x) {
    if (sim(x) != p(x)) {
      err << "mismatch at input " << x << ": circuit gives " << sim(x)
          << ", table gives " << p(x) << "\n";
      return kExitVerifyFailed;
    }
  }
  out << "verified: " << p.size() << " inputs match\n";
  return kExitOk;
}

int cmd_synth(const std::string& input, const std::string& output,
              const std::string& rest, bool verify, int pmh_section,
              const ModelFlags& flags, std::ostream& out, std::ostream& err) {
  const Permutation p = load_truth_table(input);
  SynthOptions opts;
  opts.rest_strategy = rest == "naive" ? SynthOptions::Rest::Naive
                                       : SynthOptions::Rest::Improved;
  opts.cost_model = flags.model();
  opts.pmh_section_size = pmh_section;
  const auto [circuit, report] = synthesize(p, opts);

  if (verify) {
    if (p.width() > kVerifyCap) {
      err << "refusing to verify above " << kVerifyCap << " wires\n";
      return kExitTooWide;
    }
    if (const int rc = verify_against(circuit, p, out, err); rc != kExitOk)
      return rc;
  }

  std::ofstream circuit_out(output);
  if (!circuit_out) throw Error("cannot write '" + output + "'");
  emit_circuit(circuit, circuit_out);
  std::ofstream report_out(output + ".report.json");
  if (!report_out) throw Error("cannot write '" + output + ".report.json'");
  report_out << report.to_json();

  out << "wrote " << report.gate_count << " gates ("
      << report.elementary_estimate << " elementary) to " << output << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& circuit_path, const std::string& table_path,
               std::ostream& out, std::ostream& err) {
  const Circuit c = load_circuit(circuit_path);
  const Permutation p = load_truth_table(table_path);
  if (p.width() > kVerifyCap || c.width() > kVerifyCap) {
    err << "refusing to verify above " << kVerifyCap << " wires\n";
    return kExitTooWide;
  }
  return verify_against(c, p, out, err);
}

struct BenchRow {
  int n = 0;
  int trial = 0;
  std::string strategy;
  long long gate_count = 0;
  long long elementary_estimate = 0;
  long long iterations = 0;
  long long wall_time_ms = 0;
  bool verified = false;
  long long rest_elementary = 0;  // summary only, not a CSV column
};

int cmd_bench(const std::string& range, int trials, std::uint64_t seed,
              const std::string& rest, const std::string& csv_path,
              bool timing, const ModelFlags& flags, std::ostream& out,
              std::ostream& err) {
  int n_lo = 0, n_hi = 0;
  if (const auto dots = range.find(".."); dots != std::string::npos) {
    n_lo = std::stoi(range.substr(0, dots));
    n_hi = std::stoi(range.substr(dots + 2));
  } else {
    n_lo = n_hi = std::stoi(range);
  }
  if (n_lo < 1 || n_hi < n_lo || n_hi > kMaxPermutationWidth) {
    err << "bad width range '" << range << "'\n";
    return kExitParseError;
  }

  std::vector<std::string> strategies;
  if (rest == "both")
    strategies = {"naive", "improved"};
  else
    strategies = {rest};

  std::vector<BenchRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int trial = 0; trial < trials; ++trial) {
      Rng rng(seed + static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ull +
              static_cast<std::uint64_t>(trial) * 0x100000001B3ull);
      const Permutation p = random_permutation(rng, n);
      for (const std::string& strategy : strategies) {
        SynthOptions opts;
        opts.rest_strategy = strategy == "naive"
                                 ? SynthOptions::Rest::Naive
                                 : SynthOptions::Rest::Improved;
        opts.cost_model = flags.model();
        const auto start = std::chrono::steady_clock::now();
        const auto [circuit, report] = synthesize(p, opts);
        const auto stop = std::chrono::steady_clock::now();
        BenchRow row;
        row.n = n;
        row.trial = trial;
        row.strategy = strategy;
        row.gate_count = report.gate_count;
        row.elementary_estimate = report.elementary_estimate;
        row.iterations = report.iterations;
        row.rest_elementary = report.rest_phase.elementary;
        if (timing)
          row.wall_time_ms =
              std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
                  .count();
        if (n <= 14) {
          if (simulate(circuit) != p) {
            err << "verification failed at n=" << n << " trial=" << trial
                << " strategy=" << strategy << "\n";
            return kExitParseError;
          }
          row.verified = true;
        }
        rows.push_back(std::move(row));
      }
    }
  }

  std::ofstream csv(csv_path);
  if (!csv) throw Error("cannot write '" + csv_path + "'");
  csv << "n,trial,strategy,gate_count,elementary_estimate,iterations,"
         "wall_time_ms,verified\n";
  for (const BenchRow& r : rows) {
    csv << r.n << ',' << r.trial << ',' << r.strategy << ',' << r.gate_count
        << ',' << r.elementary_estimate << ',' << r.iterations << ','
        << r.wall_time_ms << ',' << (r.verified ? "true" : "false") << "\n";
  }

  for (const std::string& strategy : strategies) {
    double num = 0, den = 0;
    long long rest_total = 0;
    for (const BenchRow& r : rows) {
      if (r.strategy != strategy) continue;
      const double x =
          std::ldexp(static_cast<double>(r.n), r.n) / std::log2(r.n);
      num += static_cast<double>(r.elementary_estimate) * x;
      den += x * x;
      rest_total += r.rest_elementary;
    }
    out << strategy << ": fitted c = " << std::fixed << std::setprecision(4)
        << (den > 0 ? num / den : 0.0)
        << " in cost ~ c * 2^n * n / log2(n); rest-phase elementary total = "
        << rest_total << "\n";
  }
  out << "wrote " << rows.size() << " rows to " << csv_path << "\n";
  return kExitOk;
}

int cmd_cost(const std::string& circuit_path, const ModelFlags& flags,
             std::ostream& out) {
  const Circuit c = load_circuit(circuit_path);
  const CostModel model = flags.model();
  const int n = c.width();
  std::map<std::string, std::pair<long long, long long>> classes;
  const auto class_name = [n](int m) -> std::string {
    if (m == 0) return "not";
    if (m == 1) return "cnot";
    if (m == 2) return "toffoli";
    if (m == n - 1) return "mct_full";
    if (m <= n / 2) return "mct_small";
    return "mct_large";
  };
  for (const Gate& g : c.gates()) {
    auto& [count, elementary] = classes[class_name(g.num_controls())];
    ++count;
    elementary += model.gate_cost(g, n);
  }
  for (const char* name :
       {"not", "cnot", "toffoli", "mct_small", "mct_large", "mct_full"}) {
    const auto it = classes.find(name);
    const auto [count, elem] =
        it == classes.end() ? std::pair<long long, long long>{0, 0} : it->second;
    out << std::left << std::setw(10) << name << std::right << std::setw(8)
        << count << std::setw(12) << elem << "\n";
  }
  out << "total elementary: " << elementary_cost(c, model) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"reversible-circuit synthesis toolkit"};
  app.require_subcommand(1);

  std::string input, output, rest = "improved";
  bool verify = false;
  int pmh_section = 0;
  ModelFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "compile a truth table");
  synth->add_option("input", input, "truth-table file")->required();
  synth->add_option("output", output, "circuit file to write")->required();
  synth->add_option("--rest", rest, "rest-part strategy")
      ->check(CLI::IsMember({"naive", "improved"}));
  synth->add_flag("--verify", verify, "simulate and compare before writing");
  synth->add_option("--pmh-section", pmh_section,
                    "column section width for the CNOT synthesizer");
  synth_flags.attach(synth);

  std::string v_circuit, v_table;
  auto* ver = app.add_subcommand("verify", "check a circuit against a table");
  ver->add_option("circuit", v_circuit, "circuit file")->required();
  ver->add_option("table", v_table, "truth-table file")->required();

  std::string range = "4..8", bench_rest = "improved", csv_path;
  int trials = 5;
  std::uint64_t seed = 1;
  bool timing = false;
  ModelFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "random-permutation benchmark");
  bench->add_option("csv", csv_path, "CSV output path")->required();
  bench->add_option("--n", range, "width or range, e.g. 8 or 3..6");
  bench->add_option("--trials", trials, "trials per width");
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("--rest", bench_rest, "naive, improved or both")
      ->check(CLI::IsMember({"naive", "improved", "both"}));
  bench->add_flag("--timing", timing,
                  "record wall times (breaks byte-identical output)");
  bench_flags.attach(bench);

  std::string cost_circuit;
  ModelFlags cost_flags;
  auto* cost = app.add_subcommand("cost", "per-class gate histogram");
  cost->add_option("circuit", cost_circuit, "circuit file")->required();
  cost_flags.attach(cost);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << e.what() << "\n";
    return kExitParseError;
  }

  try {
    if (synth->parsed())
      return cmd_synth(input, output, rest, verify, pmh_section, synth_flags,
                       out, err);
    if (ver->parsed()) return cmd_verify(v_circuit, v_table, out, err);
    if (bench->parsed())
      return cmd_bench(range, trials, seed, bench_rest, csv_path, timing,
                       bench_flags, out, err);
    if (cost->parsed()) return cmd_cost(cost_circuit, cost_flags, out);
  } catch (const TooWideError& e) {
    err << "error: " << e.what() << "\n";
    return kExitTooWide;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  }
  return kExitParseError;
}

}  // namespace revsynth::cli
