// Acceptance suite: one check per release criterion, each printing a single
// PASS/FAIL line. Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "revsynth/rng.hpp"
#include "revsynth/synth.hpp"

using namespace revsynth;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::cout << "criterion " << criterion << " (" << name
            << "): " << (ok ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n" << std::flush;
  if (!ok) ++failures;
}

Permutation golden_example() {
  std::vector<std::uint64_t> images(256);
  for (std::uint64_t x = 0; x < 256; ++x)
    images[x] = x == 0 ? 0 : x == 254 ? 1 : x == 255 ? 2 : x + 2;
  return Permutation::from_images(8, std::move(images));
}

Permutation seeded_zero_fixing_support_k(Rng& rng, int n, int k) {
  for (;;) {
    const Permutation p = random_support_k_permutation(rng, n, k);
    if (p(0) == 0) return p;
  }
}

// 1. For every width in 3..12, 50 seeded random permutations, both rest
//    strategies: the synthesized circuit simulates to the input exactly.
void criterion_oracle_equivalence() {
  long long checked = 0, wrong = 0;
  for (int n = 3; n <= 12; ++n) {
    Rng rng(1000 + n);
    for (int trial = 0; trial < 50; ++trial) {
      const Permutation p = random_permutation(rng, n);
      for (const auto strategy :
           {SynthOptions::Rest::Naive, SynthOptions::Rest::Improved}) {
        SynthOptions opts;
        opts.rest_strategy = strategy;
        const auto [circuit, ignored] = synthesize(p, opts);
        ++checked;
        if (simulate(circuit) != p) ++wrong;
      }
    }
  }
  report(1, "oracle equivalence, n=3..12, 50 permutations, both strategies",
         wrong == 0,
         std::to_string(checked) + " circuits checked, " +
             std::to_string(wrong) + " mismatches");
}

// 2. The worked eight-wire example reproduces its published intermediates
//    bit for bit under the deterministic selection rules.
void criterion_golden_example() {
  const Permutation f = golden_example();
  bool ok = true;
  std::string why;

  const auto sel = select_pairs_independent(f, 2);
  if (!sel) {
    report(2, "golden example", false, "selection failed");
    return;
  }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> expect_pairs{
      {1, 3}, {4, 6}};
  if (sel->pairs != expect_pairs) {
    ok = false;
    why += "pairs differ; ";
  }
  if (sel->fillers != std::vector<std::pair<int, std::uint64_t>>{{4, 8}}) {
    ok = false;
    why += "filler differs; ";
  }
  const std::uint64_t expect_cols[] = {1, 3, 4, 8, 16, 32, 64, 128};
  for (int j = 1; j <= 8; ++j) {
    if (sel->u.column(j) != BitVec::from_uint(8, expect_cols[j - 1])) {
      ok = false;
      why += "augmented u differs; ";
      break;
    }
  }

  const PeStages stages = build_pe_stages(*sel);
  BitVec expect_v4(8);
  expect_v4.set(1, true);
  expect_v4.set(2, true);
  expect_v4.set(3, true);
  if (stages.v_prime.column(4) != expect_v4) {
    ok = false;
    why += "v' column 4 differs; ";
  }
  if (stages.fixup.size() != 1 || stages.fixup[0] != Gate::ccx(1, 3, 4)) {
    ok = false;
    why += "fix-up differs; ";
  }

  const ReductionResult red = reduce_support(f);
  if (red.stages.empty()) {
    ok = false;
    why += "no reduction stage; ";
  } else {
    const Permutation q = simulate(red.stages[0]);
    const Permutation expect_q =
        compose(Permutation::transposition(8, 1, 3),
                Permutation::transposition(8, 4, 6));
    if (q != expect_q) {
      ok = false;
      why += "stage is not the involution {1<->3, 4<->6}; ";
    }
    const Permutation qf = compose(q, f);
    if (!(qf(0) == 0 && qf(1) == 1 && qf(4) == 4)) {
      ok = false;
      why += "qf does not fix {0, 1, 4}; ";
    }
  }
  report(2, "golden worked example, bit-exact", ok, why);
}

// 3. After support reduction the residual obeys |S| <= 2^(n/2-1) and the
//    iteration count stays within 8 * 2^n / n, for n = 8..14.
void criterion_residual_bound() {
  bool ok = true;
  std::string why;
  for (int n = 8; n <= 14 && ok; ++n) {
    Rng rng(3000 + n);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const Permutation p = fix_zero(random_permutation(rng, n)).second;
      const ReductionResult red = reduce_support(p);
      const unsigned long long s = support(red.residual).size();
      if (s * s > (std::uint64_t{1} << (n - 2))) {
        ok = false;
        why = "residual support " + std::to_string(s) + " at n=" +
              std::to_string(n);
      }
      if (static_cast<long long>(red.stages.size()) > (std::int64_t{8} << n) / n) {
        ok = false;
        why = "iteration count " + std::to_string(red.stages.size()) +
              " at n=" + std::to_string(n);
      }
    }
  }
  report(3, "residual bound and iteration count, n=8..14", ok, why);
}

// 4. CNOT-network synthesis reproduces random invertible matrices and the
//    sectioned count does not exceed plain elimination on average at n=64.
void criterion_cnot_networks() {
  bool ok = true;
  std::string why;
  long long pmh64 = 0, gauss64 = 0;
  for (const int n : {8, 16, 32, 64}) {
    Rng rng(4000 + n);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const BitMatrix m = random_invertible_matrix(rng, n);
      const Circuit c = pmh_synthesize(m);
      if (n == 64) {
        pmh64 += static_cast<long long>(c.size());
        gauss64 += static_cast<long long>(gaussian_synthesize(m).size());
      }
      if (n <= 12) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
          if (apply_to_state(c, x) != m.apply(BitVec::from_uint(n, x)).to_uint()) {
            ok = false;
            why = "functional mismatch at n=" + std::to_string(n);
            break;
          }
        }
      } else {
        for (int s = 0; s < 256; ++s) {
          const std::uint64_t x =
              n == 64 ? rng() : uniform_below(rng, std::uint64_t{1} << n);
          if (apply_to_state(c, x) != m.apply(BitVec::from_uint(n, x)).to_uint()) {
            ok = false;
            why = "functional mismatch at n=" + std::to_string(n);
            break;
          }
        }
      }
    }
  }
  if (ok && pmh64 > gauss64) {
    ok = false;
    why = "mean sectioned count " + std::to_string(pmh64 / 20) +
          " exceeds elimination count " + std::to_string(gauss64 / 20);
  }
  report(4, "CNOT-network synthesis, n in {8,16,32,64}", ok,
         ok ? "mean counts at n=64: " + std::to_string(pmh64 / 20) +
                  " sectioned vs " + std::to_string(gauss64 / 20) + " plain"
            : why);
}

// 5. The cost model returns the closed-form constants exactly.
void criterion_cost_constants() {
  const CostModel model;
  bool ok = true;
  std::string why;
  for (const int n : {8, 10, 12, 16, 20, 24, 32}) {
    for (int m = 3; m <= n - 2 && ok; ++m) {
      std::uint64_t pos = 0;
      for (int j = 1; j <= m; ++j) pos |= std::uint64_t{1} << (j - 1);
      const Gate g = Gate::mct(m + 1, pos, 0);
      const long long expect =
          m <= n / 2 ? 12ll * m - 22 : 24ll * m - 40;
      if (model.gate_cost(g, n) != expect) {
        ok = false;
        why = "all-positive m=" + std::to_string(m) + " at n=" +
              std::to_string(n) + " gives " +
              std::to_string(model.gate_cost(g, n)) + ", expected " +
              std::to_string(expect);
      }
      for (int negs = 1; negs <= m && ok; ++negs) {
        std::uint64_t neg = 0;
        for (int j = 1; j <= negs; ++j) neg |= std::uint64_t{1} << (j - 1);
        std::uint64_t pos2 = pos & ~neg;
        const Gate h = Gate::mct(m + 1, pos2, neg);
        if (model.gate_cost(h, n) != expect + 2 * negs) {
          ok = false;
          why = "negative-control surcharge broken at m=" + std::to_string(m);
        }
      }
    }
  }
  report(5, "cost-model constants 12m-22 / 24m-40 / +2 per negative control",
         ok, why);
}

// 6. Desk-scale scaling: the normalized cost varies by less than 2x between
//    consecutive widths over n = 8..14.
void criterion_scaling_trend() {
  std::vector<double> normalized;
  for (int n = 8; n <= 14; ++n) {
    Rng rng(6000 + n);
    const Permutation p = random_permutation(rng, n);
    const auto [circuit, report_data] = synthesize(p);
    const double denom = std::ldexp(static_cast<double>(n), n);
    normalized.push_back(static_cast<double>(report_data.elementary_estimate) *
                         std::log2(n) / denom);
  }
  bool ok = true;
  double worst = 1.0;
  for (std::size_t i = 1; i < normalized.size(); ++i) {
    const double ratio = normalized[i] / normalized[i - 1];
    worst = std::max({worst, ratio, 1.0 / ratio});
    if (ratio >= 2.0 || ratio <= 0.5) ok = false;
  }
  double fitted = 0;
  for (const double c : normalized) fitted += c;
  fitted /= static_cast<double>(normalized.size());
  std::ostringstream detail;
  detail << "fitted constant c = " << fitted
         << ", worst consecutive ratio = " << worst;
  report(6, "scaling trend of elementary cost, n=8..14", ok, detail.str());
}

// 7. On residual-sized instances the improved rest decomposition beats the
//    transposition path on at least 90 percent of seeded instances.
void criterion_rest_improvement() {
  bool ok = true;
  std::string detail;
  for (const int n : {12, 14}) {
    Rng rng(7000 + n);
    const int k = 1 << (n / 2 - 1);
    int wins = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const Permutation p = seeded_zero_fixing_support_k(rng, n, k);
      const Circuit naive = rest_naive(p);
      const Circuit improved = rest_improved(p);
      if (simulate(inverse(naive)) != p || simulate(inverse(improved)) != p) {
        report(7, "rest-part improvement", false, "a rest circuit is wrong");
        return;
      }
      if (elementary_cost(improved) < elementary_cost(naive)) ++wins;
    }
    detail += "n=" + std::to_string(n) + ": " + std::to_string(wins) +
              "/20 improved wins; ";
    if (wins < 18) ok = false;
  }
  report(7, "rest-part improvement on residual-sized supports", ok, detail);
}

// 8. Fixed seeds give byte-identical circuit files and benchmark CSVs
//    across consecutive runs.
void criterion_determinism() {
  const auto slurp = [](const std::string& path) {
    std::ifstream f(path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  };
  bool ok = true;
  std::string why;

  {
    Rng rng(8001);
    const Permutation p = random_permutation(rng, 6);
    std::ofstream table("acc_input.tt");
    emit_truth_table(p, table);
    table.close();
    std::ostringstream out, err;
    for (const char* path : {"acc_a.circ", "acc_b.circ"}) {
      if (cli::run({"synth", "acc_input.tt", path, "--verify"}, out, err) != 0) {
        ok = false;
        why = "synth run failed: " + err.str();
      }
    }
    if (ok && slurp("acc_a.circ") != slurp("acc_b.circ")) {
      ok = false;
      why = "circuit files differ between runs";
    }
  }
  if (ok) {
    std::ostringstream out, err;
    for (const char* path : {"acc_a.csv", "acc_b.csv"}) {
      if (cli::run({"bench", path, "--n", "3..6", "--trials", "2", "--seed",
                    "11", "--rest", "both"},
                   out, err) != 0) {
        ok = false;
        why = "bench run failed: " + err.str();
      }
    }
    if (ok && slurp("acc_a.csv") != slurp("acc_b.csv")) {
      ok = false;
      why = "benchmark CSVs differ between runs";
    }
  }
  for (const char* path : {"acc_input.tt", "acc_a.circ", "acc_b.circ",
                           "acc_a.circ.report.json", "acc_b.circ.report.json",
                           "acc_a.csv", "acc_b.csv"})
    std::remove(path);
  report(8, "fixed seed means byte-identical outputs", ok, why);
}

}  // namespace

int main() {
  criterion_oracle_equivalence();
  criterion_golden_example();
  criterion_residual_bound();
  criterion_cnot_networks();
  criterion_cost_constants();
  criterion_scaling_trend();
  criterion_rest_improvement();
  criterion_determinism();
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
