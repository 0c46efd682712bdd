#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "revsynth/circuit.hpp"
#include "revsynth/f2linalg.hpp"
#include "revsynth/permutation.hpp"

namespace revsynth {

/// A round of pair selection. For the independent mode, u and v are the
/// n x n matrices after augmentation and fillers records the substitute
/// columns chosen where an image vector fell inside the running span.
struct PairSelection {
  int m = 0;  // 2^(m-1) pairs were requested
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (a_t, b_t)
  std::vector<std::pair<int, std::uint64_t>> fillers;  // (u column, value)
  BitMatrix u, v;
};

struct SynthOptions {
  enum class Rest { Naive, Improved };
  Rest rest_strategy = Rest::Improved;
  CostModel cost_model{};
  int pmh_section_size = 0;  // 0 = default_section_size(n)
};

/// Prefix of NOT gates t such that (t o p)(0) = 0, and the fixed-up
/// permutation itself. At most n gates, one per set bit of p(0).
std::pair<Circuit, Permutation> fix_zero(const Permutation& p);

/// Circuit exchanging basis states a and b and fixing all others: a CNOT
/// fan from the pivot wire, one general C^(n-1)NOT, and the fan reversed.
/// Throws EqualValuesError.
Circuit transposition_circuit(std::uint64_t a, std::uint64_t b, int n);

/// Scans the support ascending and selects 2^(m-1) pairs (i, f(i)) whose
/// vectors stay independent of the running column span, augmenting u to
/// full rank. Returns nullopt when too few pairs exist. Requires p(0) = 0.
std::optional<PairSelection> select_pairs_independent(const Permutation& p,
                                                      int m);

/// Intermediates of the basis-mapping stage, exposed for inspection.
struct PeStages {
  BitMatrix r1;        // u^-1
  BitMatrix v_prime;   // r1 * v, upper triangular
  BitMatrix v_fixed;   // v_prime after the Toffoli fix-up, unit diagonal
  BitMatrix r2;        // v_fixed^-1
  std::vector<Gate> fixup;
  Circuit circuit;     // pmh(r1) ++ fixup ++ pmh(r2)
};

/// Builds the stage mapping the selected values onto the leading basis
/// states: a_t to e_{2t-1} and b_t to e_{2t}.
PeStages build_pe_stages(const PairSelection& sel, int section_size = 0);
Circuit build_pe(const PairSelection& sel, int section_size = 0);

/// Maps each basis state e_i to the packed pattern y_i = |10..0>|i-1> so a
/// single multi-controlled gate can swap all pairs at once. Requires
/// 2^m < n - m; throws PatternOverlapError otherwise.
Circuit build_pmap(int m, int n);

/// The main swap: C^(n-m)NOT on wire n controlled on the prefix |10..0>.
/// Under simulation it exchanges y_{2t-1} with y_{2t} for every t.
Gate main_swap(int m, int n);

struct ReductionResult {
  std::vector<Circuit> stages;  // Q_1 .. Q_d in generation order
  Permutation residual;
  std::vector<long long> pairs_per_iteration;
};

/// Iterates pair selection and conjugated main swaps until selection fails,
/// leaving a residual with |support| <= 2^(n/2-1). Requires p(0) = 0 and
/// n >= 4.
ReductionResult reduce_support(const Permutation& p,
                               const SynthOptions& opts = {});

/// Transposition-by-transposition decomposition of the residual. The
/// returned gate list simulates to inverse(p); the assembler emits it
/// reversed. Requires p(0) = 0.
Circuit rest_naive(const Permutation& p);

/// Greedy selection that only needs all pair members distinct; succeeds
/// whenever |support| > 3 * 2^(m-1) - 3.
std::optional<PairSelection> select_pairs_distinct(const Permutation& p,
                                                   int m);

/// Maps values[t] to e_t for t = 1..count with at most one Toffoli or CNOT
/// plus a clearing CNOT fan per value. Values must be distinct and nonzero.
Circuit build_pe_greedy(const std::vector<std::uint64_t>& values, int n);

/// build_pmap extended to 2^m > n - m: overflowing basis states are routed
/// through e'_t = e_1 + e_{i+1} + e_t before the packed pattern is formed.
Circuit build_pmap_extended(int m, int n);

struct RestResult {
  Circuit circuit;  // simulates to inverse(p), like rest_naive
  // Count of (run_length - 1) over shared-control Toffoli runs in the
  // extended mapping stages; each merge would save toffoli_cost - 2
  // elementary gates.
  long long shared_toffoli_merges = 0;
};

/// Improved residual decomposition: m-descent over greedy pair rounds with
/// the same conjugated main-swap framework, transpositions at the end.
/// Requires p(0) = 0 and n >= 4.
RestResult rest_improved_run(const Permutation& p);
Circuit rest_improved(const Permutation& p);

/// Full pipeline: fix zero, reduce support, decompose the rest, assemble.
/// simulate(circuit) equals p exactly.
std::pair<Circuit, SynthReport> synthesize(const Permutation& p,
                                           const SynthOptions& opts = {});

}  // namespace revsynth
