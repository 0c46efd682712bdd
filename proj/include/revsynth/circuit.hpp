#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "revsynth/errors.hpp"
#include "revsynth/permutation.hpp"

namespace revsynth {

/// Widest circuit the exact simulator will expand (2^24 basis states).
inline constexpr int kMaxSimulateWidth = 24;
/// Widest circuit the gate IR supports (control sets are 64-bit masks).
inline constexpr int kMaxCircuitWidth = 64;

/// One mixed-polarity multi-controlled NOT. Wires are 1-based and wire 1 is
/// the most significant bit of a basis state. Control sets are stored as
/// masks with bit j-1 standing for wire j.
struct Gate {
  int target = 0;
  std::uint64_t pos_mask = 0;
  std::uint64_t neg_mask = 0;

  static Gate x(int target);
  static Gate cx(int control, int target);
  static Gate ccx(int control_a, int control_b, int target);
  /// General gate from explicit masks; validates disjointness.
  static Gate mct(int target, std::uint64_t pos_mask, std::uint64_t neg_mask);

  int num_controls() const;
  int num_negative_controls() const;
  int max_wire() const;
  std::vector<int> pos_controls() const;
  std::vector<int> neg_controls() const;

  /// Applies the gate to one basis state of an n-wire register.
  std::uint64_t apply(int n, std::uint64_t state) const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Ordered gate list over n wires; the first gate acts first.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n);

  int width() const { return n_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }

  void push_back(const Gate& g);
  void append(const Circuit& other);

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
};

/// Gate list reversed. Every Gate is self-inverse, so this is the inverse
/// circuit: simulate(inverse(c)) == inverse(simulate(c)).
Circuit inverse(const Circuit& c);

/// Exact simulation over all 2^n basis states (bit-sliced internally).
/// Throws TooWideError above kMaxSimulateWidth.
Permutation simulate(const Circuit& c);

/// Applies the whole circuit to a single basis state; any width up to 64.
std::uint64_t apply_to_state(const Circuit& c, std::uint64_t state);

/// Elementary-gate accounting for an n-wire circuit. A gate with m controls
/// costs, before the negative-control surcharge:
///   m = 0 or 1          -> 1
///   m = 2               -> toffoli_cost
///   m = n-1             -> mct_full_factor * n^2
///   3 <= m <= n/2       -> mct_small_slope*m - 22
///   n/2 < m <= n-2      -> 24*m - 40
struct CostModel {
  int toffoli_cost = 15;
  int mct_small_slope = 12;  // 12m-22 by default; 14m-22 selectable
  int mct_full_factor = 2;
  int neg_control_surcharge = 2;

  long long gate_cost(const Gate& g, int n) const;
};

long long elementary_cost(const Circuit& c, const CostModel& model = {});

/// Gate text format:
///   # width <n>
///   t <target> <ctrl>...
/// where each ctrl is q<i> (positive) or -q<i> (negative).
void emit_circuit(const Circuit& c, std::ostream& out);
Circuit parse_circuit(std::istream& in);

struct PhaseCost {
  long long gates = 0;
  long long elementary = 0;
};

/// Per-run synthesis statistics.
struct SynthReport {
  int n = 0;
  std::string rest_strategy;
  long long iterations = 0;
  std::vector<long long> pairs_per_iteration;
  long long gate_count = 0;
  long long elementary_estimate = 0;
  long long support_initial = 0;
  long long support_after_reduction = 0;
  PhaseCost fix_zero_phase;
  PhaseCost reduction_phase;
  PhaseCost rest_phase;
  // Elementary gates that merging shared-control Toffoli runs in the
  // extended mapping stage would save on top of elementary_estimate.
  long long rest_shared_toffoli_savings = 0;

  std::string to_json() const;
};

}  // namespace revsynth
