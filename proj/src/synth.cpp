#include "revsynth/synth.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <unordered_set>

namespace revsynth {

namespace {

std::uint64_t wb(int wire) { return std::uint64_t{1} << (wire - 1); }

int floor_log2(int n) { return std::bit_width(static_cast<unsigned>(n)) - 1; }

/// Mutable permutation state shared by the reduction loops: the image and
/// preimage tables plus the sorted support.
struct Working {
  int n = 0;
  std::vector<std::uint64_t> img;
  std::vector<std::uint64_t> inv;
  std::vector<std::uint64_t> support;
};

Working make_working(const Permutation& p) {
  Working w;
  w.n = p.width();
  w.img = p.images();
  w.inv.resize(p.size());
  for (std::uint64_t i = 0; i < p.size(); ++i) w.inv[w.img[i]] = i;
  for (std::uint64_t i = 0; i < p.size(); ++i)
    if (w.img[i] != i) w.support.push_back(i);
  return w;
}

void drop_if_fixed(Working& w, std::uint64_t v) {
  if (w.img[v] != v) return;
  auto it = std::lower_bound(w.support.begin(), w.support.end(), v);
  if (it != w.support.end() && *it == v) w.support.erase(it);
}

/// Applies the involution swapping each (a, b) on the left: p <- q o p.
void apply_swaps(Working& w,
                 const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  for (const auto& [a, b] : pairs) {
    const std::uint64_t ia = w.inv[a];
    const std::uint64_t ib = w.inv[b];
    w.img[ia] = b;
    w.inv[b] = ia;
    w.img[ib] = a;
    w.inv[a] = ib;
    drop_if_fixed(w, a);
    drop_if_fixed(w, b);
  }
}

/// The smallest integer whose vector lies outside the span. Such a value is
/// always a power of two: if every power up to the most significant bit of
/// some integer were spanned, that integer would be spanned as well.
std::uint64_t smallest_value_outside(const SpanTracker& span, int n) {
  for (int j = 0; j < n; ++j) {
    const std::uint64_t k = std::uint64_t{1} << j;
    if (!span.contains(BitVec::from_uint(n, k))) return k;
  }
  throw Error("internal: span is already full");
}

std::optional<PairSelection> select_independent_on(
    const std::vector<std::uint64_t>& img,
    const std::vector<std::uint64_t>& support, int n, int m) {
  assert(m >= 1);
  const int want = 1 << (m - 1);
  SpanTracker span(n);
  std::vector<BitVec> ucols, vcols;
  PairSelection sel;
  sel.m = m;
  for (const std::uint64_t a : support) {
    if (static_cast<int>(sel.pairs.size()) == want) break;
    const std::uint64_t b = img[a];
    const BitVec va = BitVec::from_uint(n, a);
    const BitVec vb = BitVec::from_uint(n, b);
    if (span.contains(va) || span.contains(vb)) continue;
    sel.pairs.emplace_back(a, b);
    vcols.push_back(va);
    vcols.push_back(vb);
    span.insert(va);
    ucols.push_back(va);
    if (span.insert(vb)) {
      ucols.push_back(vb);
    } else {
      const std::uint64_t z = smallest_value_outside(span, n);
      const BitVec vz = BitVec::from_uint(n, z);
      span.insert(vz);
      ucols.push_back(vz);
      sel.fillers.emplace_back(static_cast<int>(ucols.size()), z);
    }
  }
  if (static_cast<int>(sel.pairs.size()) < want) return std::nullopt;
  while (static_cast<int>(ucols.size()) < n) {
    const std::uint64_t z = smallest_value_outside(span, n);
    const BitVec vz = BitVec::from_uint(n, z);
    span.insert(vz);
    ucols.push_back(vz);
    vcols.push_back(vz);
  }
  sel.u = BitMatrix::from_columns(n, std::move(ucols));
  sel.v = BitMatrix::from_columns(n, std::move(vcols));
  return sel;
}

std::optional<PairSelection> select_distinct_on(
    const std::vector<std::uint64_t>& img,
    const std::vector<std::uint64_t>& support, int m) {
  assert(m >= 1);
  const int want = 1 << (m - 1);
  std::unordered_set<std::uint64_t> used;
  PairSelection sel;
  sel.m = m;
  for (const std::uint64_t a : support) {
    if (static_cast<int>(sel.pairs.size()) == want) break;
    if (used.count(a)) continue;
    const std::uint64_t b = img[a];
    if (used.count(b)) continue;
    used.insert(a);
    used.insert(b);
    sel.pairs.emplace_back(a, b);
  }
  if (static_cast<int>(sel.pairs.size()) < want) return std::nullopt;
  return sel;
}

/// One basic mapping entry: CNOTs fan the pattern of t-1 out of e_t, then a
/// suffix-controlled gate clears wire t. Requires t <= n - m.
void append_basic_pmap_entry(Circuit& c, int t, int m, int n) {
  const int bits = t - 1;
  c.push_back(Gate::cx(t, 1));
  for (int b = 1; b <= m; ++b)
    if ((bits >> (m - b)) & 1) c.push_back(Gate::cx(t, n - m + b));
  std::uint64_t pos = 0, neg = 0;
  for (int b = 1; b <= m; ++b) {
    if ((bits >> (m - b)) & 1)
      pos |= wb(n - m + b);
    else
      neg |= wb(n - m + b);
  }
  c.push_back(Gate::mct(t, pos, neg));
}

int pmap_overflow(int m, int n) { return (1 << m) - (n - m); }

bool pmap_extended_fits(int m, int n) {
  // Overflowing entries clear their mark on wire i+1, which must stay out
  // of the suffix block.
  return pmap_overflow(m, n) <= n - m - 1;
}

long long pmap_extended_shared_merges(int m, int n) {
  const int overflow = pmap_overflow(m, n);
  if (overflow <= 0) return 0;
  long long merges = 0;
  for (int i = 1; i <= overflow; ++i) {
    const int bits = n - m + i - 1;
    int run = 0;
    for (int b = 1; b <= m; ++b) {
      const bool current = b == i;
      const bool desired = (bits >> (m - b)) & 1;
      if (current != desired) ++run;
    }
    if (run >= 2) merges += run - 1;
  }
  return merges;
}

int rest_improved_start_m(int n) {
  int m = floor_log2(n);
  while (m >= 1 && (m > n - 2 || !pmap_extended_fits(m, n))) --m;
  return m;
}

}  // namespace

std::pair<Circuit, Permutation> fix_zero(const Permutation& p) {
  const int n = p.width();
  Circuit t(n);
  const std::uint64_t v = p(0);
  if (v == 0) return {t, p};
  for (int j = 1; j <= n; ++j)
    if ((v >> (n - j)) & 1) t.push_back(Gate::x(j));
  std::vector<std::uint64_t> images(p.size());
  for (std::uint64_t i = 0; i < p.size(); ++i) images[i] = p(i) ^ v;
  return {t, Permutation::from_images(n, std::move(images))};
}

Circuit transposition_circuit(std::uint64_t a, std::uint64_t b, int n) {
  if (a == b) throw EqualValuesError("transposition endpoints must differ");
  const std::uint64_t size = std::uint64_t{1} << n;
  if (a >= size || b >= size)
    throw WireOutOfRangeError("transposition endpoint out of range");
  const std::uint64_t diff = a ^ b;
  const int pivot = n - (std::bit_width(diff) - 1);
  Circuit out(n);
  std::vector<int> fan;
  for (int j = pivot + 1; j <= n; ++j)
    if ((diff >> (n - j)) & 1) fan.push_back(j);
  for (const int j : fan) out.push_back(Gate::cx(pivot, j));
  std::uint64_t shared = a;
  for (const Gate& g : out.gates()) shared = g.apply(n, shared);
  std::uint64_t pos = 0, neg = 0;
  for (int j = 1; j <= n; ++j) {
    if (j == pivot) continue;
    if ((shared >> (n - j)) & 1)
      pos |= wb(j);
    else
      neg |= wb(j);
  }
  out.push_back(Gate::mct(pivot, pos, neg));
  for (auto it = fan.rbegin(); it != fan.rend(); ++it)
    out.push_back(Gate::cx(pivot, *it));
  return out;
}

std::optional<PairSelection> select_pairs_independent(const Permutation& p,
                                                      int m) {
  return select_independent_on(p.images(), support(p).moved, p.width(), m);
}

std::optional<PairSelection> select_pairs_distinct(const Permutation& p,
                                                   int m) {
  return select_distinct_on(p.images(), support(p).moved, m);
}

PeStages build_pe_stages(const PairSelection& sel, int section_size) {
  const int n = sel.u.rows();
  assert(sel.u.cols() == n && sel.v.cols() == n);
  const int section =
      section_size > 0 ? section_size : default_section_size(n);
  PeStages stages;
  stages.r1 = invert(sel.u);
  stages.v_prime = stages.r1.multiply(sel.v);

  // Toffoli fix-up of the even columns whose diagonal entry is 0. Each gate
  // is applied to every later column, keeping the matrix upper triangular.
  BitMatrix w = stages.v_prime;
  const int two_m = 2 * static_cast<int>(sel.pairs.size());
  for (int t = 4; t <= two_m; t += 2) {
    if (w.get(t, t)) continue;
    if (!w.get(t - 1, t))
      throw Error("internal: dependent column lost its e_{t-1} component");
    int tp = 0;
    for (int i = 1; i < t - 1; ++i) {
      if (w.get(i, t)) {
        tp = i;
        break;
      }
    }
    if (!tp) throw Error("internal: no second control for the fix-up");
    stages.fixup.push_back(Gate::ccx(t - 1, tp, t));
    for (int c = 1; c <= w.cols(); ++c)
      if (w.get(t - 1, c) && w.get(tp, c)) w.flip(t, c);
  }
  stages.v_fixed = w;
  stages.r2 = invert(w);

  stages.circuit = pmh_synthesize(stages.r1, section);
  for (const Gate& g : stages.fixup) stages.circuit.push_back(g);
  stages.circuit.append(pmh_synthesize(stages.r2, section));
  return stages;
}

Circuit build_pe(const PairSelection& sel, int section_size) {
  return build_pe_stages(sel, section_size).circuit;
}

Circuit build_pmap(int m, int n) {
  assert(m >= 1);
  const int count = 1 << m;
  if (count >= n - m)
    throw PatternOverlapError("2^m must stay below n - m for the plain map");
  Circuit c(n);
  for (int t = 2; t <= count; ++t) append_basic_pmap_entry(c, t, m, n);
  return c;
}

Gate main_swap(int m, int n) {
  assert(m >= 1 && m <= n - 2);
  std::uint64_t neg = 0;
  for (int j = 2; j <= n - m; ++j) neg |= wb(j);
  return Gate::mct(n, wb(1), neg);
}

ReductionResult reduce_support(const Permutation& p, const SynthOptions& opts) {
  const int n = p.width();
  if (p(0) != 0) throw Error("reduce_support requires p(0) = 0");
  const int m = floor_log2(n) - 1;
  if (m < 1) throw Error("reduce_support requires n >= 4");
  const int section = opts.pmh_section_size > 0 ? opts.pmh_section_size
                                                : default_section_size(n);

  // The mapping stage and the main swap depend only on (m, n).
  const Circuit pmap = build_pmap(m, n);
  const Circuit pmap_inv = inverse(pmap);
  const Gate ms = main_swap(m, n);

  Working w = make_working(p);
  ReductionResult result;
  const long long max_iterations = (std::int64_t{8} << n) / n + 1;
  for (;;) {
    auto sel = select_independent_on(w.img, w.support, n, m);
    if (!sel) break;
    const PeStages pe = build_pe_stages(*sel, section);
    Circuit q(n);
    q.append(pe.circuit);
    q.append(pmap);
    q.push_back(ms);
    q.append(pmap_inv);
    q.append(inverse(pe.circuit));
    result.stages.push_back(std::move(q));
    result.pairs_per_iteration.push_back(
        static_cast<long long>(sel->pairs.size()));
    apply_swaps(w, sel->pairs);
    if (static_cast<long long>(result.stages.size()) > max_iterations)
      throw Error("internal: reduction exceeded its iteration bound");
  }
  const unsigned long long s = w.support.size();
  if (s * s > (std::uint64_t{1} << (n - 2)))
    throw Error("internal: residual support exceeds 2^(n/2-1)");
  result.residual = Permutation::from_images(n, std::move(w.img));
  return result;
}

Circuit rest_naive(const Permutation& p) {
  const int n = p.width();
  Working w = make_working(p);
  Circuit out(n);
  while (!w.support.empty()) {
    const std::uint64_t a = w.support.front();
    const std::uint64_t b = w.img[a];
    out.append(transposition_circuit(a, b, n));
    apply_swaps(w, {{a, b}});
  }
  return out;
}

Circuit build_pe_greedy(const std::vector<std::uint64_t>& values, int n) {
  if (static_cast<int>(values.size()) > n)
    throw Error("more values than wires");
  std::unordered_set<std::uint64_t> distinct;
  for (const std::uint64_t v : values) {
    if (v == 0) throw ZeroValueError("cannot map the zero state");
    if (v >= (std::uint64_t{1} << n))
      throw WireOutOfRangeError("value out of range");
    if (!distinct.insert(v).second)
      throw DuplicateValuesError("values must be distinct");
  }

  std::vector<std::uint64_t> cur = values;
  Circuit c(n);
  const auto emit = [&](const Gate& g) {
    c.push_back(g);
    for (auto& v : cur) v = g.apply(n, v);
  };
  for (int t = 1; t <= static_cast<int>(values.size()); ++t) {
    std::uint64_t v = cur[t - 1];
    if (!((v >> (n - t)) & 1)) {
      int first = 0, second = 0;
      for (int j = 1; j <= n && !second; ++j) {
        if ((v >> (n - j)) & 1) (first ? second : first) = j;
      }
      emit(second ? Gate::ccx(first, second, t) : Gate::cx(first, t));
      v = cur[t - 1];
    }
    for (int j = 1; j <= n; ++j) {
      if (j == t) continue;
      if ((v >> (n - j)) & 1) emit(Gate::cx(t, j));
    }
  }
  return c;
}

Circuit build_pmap_extended(int m, int n) {
  assert(m >= 1);
  const int count = 1 << m;
  if (count <= n - m) {
    Circuit c(n);
    for (int t = 2; t <= count; ++t) append_basic_pmap_entry(c, t, m, n);
    return c;
  }
  if (!pmap_extended_fits(m, n))
    throw PatternOverlapError("extended map does not fit this (m, n)");
  const int overflow = pmap_overflow(m, n);
  Circuit c(n);
  for (int i = 1; i <= overflow; ++i) {
    const int t = n - m + i;
    c.push_back(Gate::cx(t, 1));
    c.push_back(Gate::cx(t, i + 1));
  }
  for (int i = 1; i <= overflow; ++i) {
    const int t = n - m + i;
    const int bits = t - 1;
    std::uint64_t pos = 0, neg = 0;
    for (int b = 1; b <= m; ++b) {
      const bool current = b == i;
      const bool desired = (bits >> (m - b)) & 1;
      if (current != desired) c.push_back(Gate::ccx(1, i + 1, n - m + b));
      if (desired)
        pos |= wb(n - m + b);
      else
        neg |= wb(n - m + b);
    }
    c.push_back(Gate::mct(i + 1, pos, neg));
  }
  for (int t = 2; t <= n - m; ++t) append_basic_pmap_entry(c, t, m, n);
  return c;
}

RestResult rest_improved_run(const Permutation& p) {
  const int n = p.width();
  if (p(0) != 0) throw Error("rest_improved requires p(0) = 0");
  Working w = make_working(p);
  RestResult result;
  result.circuit = Circuit(n);
  int m = rest_improved_start_m(n);
  while (m >= 1) {
    auto sel = select_distinct_on(w.img, w.support, m);
    if (!sel) {
      --m;
      continue;
    }
    std::vector<std::uint64_t> values;
    values.reserve(2 * sel->pairs.size());
    for (const auto& [a, b] : sel->pairs) {
      values.push_back(a);
      values.push_back(b);
    }
    const Circuit pe = build_pe_greedy(values, n);
    const Circuit pm = build_pmap_extended(m, n);
    result.circuit.append(pe);
    result.circuit.append(pm);
    result.circuit.push_back(main_swap(m, n));
    result.circuit.append(inverse(pm));
    result.circuit.append(inverse(pe));
    result.shared_toffoli_merges += 2 * pmap_extended_shared_merges(m, n);
    apply_swaps(w, sel->pairs);
  }
  while (!w.support.empty()) {
    const std::uint64_t a = w.support.front();
    const std::uint64_t b = w.img[a];
    result.circuit.append(transposition_circuit(a, b, n));
    apply_swaps(w, {{a, b}});
  }
  return result;
}

Circuit rest_improved(const Permutation& p) {
  return rest_improved_run(p).circuit;
}

std::pair<Circuit, SynthReport> synthesize(const Permutation& p,
                                           const SynthOptions& opts) {
  const int n = p.width();
  SynthReport report;
  report.n = n;
  report.support_initial = static_cast<long long>(support(p).size());

  auto [t0, fixed] = fix_zero(p);

  ReductionResult red;
  if (n >= 4) {
    red = reduce_support(fixed, opts);
  } else {
    red.residual = std::move(fixed);
  }
  report.iterations = static_cast<long long>(red.stages.size());
  report.pairs_per_iteration = red.pairs_per_iteration;
  report.support_after_reduction =
      static_cast<long long>(support(red.residual).size());

  // Below four wires the framework's m drops under 1, so the residual path
  // handles everything via transpositions.
  const bool improved =
      n >= 4 && opts.rest_strategy == SynthOptions::Rest::Improved;
  report.rest_strategy = improved ? "improved" : "naive";
  Circuit rest(n);
  if (improved) {
    RestResult rr = rest_improved_run(red.residual);
    rest = std::move(rr.circuit);
    report.rest_shared_toffoli_savings =
        rr.shared_toffoli_merges * (opts.cost_model.toffoli_cost - 2);
  } else {
    rest = rest_naive(red.residual);
  }

  // With T the zero fix, Q_d..Q_1 the reduction stages and R the rest gates
  // (simulating to the residual's inverse), R_inv Q_d .. Q_1 T applied in
  // list order reproduces p.
  Circuit out(n);
  out.append(inverse(rest));
  for (auto it = red.stages.rbegin(); it != red.stages.rend(); ++it)
    out.append(*it);
  out.append(t0);

  const CostModel& model = opts.cost_model;
  report.gate_count = static_cast<long long>(out.size());
  report.elementary_estimate = elementary_cost(out, model);
  report.fix_zero_phase = {static_cast<long long>(t0.size()),
                           elementary_cost(t0, model)};
  PhaseCost reduction;
  for (const Circuit& stage : red.stages) {
    reduction.gates += static_cast<long long>(stage.size());
    reduction.elementary += elementary_cost(stage, model);
  }
  report.reduction_phase = reduction;
  report.rest_phase = {static_cast<long long>(rest.size()),
                       elementary_cost(rest, model)};
  return {std::move(out), std::move(report)};
}

}  // namespace revsynth
