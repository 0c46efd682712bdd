#include "revsynth/circuit.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace revsynth {

namespace {

void check_wire(int wire) {
  if (wire < 1 || wire > kMaxCircuitWidth)
    throw WireOutOfRangeError("wire index " + std::to_string(wire) +
                              " outside [1, " +
                              std::to_string(kMaxCircuitWidth) + "]");
}

std::uint64_t wire_bit(int wire) {
  check_wire(wire);
  return std::uint64_t{1} << (wire - 1);
}

}  // namespace

Gate Gate::x(int target) { return mct(target, 0, 0); }

Gate Gate::cx(int control, int target) {
  return mct(target, wire_bit(control), 0);
}

Gate Gate::ccx(int control_a, int control_b, int target) {
  if (control_a == control_b)
    throw WireOutOfRangeError("duplicate control wire");
  return mct(target, wire_bit(control_a) | wire_bit(control_b), 0);
}

Gate Gate::mct(int target, std::uint64_t pos_mask, std::uint64_t neg_mask) {
  check_wire(target);
  if (pos_mask & neg_mask)
    throw WireOutOfRangeError("a control wire cannot be both polarities");
  if ((pos_mask | neg_mask) & wire_bit(target))
    throw WireOutOfRangeError("target wire cannot also be a control");
  return Gate{target, pos_mask, neg_mask};
}

int Gate::num_controls() const {
  return std::popcount(pos_mask | neg_mask);
}

int Gate::num_negative_controls() const { return std::popcount(neg_mask); }

int Gate::max_wire() const {
  const std::uint64_t all = pos_mask | neg_mask;
  const int top_control = all ? std::bit_width(all) : 0;
  return std::max(target, top_control);
}

namespace {

std::vector<int> mask_to_wires(std::uint64_t mask) {
  std::vector<int> wires;
  while (mask) {
    const int bit = std::countr_zero(mask);
    wires.push_back(bit + 1);
    mask &= mask - 1;
  }
  return wires;
}

// Wire j of an n-wire register is bit n-j of the basis-state integer.
std::uint64_t wires_to_state_mask(std::uint64_t wire_mask, int n) {
  std::uint64_t state_mask = 0;
  while (wire_mask) {
    const int wire = std::countr_zero(wire_mask) + 1;
    state_mask |= std::uint64_t{1} << (n - wire);
    wire_mask &= wire_mask - 1;
  }
  return state_mask;
}

}  // namespace

std::vector<int> Gate::pos_controls() const { return mask_to_wires(pos_mask); }
std::vector<int> Gate::neg_controls() const { return mask_to_wires(neg_mask); }

std::uint64_t Gate::apply(int n, std::uint64_t state) const {
  const std::uint64_t pos = wires_to_state_mask(pos_mask, n);
  const std::uint64_t neg = wires_to_state_mask(neg_mask, n);
  if ((state & pos) == pos && (state & neg) == 0)
    state ^= std::uint64_t{1} << (n - target);
  return state;
}

Circuit::Circuit(int n) : n_(n) {
  if (n < 1 || n > kMaxCircuitWidth)
    throw TooWideError("circuit width " + std::to_string(n) +
                       " outside [1, " + std::to_string(kMaxCircuitWidth) + "]");
}

void Circuit::push_back(const Gate& g) {
  if (g.max_wire() > n_)
    throw WireOutOfRangeError("gate touches wire " +
                              std::to_string(g.max_wire()) +
                              " of a " + std::to_string(n_) + "-wire circuit");
  gates_.push_back(g);
}

void Circuit::append(const Circuit& other) {
  if (other.width() != n_)
    throw WidthMismatchError("appending a " + std::to_string(other.width()) +
                             "-wire circuit to a " + std::to_string(n_) +
                             "-wire circuit");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.width());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it)
    out.push_back(*it);
  return out;
}

namespace {

// Column j of the bit-sliced state table: one bit per basis state, packed 64
// states per word. Word w of the initial column for wire j holds bit n-j of
// the states 64w .. 64w+63.
constexpr std::uint64_t kLowPatterns[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

}  // namespace

Permutation simulate(const Circuit& c) {
  const int n = c.width();
  if (n > kMaxSimulateWidth)
    throw TooWideError("cannot simulate " + std::to_string(n) +
                       " wires (cap " + std::to_string(kMaxSimulateWidth) + ")");
  const std::uint64_t size = std::uint64_t{1} << n;
  const std::size_t words = static_cast<std::size_t>((size + 63) / 64);

  std::vector<std::vector<std::uint64_t>> cols(n + 1);
  for (int j = 1; j <= n; ++j) {
    auto& col = cols[j];
    col.resize(words);
    const int p = n - j;  // state-integer bit for wire j
    if (p < 6) {
      std::fill(col.begin(), col.end(), kLowPatterns[p]);
    } else {
      for (std::size_t w = 0; w < words; ++w)
        col[w] = ((w * 64) >> p) & 1 ? ~std::uint64_t{0} : 0;
    }
  }

  std::vector<std::uint64_t> cond(words);
  for (const Gate& g : c.gates()) {
    std::fill(cond.begin(), cond.end(), ~std::uint64_t{0});
    for (int j : g.pos_controls()) {
      const auto& col = cols[j];
      for (std::size_t w = 0; w < words; ++w) cond[w] &= col[w];
    }
    for (int j : g.neg_controls()) {
      const auto& col = cols[j];
      for (std::size_t w = 0; w < words; ++w) cond[w] &= ~col[w];
    }
    auto& tgt = cols[g.target];
    for (std::size_t w = 0; w < words; ++w) tgt[w] ^= cond[w];
  }

  std::vector<std::uint64_t> images(size, 0);
  for (int j = 1; j <= n; ++j) {
    const auto& col = cols[j];
    const int p = n - j;
    for (std::uint64_t x = 0; x < size; ++x)
      images[x] |= ((col[x >> 6] >> (x & 63)) & 1) << p;
  }
  return Permutation::from_images(n, std::move(images));
}

std::uint64_t apply_to_state(const Circuit& c, std::uint64_t state) {
  for (const Gate& g : c.gates()) state = g.apply(c.width(), state);
  return state;
}

long long CostModel::gate_cost(const Gate& g, int n) const {
  const int m = g.num_controls();
  long long base;
  if (m <= 1)
    base = 1;
  else if (m == 2)
    base = toffoli_cost;
  else if (m == n - 1)
    base = static_cast<long long>(mct_full_factor) * n * n;
  else if (m <= n / 2)
    base = static_cast<long long>(mct_small_slope) * m - 22;
  else
    base = 24ll * m - 40;
  return base +
         static_cast<long long>(neg_control_surcharge) * g.num_negative_controls();
}

long long elementary_cost(const Circuit& c, const CostModel& model) {
  long long total = 0;
  for (const Gate& g : c.gates()) total += model.gate_cost(g, c.width());
  return total;
}

void emit_circuit(const Circuit& c, std::ostream& out) {
  out << "# width " << c.width() << "\n";
  for (const Gate& g : c.gates()) {
    out << "t " << g.target;
    for (int j = 1; j <= c.width(); ++j) {
      if (g.pos_mask & (std::uint64_t{1} << (j - 1))) out << " q" << j;
      if (g.neg_mask & (std::uint64_t{1} << (j - 1))) out << " -q" << j;
    }
    out << "\n";
  }
}

Circuit parse_circuit(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  int n = -1;
  Circuit circuit;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream fields(raw);
    std::string head;
    if (!(fields >> head)) continue;
    if (n < 0) {
      std::string width_kw;
      int width = 0;
      if (head != "#" || !(fields >> width_kw) || width_kw != "width" ||
          !(fields >> width))
        throw ParseError(line_no, "expected '# width <n>' header");
      if (width < 1 || width > kMaxCircuitWidth)
        throw ParseError(line_no, "width outside [1, " +
                                      std::to_string(kMaxCircuitWidth) + "]");
      circuit = Circuit(width);
      n = width;
      continue;
    }
    if (head[0] == '#') continue;
    if (head != "t") throw ParseError(line_no, "expected a 't' gate line");
    int target = 0;
    if (!(fields >> target)) throw ParseError(line_no, "missing target wire");
    if (target < 1 || target > n)
      throw ParseError(line_no, "target wire out of range");
    std::uint64_t pos = 0, neg = 0;
    std::string token;
    while (fields >> token) {
      bool negative = false;
      std::string name = token;
      if (!name.empty() && name[0] == '-') {
        negative = true;
        name.erase(0, 1);
      }
      if (name.size() < 2 || name[0] != 'q')
        throw ParseError(line_no, "malformed control '" + token + "'");
      int wire = 0;
      try {
        std::size_t used = 0;
        wire = std::stoi(name.substr(1), &used);
        if (used != name.size() - 1) throw std::invalid_argument(name);
      } catch (const std::exception&) {
        throw ParseError(line_no, "malformed control '" + token + "'");
      }
      if (wire < 1 || wire > n)
        throw ParseError(line_no, "control wire out of range");
      const std::uint64_t bit = std::uint64_t{1} << (wire - 1);
      if (((pos | neg) & bit) || wire == target)
        throw ParseError(line_no, "control wire repeated or equal to target");
      (negative ? neg : pos) |= bit;
    }
    circuit.push_back(Gate::mct(target, pos, neg));
  }
  if (n < 0) throw ParseError(line_no ? line_no : 1, "missing circuit header");
  return circuit;
}

std::string SynthReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["rest_strategy"] = rest_strategy;
  j["iterations"] = iterations;
  j["pairs_per_iteration"] = pairs_per_iteration;
  j["gate_count"] = gate_count;
  j["elementary_estimate"] = elementary_estimate;
  j["support_initial"] = support_initial;
  j["support_after_reduction"] = support_after_reduction;
  j["phase_breakdown"] = {
      {"fix_zero", {{"gates", fix_zero_phase.gates},
                    {"elementary", fix_zero_phase.elementary}}},
      {"reduction", {{"gates", reduction_phase.gates},
                     {"elementary", reduction_phase.elementary}}},
      {"rest", {{"gates", rest_phase.gates},
                {"elementary", rest_phase.elementary}}},
  };
  j["rest_shared_toffoli_savings"] = rest_shared_toffoli_savings;
  return j.dump(2) + "\n";
}

}  // namespace revsynth
