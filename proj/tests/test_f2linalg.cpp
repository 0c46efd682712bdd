#include "revsynth/f2linalg.hpp"

#include <doctest.h>

#include "revsynth/rng.hpp"
#include "test_util.hpp"

using namespace revsynth;
using test::matrix_literal;
using test::oracle_rank;
using test::random_matrix;
using test::to_grid;

TEST_CASE("bitvec integer round trip uses index 1 as the most significant bit") {
  const BitVec v = BitVec::from_uint(8, 6);
  CHECK(v.to_string() == "00000110");
  CHECK(v.get(6));
  CHECK(v.get(7));
  CHECK_FALSE(v.get(8));
  CHECK(v.to_uint() == 6);
  CHECK(v.leading_index() == 6);
  CHECK(v.popcount() == 2);
  CHECK(BitVec(5).leading_index() == 0);
}

TEST_CASE("rank of the identity") {
  for (int n : {1, 4, 9}) CHECK(rank(BitMatrix::identity(n)) == n);
}

TEST_CASE("rank of the four selected columns of the worked example") {
  // Columns vec(1), vec(3), vec(4), vec(6) over eight rows.
  BitMatrix v(8, 4);
  const std::uint64_t values[] = {1, 3, 4, 6};
  for (int j = 1; j <= 4; ++j) {
    const BitVec col = BitVec::from_uint(8, values[j - 1]);
    for (int i = 1; i <= 8; ++i) v.set(i, j, col.get(i));
  }
  CHECK(rank(v) == 4);
}

TEST_CASE("rank matches an independent elimination oracle") {
  Rng rng(411);
  for (int trial = 0; trial < 50; ++trial) {
    const BitMatrix m = random_matrix(rng, 6, 6);
    CHECK(rank(m) == oracle_rank(to_grid(m)));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const BitMatrix m = random_matrix(rng, 5, 9);
    CHECK(rank(m) == oracle_rank(to_grid(m)));
  }
}

TEST_CASE("invert identity and multiply-back") {
  CHECK(invert(BitMatrix::identity(7)) == BitMatrix::identity(7));
  Rng rng(412);
  for (int trial = 0; trial < 20; ++trial) {
    const BitMatrix m = random_invertible_matrix(rng, 10);
    const BitMatrix inv = invert(m);
    CHECK(inv.multiply(m) == BitMatrix::identity(10));
    CHECK(invert(inv) == m);
  }
}

TEST_CASE("invert rejects singular matrices") {
  BitMatrix m(3, 3);
  m.set(1, 1, true);
  m.set(2, 2, true);  // third row is zero
  CHECK_THROWS_AS(invert(m), SingularMatrixError);
  CHECK_THROWS_AS(pmh_synthesize(m, 1), SingularMatrixError);
  CHECK_THROWS_AS(gaussian_synthesize(m), SingularMatrixError);
}

TEST_CASE("span tracker answers membership exactly") {
  SpanTracker empty(8);
  CHECK(empty.contains(BitVec(8)));
  CHECK_FALSE(empty.contains(BitVec::from_uint(8, 1)));

  SpanTracker span(8);
  span.insert(BitVec::from_uint(8, 1));
  span.insert(BitVec::from_uint(8, 3));
  // 2 = 1 xor 3, which is what invalidates the pairs (1,3), (2,4), (3,5),
  // (254,1), (255,2) during the worked example's second selection step.
  CHECK(span.contains(BitVec::from_uint(8, 2)));
  CHECK(span_contains(span, BitVec::from_uint(8, 2)));

  span.insert(BitVec::from_uint(8, 4));
  CHECK(span.contains(BitVec::from_uint(8, 6)));
  CHECK_FALSE(span.contains(BitVec::from_uint(8, 8)));
  CHECK(span.size() == 3);

  CHECK_FALSE(span.insert(BitVec::from_uint(8, 7)));
  CHECK(span.size() == 3);
}

TEST_CASE("span membership is monotone under insertions") {
  Rng rng(413);
  for (int trial = 0; trial < 20; ++trial) {
    SpanTracker span(10);
    std::vector<BitVec> members;
    for (int step = 0; step < 12; ++step) {
      const BitVec v = BitVec::from_uint(10, uniform_below(rng, 1024));
      if (span.contains(v)) members.push_back(v);
      span.insert(BitVec::from_uint(10, uniform_below(rng, 1024)));
      for (const BitVec& m : members) CHECK(span.contains(m));
    }
  }
}

namespace {

// Exhaustive oracle: the fewest CNOTs realizing the map over two wires.
int min_cnot_count(const BitMatrix& target, int depth_cap) {
  const std::vector<BitMatrix> generators = {
      matrix_literal(2, 2, "11 01"),  // row1 ^= row2: CNOT control 2 target 1
      matrix_literal(2, 2, "10 11"),  // row2 ^= row1: CNOT control 1 target 2
  };
  std::vector<BitMatrix> frontier = {BitMatrix::identity(2)};
  for (int depth = 0; depth <= depth_cap; ++depth) {
    for (const BitMatrix& m : frontier)
      if (m == target) return depth;
    std::vector<BitMatrix> next;
    for (const BitMatrix& m : frontier)
      for (const BitMatrix& g : generators) next.push_back(g.multiply(m));
    frontier = std::move(next);
  }
  return -1;
}

void check_linear_equivalence(const Circuit& circuit, const BitMatrix& m,
                              Rng& rng, int samples) {
  const int n = m.rows();
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t x =
        n == 64 ? rng() : uniform_below(rng, std::uint64_t{1} << n);
    const BitVec expect = m.apply(BitVec::from_uint(n, x));
    CHECK(apply_to_state(circuit, x) == expect.to_uint());
  }
}

}  // namespace

TEST_CASE("cnot synthesis of the identity is empty") {
  CHECK(pmh_synthesize(BitMatrix::identity(6), 2).empty());
  CHECK(gaussian_synthesize(BitMatrix::identity(6)).empty());
}

TEST_CASE("the two-wire swap takes exactly three CNOTs") {
  const BitMatrix swap = matrix_literal(2, 2, "01 10");
  REQUIRE(min_cnot_count(swap, 4) == 3);

  const Circuit via_pmh = pmh_synthesize(swap, 1);
  CHECK(via_pmh.size() == 3);
  CHECK(simulate(via_pmh) == Permutation::from_images(2, {0, 2, 1, 3}));

  const Circuit via_gauss = gaussian_synthesize(swap);
  CHECK(via_gauss.size() == 3);
  CHECK(simulate(via_gauss) == simulate(via_pmh));
}

TEST_CASE("pmh output realizes x -> Mx") {
  Rng rng(414);
  SUBCASE("exhaustively for a small width") {
    for (int trial = 0; trial < 10; ++trial) {
      const BitMatrix m = random_invertible_matrix(rng, 6);
      const Circuit c = pmh_synthesize(m);
      for (std::uint64_t x = 0; x < 64; ++x) {
        const BitVec expect = m.apply(BitVec::from_uint(6, x));
        CHECK(apply_to_state(c, x) == expect.to_uint());
      }
    }
  }
  SUBCASE("on sampled inputs at width 32") {
    for (int trial = 0; trial < 5; ++trial) {
      const BitMatrix m = random_invertible_matrix(rng, 32);
      const Circuit c = pmh_synthesize(m);
      check_linear_equivalence(c, m, rng, 64);
    }
  }
}

TEST_CASE("gaussian and pmh synthesis agree functionally") {
  Rng rng(415);
  for (int trial = 0; trial < 10; ++trial) {
    const BitMatrix m = random_invertible_matrix(rng, 16);
    CHECK(simulate(pmh_synthesize(m)) == simulate(gaussian_synthesize(m)));
  }
}

TEST_CASE("sectioned elimination does not lose to plain gaussian on average") {
  Rng rng(416);
  long long pmh_total = 0, gauss_total = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const BitMatrix m = random_invertible_matrix(rng, 16);
    pmh_total += static_cast<long long>(pmh_synthesize(m).size());
    gauss_total += static_cast<long long>(gaussian_synthesize(m).size());
  }
  CHECK(pmh_total <= gauss_total);
}

TEST_CASE("default section size follows half the log") {
  CHECK(default_section_size(2) == 1);
  CHECK(default_section_size(8) == 2);
  CHECK(default_section_size(16) == 2);
  CHECK(default_section_size(64) == 3);
}

TEST_CASE("matrix debug serialization prints rows of 0/1, row 1 first") {
  const BitMatrix m = matrix_literal(2, 3, "011 100");
  CHECK(m.to_string() == "011\n100\n");
}
