#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "guessdec/codes.hpp"
#include "guessdec/gf2.hpp"
#include "guessdec/rng.hpp"

using guessdec::codes::LinearCode;
using guessdec::gf2::BitMatrix;
using guessdec::gf2::BitVector;

namespace {

// All 2^k codewords as strings; exhaustive, so keep k small.
std::set<std::string> codeword_set(const LinearCode& code) {
  std::set<std::string> out;
  const std::size_t k = code.k();
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << k); ++u) {
    BitVector info(k);
    for (std::size_t i = 0; i < k; ++i) info.set(i, (u >> i) & 1);
    out.insert(code.encode(info).to_string());
  }
  return out;
}

void check_orthogonal(const LinearCode& code) {
  for (std::size_t g = 0; g < code.k(); ++g) {
    CHECK(guessdec::gf2::mat_vec(code.parity(), code.generator().row(g)).is_zero());
  }
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (unsigned i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

}  // namespace

TEST_SUITE("codes") {

TEST_CASE("hamming 7 4 shape and minimum distance") {
  LinearCode code = guessdec::codes::hamming_7_4();
  CHECK(code.n() == 7);
  CHECK(code.k() == 4);
  CHECK(code.rate() == doctest::Approx(4.0 / 7.0));
  check_orthogonal(code);

  std::size_t min_weight = 7;
  const auto words = codeword_set(code);
  CHECK(words.size() == 16);
  CHECK(words.count(std::string(7, '0')) == 1);
  for (const std::string& w : words) {
    const std::size_t weight = std::count(w.begin(), w.end(), '1');
    if (weight > 0) min_weight = std::min(min_weight, weight);
  }
  CHECK(min_weight == 3);
}

TEST_CASE("hamming weight-1 errors have distinct nonzero syndromes") {
  LinearCode code = guessdec::codes::hamming_7_4();
  std::set<std::string> syndromes;
  for (std::size_t i = 0; i < 7; ++i) {
    BitVector e(7);
    e.set(i, true);
    BitVector s = guessdec::gf2::mat_vec(code.parity(), e);
    CHECK_FALSE(s.is_zero());
    syndromes.insert(s.to_string());
  }
  CHECK(syndromes.size() == 7);
}

TEST_CASE("reed_muller dimensions match the binomial sums") {
  struct Case {
    unsigned r, m;
    std::size_t n, k;
  };
  for (const Case& c : {Case{1, 5, 32, 6}, Case{2, 5, 32, 16}, Case{3, 5, 32, 26},
                        Case{1, 4, 16, 5}, Case{2, 6, 64, 22}}) {
    LinearCode code = guessdec::codes::reed_muller(c.r, c.m);
    CHECK(code.n() == c.n);
    CHECK(code.k() == c.k);
    std::uint64_t expect = 0;
    for (unsigned i = 0; i <= c.r; ++i) expect += binomial(c.m, i);
    CHECK(code.k() == expect);
    check_orthogonal(code);
  }
}

TEST_CASE("reed_muller edge orders") {
  // r = 0 is the repetition code: two codewords, minimum distance 2^m.
  LinearCode rep = guessdec::codes::reed_muller(0, 4);
  CHECK(rep.k() == 1);
  const auto rep_words = codeword_set(rep);
  CHECK(rep_words.count(std::string(16, '0')) == 1);
  CHECK(rep_words.count(std::string(16, '1')) == 1);

  // r = m spans all of F_2^(2^m).
  LinearCode full = guessdec::codes::reed_muller(3, 3);
  CHECK(full.k() == 8);
  CHECK(guessdec::gf2::rank(full.generator()) == 8);
}

TEST_CASE("reed_muller rejects invalid orders") {
  CHECK_THROWS_AS(guessdec::codes::reed_muller(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(guessdec::codes::reed_muller(1, 21), std::invalid_argument);
}

TEST_CASE("random_code is deterministic in the seed and full rank") {
  LinearCode a = guessdec::codes::random_code(12, 5, 7);
  LinearCode b = guessdec::codes::random_code(12, 5, 7);
  LinearCode c = guessdec::codes::random_code(12, 5, 8);
  CHECK(a.generator() == b.generator());
  CHECK(a.generator() != c.generator());
  CHECK(guessdec::gf2::rank(a.generator()) == 5);
  check_orthogonal(a);
}

TEST_CASE("random_code rejects degenerate dimensions") {
  CHECK_THROWS_AS(guessdec::codes::random_code(5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(guessdec::codes::random_code(5, 5, 1), std::invalid_argument);
}

TEST_CASE("load_code round trips the hamming parity-check matrix") {
  const std::string path = "codes_load_test.txt";
  {
    std::ofstream out(path);
    out << "3 7\n1000111\n0101011\n0011101\n";
  }
  LinearCode loaded = guessdec::codes::load_code(path);
  std::remove(path.c_str());
  CHECK(loaded.n() == 7);
  CHECK(loaded.k() == 4);
  CHECK(codeword_set(loaded) == codeword_set(guessdec::codes::hamming_7_4()));
}

TEST_CASE("load_code rejects bad files") {
  const std::string bad_char = "codes_load_bad_char.txt";
  {
    std::ofstream out(bad_char);
    out << "1 3\n1x1\n";
  }
  CHECK_THROWS_AS(guessdec::codes::load_code(bad_char), std::runtime_error);
  std::remove(bad_char.c_str());

  const std::string dependent = "codes_load_dependent.txt";
  {
    std::ofstream out(dependent);
    out << "2 4\n1100\n1100\n";
  }
  CHECK_THROWS_AS(guessdec::codes::load_code(dependent), std::runtime_error);
  std::remove(dependent.c_str());
}

TEST_CASE("encode is linear") {
  guessdec::SplitMix64 rng(21);
  LinearCode code = guessdec::codes::random_code(20, 9, 3);
  for (int trial = 0; trial < 30; ++trial) {
    BitVector u(9), v(9);
    for (std::size_t i = 0; i < 9; ++i) {
      u.set(i, rng.next_bit());
      v.set(i, rng.next_bit());
    }
    CHECK(code.encode(u ^ v) == (code.encode(u) ^ code.encode(v)));
  }
}

TEST_CASE("every encoded word satisfies the parity checks") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    LinearCode code = guessdec::codes::random_code(14, 6, seed);
    for (const std::string& w : codeword_set(code)) {
      CHECK(guessdec::gf2::mat_vec(code.parity(), BitVector::from_string(w)).is_zero());
    }
  }
}

}  // TEST_SUITE
