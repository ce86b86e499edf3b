#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "guessdec/gf2.hpp"

namespace guessdec::codes {

// A binary linear block code [n, k], held as a generator/parity-check pair
// together with a cached systematic form of the parity-check matrix.
// Immutable after construction; safe to share across threads.
class LinearCode {
 public:
  // Interprets `parity` as the (n-k) x n parity-check matrix; the generator
  // spans its null space. Throws std::runtime_error when rows are dependent.
  static LinearCode from_parity(gf2::BitMatrix parity, std::string name);

  // Interprets `generator` as the k x n generator matrix; the parity rows
  // span its null space. Throws std::runtime_error when rows are dependent.
  static LinearCode from_generator(gf2::BitMatrix generator, std::string name);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  double rate() const { return static_cast<double>(k_) / static_cast<double>(n_); }
  const std::string& name() const { return name_; }
  const gf2::BitMatrix& generator() const { return generator_; }
  const gf2::BitMatrix& parity() const { return parity_; }

  // Column-permuted [I | P] form of the parity-check matrix, computed once
  // at construction.
  const gf2::SystematicParity& systematic() const { return systematic_; }

  // u (length k) -> u G (length n).
  gf2::BitVector encode(const gf2::BitVector& info) const;

 private:
  LinearCode(gf2::BitMatrix generator, gf2::BitMatrix parity,
             gf2::SystematicParity systematic, std::string name);

  std::size_t n_;
  std::size_t k_;
  gf2::BitMatrix generator_;
  gf2::BitMatrix parity_;
  gf2::SystematicParity systematic_;
  std::string name_;
};

// The [7,4] Hamming code with H = [I | P]; the four non-identity columns
// appear in increasing binary value, reading row 0 as the most significant
// bit.
LinearCode hamming_7_4();

// Reed-Muller code RM(r, m): block length 2^m, dimension sum_{i<=r} C(m,i).
// Generator rows evaluate all monomials of degree <= r, ordered by degree
// then by variable mask; evaluation points are y = 0 .. 2^m - 1 with bit j
// of y giving variable x_j. Throws std::invalid_argument unless r <= m and
// m <= 20.
LinearCode reed_muller(unsigned r, unsigned m);

// Uniformly random full-rank k x n generator (resampled until full rank),
// deterministic in `seed`. Requires 0 < k < n.
LinearCode random_code(std::size_t n, std::size_t k, std::uint64_t seed);

// Reads a parity-check matrix in the text format accepted by
// gf2::load_matrix().
LinearCode load_code(const std::string& path);

}  // namespace guessdec::codes
