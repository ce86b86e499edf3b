#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace guessdec::gf2 {

// Dense bit-packed GF(2) vector. Index 0 is the first transmitted position;
// all arithmetic is elementwise mod 2.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  static BitVector from_string(const std::string& bits);  // e.g. "0101"

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  bool is_zero() const;
  std::size_t weight() const;

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitVector&) const = default;

  std::string to_string() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// True iff a precedes b lexicographically: at the first index where the two
// differ, a holds the 0. Total order on equal-length vectors.
bool lex_less(const BitVector& a, const BitVector& b);

// Parity of the inner product <a, b>.
bool dot(const BitVector& a, const BitVector& b);

std::ostream& operator<<(std::ostream& os, const BitVector& v);

// Row-major dense GF(2) matrix.
class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_strings(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }

  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }

  void swap_columns(std::size_t a, std::size_t b);

  bool operator==(const BitMatrix&) const = default;

private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

// m * v^T; the result has one bit per row of m.
BitVector mat_vec(const BitMatrix& m, const BitVector& v);

std::size_t rank(BitMatrix m);

// A parity-check matrix reduced to [I | P], with the column moves recorded:
// column_perm[j] is the original index of the column now at position j.
struct SystematicParity {
  BitMatrix p;                           // (n-k) x k
  std::vector<std::size_t> column_perm;  // size n, a bijection on 0..n-1
  std::size_t n = 0;
  std::size_t k = 0;
};

// Row-reduces h to [I | P]. The permutation stays the identity when the
// first `rows` columns are already independent; a deficient pivot column is
// swapped with the smallest-index later column that completes the pivot.
// Throws if h does not have full row rank, naming the failing pivot row.
SystematicParity systematize(const BitMatrix& h);

// out[j] = x[perm[j]], so x is rearranged into systematic column order.
BitVector apply_permutation(const BitVector& x, const std::vector<std::size_t>& perm);
// Inverse of apply_permutation: out[perm[j]] = x[j].
BitVector undo_permutation(const BitVector& x, const std::vector<std::size_t>& perm);

// Basis of {x : m x^T = 0} for a full-row-rank m, one basis vector per row.
BitMatrix null_space_basis(const BitMatrix& m);

// Text format: "rows cols" on the first line, then one line of exactly
// `cols` characters from {0,1} per row. Anything else is rejected.
BitMatrix parse_matrix(std::istream& in);
BitMatrix load_matrix(const std::string& path);

}  // namespace guessdec::gf2
