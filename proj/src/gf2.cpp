#include "guessdec/gf2.hpp"

#include <bit>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace guessdec::gf2 {

BitVector BitVector::from_string(const std::string& bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i, true);
    else if (bits[i] != '0')
      throw std::invalid_argument("bit string may contain only '0' and '1'");
  }
  return v;
}

bool BitVector::is_zero() const {
  for (std::uint64_t w : words_)
    if (w) return false;
  return true;
}

std::size_t BitVector::weight() const {
  std::size_t w = 0;
  for (std::uint64_t word : words_) w += std::popcount(word);
  return w;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (size_ != other.size_) throw std::invalid_argument("BitVector xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

bool lex_less(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("lex_less: length mismatch");
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    const std::uint64_t diff = wa[i] ^ wb[i];
    if (diff) {
      // Lowest differing bit is the first differing index; 0 there wins.
      return (wa[i] & (diff & -diff)) == 0;
    }
  }
  return false;
}

bool dot(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  std::uint64_t acc = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) acc ^= wa[i] & wb[i];
  return std::popcount(acc) & 1u;
}

std::ostream& operator<<(std::ostream& os, const BitVector& v) { return os << v.to_string(); }

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  BitMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged row lengths");
    m.rows_[i] = BitVector::from_string(rows[i]);
  }
  return m;
}

void BitMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (auto& r : rows_) {
    const bool ba = r.get(a);
    const bool bb = r.get(b);
    r.set(a, bb);
    r.set(b, ba);
  }
}

BitVector mat_vec(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: dimension mismatch");
  BitVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out.set(i, dot(m.row(i), v));
  return out;
}

std::size_t rank(BitMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    std::swap(m.row(r), m.row(pivot));
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.row(i) ^= m.row(r);
    ++r;
  }
  return r;
}

SystematicParity systematize(const BitMatrix& h) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  if (m > n) throw std::invalid_argument("systematize: more rows than columns");

  BitMatrix work = h;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  for (std::size_t pr = 0; pr < m; ++pr) {
    // Locate a pivot for row pr: first column >= pr with a 1 in rows >= pr.
    std::size_t pc = n, ri = m;
    for (std::size_t c = pr; c < n && pc == n; ++c) {
      for (std::size_t i = pr; i < m; ++i) {
        if (work.get(i, c)) {
          pc = c;
          ri = i;
          break;
        }
      }
    }
    if (pc == n) {
      std::ostringstream msg;
      msg << "systematize: matrix is rank-deficient, no pivot for row " << pr;
      throw std::runtime_error(msg.str());
    }
    if (pc != pr) {
      work.swap_columns(pr, pc);
      std::swap(perm[pr], perm[pc]);
    }
    if (ri != pr) std::swap(work.row(pr), work.row(ri));
    for (std::size_t i = 0; i < m; ++i)
      if (i != pr && work.get(i, pr)) work.row(i) ^= work.row(pr);
  }

  SystematicParity sys;
  sys.n = n;
  sys.k = n - m;
  sys.column_perm = std::move(perm);
  sys.p = BitMatrix(m, n - m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n - m; ++j) sys.p.set(i, j, work.get(i, m + j));
  return sys;
}

BitVector apply_permutation(const BitVector& x, const std::vector<std::size_t>& perm) {
  if (x.size() != perm.size()) throw std::invalid_argument("apply_permutation: length mismatch");
  BitVector out(x.size());
  for (std::size_t j = 0; j < perm.size(); ++j) out.set(j, x.get(perm[j]));
  return out;
}

BitVector undo_permutation(const BitVector& x, const std::vector<std::size_t>& perm) {
  if (x.size() != perm.size()) throw std::invalid_argument("undo_permutation: length mismatch");
  BitVector out(x.size());
  for (std::size_t j = 0; j < perm.size(); ++j) out.set(perm[j], x.get(j));
  return out;
}

BitMatrix null_space_basis(const BitMatrix& m) {
  const SystematicParity sys = systematize(m);
  const std::size_t r = m.rows();
  // In the permuted column order [I | P] the null space is spanned by
  // [P^T | I]; scatter each basis row back through the permutation.
  BitMatrix basis(sys.k, sys.n);
  for (std::size_t j = 0; j < sys.k; ++j) {
    BitVector permuted(sys.n);
    for (std::size_t i = 0; i < r; ++i) permuted.set(i, sys.p.get(i, j));
    permuted.set(r + j, true);
    basis.row(j) = undo_permutation(permuted, sys.column_perm);
  }
  return basis;
}

BitMatrix parse_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("matrix file: missing header line");
  std::istringstream hs(header);
  long long rows = -1, cols = -1;
  std::string extra;
  if (!(hs >> rows >> cols) || (hs >> extra) || rows <= 0 || cols <= 0)
    throw std::runtime_error("matrix file: header must be 'rows cols' with positive counts");

  BitMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::string line;
  for (long long i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("matrix file: fewer rows than declared");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<long long>(line.size()) != cols)
      throw std::runtime_error("matrix file: row length does not match declared column count");
    for (long long j = 0; j < cols; ++j) {
      if (line[j] == '1')
        m.set(i, j, true);
      else if (line[j] != '0')
        throw std::runtime_error("matrix file: rows must contain only '0' and '1'");
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) throw std::runtime_error("matrix file: trailing content after last row");
  }
  return m;
}

BitMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  return parse_matrix(in);
}

}  // namespace guessdec::gf2
