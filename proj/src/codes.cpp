#include "guessdec/codes.hpp"

#include <bit>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "guessdec/rng.hpp"

namespace guessdec::codes {

using gf2::BitMatrix;
using gf2::BitVector;

namespace {

// Every generator row must be annihilated by every parity row.
void check_orthogonal(const BitMatrix& generator, const BitMatrix& parity) {
  for (std::size_t i = 0; i < generator.rows(); ++i) {
    for (std::size_t j = 0; j < parity.rows(); ++j) {
      if (gf2::dot(generator.row(i), parity.row(j))) {
        throw std::logic_error("LinearCode: generator and parity are not orthogonal");
      }
    }
  }
}

}  // namespace

LinearCode::LinearCode(BitMatrix generator, BitMatrix parity,
                       gf2::SystematicParity systematic, std::string name)
    : n_(generator.cols()),
      k_(generator.rows()),
      generator_(std::move(generator)),
      parity_(std::move(parity)),
      systematic_(std::move(systematic)),
      name_(std::move(name)) {}

LinearCode LinearCode::from_parity(BitMatrix parity, std::string name) {
  if (parity.rows() == 0 || parity.cols() == 0) {
    throw std::invalid_argument("from_parity: empty matrix");
  }
  gf2::SystematicParity sys = gf2::systematize(parity);
  BitMatrix generator = gf2::null_space_basis(parity);
  check_orthogonal(generator, parity);
  return LinearCode(std::move(generator), std::move(parity), std::move(sys),
                    std::move(name));
}

LinearCode LinearCode::from_generator(BitMatrix generator, std::string name) {
  if (generator.rows() == 0 || generator.cols() == 0) {
    throw std::invalid_argument("from_generator: empty matrix");
  }
  if (gf2::rank(generator) != generator.rows()) {
    throw std::runtime_error("from_generator: rows are linearly dependent");
  }
  BitMatrix parity = gf2::null_space_basis(generator);
  gf2::SystematicParity sys = gf2::systematize(parity);
  check_orthogonal(generator, parity);
  return LinearCode(std::move(generator), std::move(parity), std::move(sys),
                    std::move(name));
}

BitVector LinearCode::encode(const BitVector& info) const {
  if (info.size() != k_) {
    throw std::invalid_argument("encode: info word length does not match k");
  }
  BitVector word(n_);
  for (std::size_t i = 0; i < k_; ++i) {
    if (info.get(i)) word ^= generator_.row(i);
  }
  return word;
}

LinearCode hamming_7_4() {
  const BitMatrix h = BitMatrix::from_strings({
      "1000111",
      "0101011",
      "0011101",
  });
  return LinearCode::from_parity(h, "hamming74");
}

LinearCode reed_muller(unsigned r, unsigned m) {
  if (r > m || m > 20) {
    throw std::invalid_argument("reed_muller: need r <= m and m <= 20");
  }
  const std::size_t n = std::size_t{1} << m;
  // Monomial masks of degree <= r, lightest degree first, then by value.
  std::vector<std::uint32_t> masks;
  for (unsigned degree = 0; degree <= r; ++degree) {
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
      if (std::popcount(mask) == static_cast<int>(degree)) masks.push_back(mask);
    }
  }
  BitMatrix generator(masks.size(), n);
  for (std::size_t row = 0; row < masks.size(); ++row) {
    for (std::size_t point = 0; point < n; ++point) {
      if ((point & masks[row]) == masks[row]) generator.set(row, point, true);
    }
  }
  std::ostringstream name;
  name << "rm_r" << r << "_m" << m;
  return LinearCode::from_generator(std::move(generator), name.str());
}

LinearCode random_code(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k >= n) {
    throw std::invalid_argument("random_code: need 0 < k < n");
  }
  SplitMix64 rng(substream(seed, 0, kStreamCodeGen));
  BitMatrix generator(0, 0);
  do {
    BitMatrix candidate(k, n);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        candidate.set(i, j, rng.next_bit());
      }
    }
    generator = std::move(candidate);
  } while (gf2::rank(generator) != k);
  std::ostringstream name;
  name << "random_n" << n << "_k" << k << "_s" << seed;
  return LinearCode::from_generator(std::move(generator), name.str());
}

LinearCode load_code(const std::string& path) {
  BitMatrix parity = gf2::load_matrix(path);
  std::string name = std::filesystem::path(path).stem().string();
  for (char& c : name) {
    if (c == ',') c = '_';
  }
  if (name.empty()) name = "file";
  return LinearCode::from_parity(std::move(parity), std::move(name));
}

}  // namespace guessdec::codes
