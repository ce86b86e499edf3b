#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "guessdec/codes.hpp"
#include "guessdec/gf2.hpp"

namespace guessdec::channel {

// Magnitude bound applied to every stored LLR; keeps soft weights finite.
inline constexpr double kLlrClamp = 1e6;

// Per-position log-likelihood ratios log P(y_i|c_i=0) - log P(y_i|c_i=1) in
// natural-log units. Construction clamps magnitudes to kLlrClamp and rejects
// NaN, so every stored entry is finite.
class LlrVector {
 public:
  LlrVector() = default;
  explicit LlrVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double reliability(std::size_t i) const { return std::fabs(values_[i]); }
  const std::vector<double>& values() const { return values_; }
  std::vector<double> reliabilities() const;

 private:
  std::vector<double> values_;
};

enum class Kind { bsc, awgn };

// Channel description plus the seed its noise streams derive from.
struct ChannelSpec {
  Kind kind = Kind::bsc;
  double p = 0.0;       // bsc crossover probability, in (0, 1/2)
  double snr_db = 0.0;  // awgn Eb/N0 in dB
  std::uint64_t seed = 0;

  static ChannelSpec bsc(double p, std::uint64_t seed);
  static ChannelSpec awgn(double snr_db, std::uint64_t seed);

  double param() const { return kind == Kind::bsc ? p : snr_db; }
  std::string name() const;
};

// ln((1-p)/p): the reliability shared by every position of a BSC output.
double bsc_llr_magnitude(double p);

// Noise variance per dimension for BPSK at Eb/N0 = snr_db and code rate R:
// sigma^2 = 1 / (2 R 10^(snr_db/10)).
double awgn_sigma_sq(double rate, double snr_db);

// Sends codeword c over the channel. BSC: iid flips, r_i = +/- ln((1-p)/p).
// AWGN: BPSK 0 -> +1, 1 -> -1, y = x + noise, r_i = 2 y_i / sigma^2.
// Deterministic in (spec.seed, frame_index). Throws std::invalid_argument
// when c is not a codeword of `code`.
LlrVector transmit(const codes::LinearCode& code, const gf2::BitVector& c,
                   const ChannelSpec& spec, std::uint64_t frame_index);

// z_i = 0 where r_i >= 0, else 1.
gf2::BitVector hard_decision(const LlrVector& r);

// Soft weight of a pattern: sum of reliabilities over its support,
// accumulated in ascending index order. Every soft weight in the library
// goes through this fold, so equal supports always produce bit-identical
// doubles.
double soft_weight(const gf2::BitVector& e, const std::vector<double>& reliability);
double soft_weight(const gf2::BitVector& e, const LlrVector& r);

// H z^T for the code's parity-check matrix.
gf2::BitVector syndrome(const codes::LinearCode& code, const gf2::BitVector& z);

}  // namespace guessdec::channel
