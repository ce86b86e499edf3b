#include "guessdec/channel.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "guessdec/rng.hpp"

namespace guessdec::channel {

using gf2::BitVector;

LlrVector::LlrVector(std::vector<double> values) : values_(std::move(values)) {
  for (double& v : values_) {
    if (std::isnan(v)) throw std::invalid_argument("LlrVector: NaN entry");
    if (v > kLlrClamp) v = kLlrClamp;
    if (v < -kLlrClamp) v = -kLlrClamp;
  }
}

std::vector<double> LlrVector::reliabilities() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = std::fabs(values_[i]);
  return out;
}

ChannelSpec ChannelSpec::bsc(double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("bsc: crossover probability must lie in (0, 0.5)");
  }
  ChannelSpec spec;
  spec.kind = Kind::bsc;
  spec.p = p;
  spec.seed = seed;
  return spec;
}

ChannelSpec ChannelSpec::awgn(double snr_db, std::uint64_t seed) {
  if (!std::isfinite(snr_db)) {
    throw std::invalid_argument("awgn: snr_db must be finite");
  }
  ChannelSpec spec;
  spec.kind = Kind::awgn;
  spec.snr_db = snr_db;
  spec.seed = seed;
  return spec;
}

std::string ChannelSpec::name() const { return kind == Kind::bsc ? "bsc" : "awgn"; }

double bsc_llr_magnitude(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("bsc_llr_magnitude: p must lie in (0, 0.5)");
  }
  return std::log((1.0 - p) / p);
}

double awgn_sigma_sq(double rate, double snr_db) {
  if (!(rate > 0.0) || !std::isfinite(snr_db)) {
    throw std::invalid_argument("awgn_sigma_sq: need rate > 0 and finite snr_db");
  }
  return 1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0));
}

LlrVector transmit(const codes::LinearCode& code, const BitVector& c,
                   const ChannelSpec& spec, std::uint64_t frame_index) {
  if (c.size() != code.n()) {
    throw std::invalid_argument("transmit: word length does not match the code");
  }
  if (!gf2::mat_vec(code.parity(), c).is_zero()) {
    throw std::invalid_argument("transmit: word is not a codeword");
  }
  SplitMix64 rng(substream(spec.seed, frame_index, kStreamChannel));
  const std::size_t n = code.n();
  std::vector<double> llr(n);
  if (spec.kind == Kind::bsc) {
    const double mag = bsc_llr_magnitude(spec.p);
    for (std::size_t i = 0; i < n; ++i) {
      const bool received = c.get(i) ^ (rng.next_double() < spec.p);
      llr[i] = received ? -mag : mag;
    }
  } else {
    const double sigma_sq = awgn_sigma_sq(code.rate(), spec.snr_db);
    const double sigma = std::sqrt(sigma_sq);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = c.get(i) ? -1.0 : 1.0;
      const double y = x + sigma * rng.next_gaussian();
      llr[i] = 2.0 * y / sigma_sq;
    }
  }
  return LlrVector(std::move(llr));
}

BitVector hard_decision(const LlrVector& r) {
  BitVector z(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 0.0) z.set(i, true);
  }
  return z;
}

double soft_weight(const BitVector& e, const std::vector<double>& reliability) {
  if (e.size() != reliability.size()) {
    throw std::invalid_argument("soft_weight: length mismatch");
  }
  double acc = 0.0;
  const auto& words = e.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits) {
      acc += reliability[(w << 6) + static_cast<std::size_t>(std::countr_zero(bits))];
      bits &= bits - 1;
    }
  }
  return acc;
}

double soft_weight(const BitVector& e, const LlrVector& r) {
  return soft_weight(e, r.reliabilities());
}

gf2::BitVector syndrome(const codes::LinearCode& code, const BitVector& z) {
  return gf2::mat_vec(code.parity(), z);
}

}  // namespace guessdec::channel
