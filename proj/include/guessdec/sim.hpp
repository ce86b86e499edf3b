#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "guessdec/channel.hpp"
#include "guessdec/codes.hpp"
#include "guessdec/decoders.hpp"

namespace guessdec::sim {

struct DecoderSetup {
  decoders::DecoderKind kind = decoders::DecoderKind::gcd;
  decoders::DecoderConfig config;
};

// One paired Monte-Carlo run: every configured decoder sees the same noisy
// reception of the same random codeword, frame by frame.
struct SimConfig {
  channel::ChannelSpec channel;     // its seed field is superseded by `seed`
  std::vector<DecoderSetup> decoders;
  std::uint64_t frames = 1;
  std::uint64_t seed = 0;           // sole source of randomness for the run
  std::optional<double> target_fer;              // resolved by the caller
  std::optional<std::uint64_t> stop_at_errors;   // applied per finished chunk
  unsigned jobs = 1;
  bool check_pairing = false;       // per-frame dominance/agreement counters
};

struct DecoderStats {
  decoders::DecoderKind kind = decoders::DecoderKind::gcd;
  std::uint64_t frames = 0;
  std::uint64_t errors = 0;
  std::uint64_t guess_total = 0;
  std::uint64_t max_guesses = 0;
  std::uint64_t ml_certified = 0;
  // bucket b counts frames whose guess count g satisfies 2^b <= g < 2^(b+1)
  std::array<std::uint64_t, 64> guess_histogram{};

  double fer() const;
  double fer_ci95() const;  // 95% binomial half-width, normal approximation
  double avg_guesses() const;
  double ml_certified_fraction() const;
};

struct SimResult {
  std::vector<DecoderStats> per_decoder;  // order matches SimConfig::decoders
  std::uint64_t frames_run = 0;
  // Counted only when check_pairing is set and both gnd and gcd run:
  // frames where gcd needed more guesses than gnd (both uncapped).
  std::uint64_t dominance_violations = 0;
  // Frames where two ml-certified decoders disagreed on the optimal soft
  // weight (exact comparison).
  std::uint64_t agreement_mismatches = 0;
  double wall_seconds = 0.0;  // informational; never part of the CSV
};

// Runs config.frames frames (fewer when stop_at_errors fires). Frames are
// processed in fixed 256-frame chunks folded in chunk order, so counters
// and the early-stop point are byte-identical for every value of `jobs`.
// The early stop fires at the first chunk boundary where every decoder has
// at least stop_at_errors frame errors.
SimResult run_paired(const codes::LinearCode& code, const SimConfig& config);

// CSV layout used by the CLI. One row per decoder.
std::string csv_header();
std::vector<std::string> csv_rows(const codes::LinearCode& code, const SimConfig& config,
                                  const SimResult& result);

struct SnrSearchOptions {
  double lo_db = -6.0;
  double hi_db = 14.0;
  double tolerance_db = 0.25;
  std::uint64_t probe_frames = 50000;
  std::uint64_t probe_errors = 200;  // per-probe stop_at_errors
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  decoders::DecoderKind probe_decoder = decoders::DecoderKind::gcd;
  std::uint64_t max_guesses = decoders::kNoGuessLimit;
};

// Bisects Eb/N0 until the probe FER confidence interval brackets
// target_fer or the step falls below tolerance_db. Throws
// std::runtime_error when [lo_db, hi_db] does not bracket the target.
double find_snr_at_fer(const codes::LinearCode& code, double target_fer,
                       const SnrSearchOptions& options = {});

}  // namespace guessdec::sim
