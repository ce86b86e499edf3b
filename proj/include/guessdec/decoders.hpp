#pragma once

#include <cstdint>
#include <string>

#include "guessdec/channel.hpp"
#include "guessdec/codes.hpp"
#include "guessdec/gf2.hpp"

namespace guessdec::decoders {

enum class Termination {
  early_stop,  // stopping rule fired with optimality proven
  exhausted,   // full search space enumerated
  cap_hit,     // guess budget ran out first
};

enum class DecoderKind { gnd, gcd, osd_gcd, oracle };

std::string to_string(Termination t);
std::string to_string(DecoderKind k);
// Accepts the strings produced by to_string plus the CLI alias "osd".
// Throws std::invalid_argument on anything else.
DecoderKind parse_decoder_kind(const std::string& name);

inline constexpr std::uint64_t kNoGuessLimit = ~std::uint64_t{0};

struct DecoderConfig {
  std::uint64_t max_guesses = kNoGuessLimit;  // must be >= 1
};

struct DecodeOutcome {
  gf2::BitVector codeword;     // c* = z xor e*, always a codeword
  gf2::BitVector tep;          // e*
  double soft_weight = 0.0;    // soft weight of e* under |r|
  std::uint64_t guesses = 0;   // definition per decoder, see below
  Termination termination = Termination::early_stop;
  bool ml_certified = false;   // termination proves c* is maximum likelihood
};

// Guess-count conventions (these definitions make the per-decoder counts
// comparable; every reported statistic depends on them):
//   decode_gnd     guesses = syndrome checks performed; the all-zero
//                  first pattern counts as 1.
//   decode_gcd,    guesses = re-encodings performed, including the
//   decode_osd_gcd initialization from the all-zero partial pattern; the
//                  emission that triggers the stopping rule is generated
//                  but not counted.
//   decode_oracle  guesses = 2^k, the full codebook.

// Enumerates full-length patterns lightest-first and returns the first one
// whose syndrome matches. On cap_hit, falls back to the valid pattern that
// is zero on the information part (systematic coordinates), so a codeword
// is always returned; ml_certified is false only in that case.
DecodeOutcome decode_gnd(const codes::LinearCode& code, const channel::LlrVector& r,
                         const DecoderConfig& config = {});

// Enumerates information-part patterns lightest-first, re-encoding each
// into a valid full pattern via the code's cached systematic form, and
// keeps the lightest; stops once the next information-part weight cannot
// beat the incumbent. ml_certified unless cap_hit.
DecodeOutcome decode_gcd(const codes::LinearCode& code, const channel::LlrVector& r,
                         const DecoderConfig& config = {});

// decode_gcd after moving the k most reliable (linearly independent)
// positions into the information part, re-running Gaussian elimination per
// reception. Identical loop and guarantees; typically fewer guesses.
DecodeOutcome decode_osd_gcd(const codes::LinearCode& code, const channel::LlrVector& r,
                             const DecoderConfig& config = {});

// Exhaustive maximum-likelihood search over all 2^k codewords; the
// (soft weight, lex)-minimal error pattern wins. Requires k <= 24.
DecodeOutcome decode_oracle(const codes::LinearCode& code, const channel::LlrVector& r);

// Dispatch by kind; `config` is ignored for the oracle.
DecodeOutcome decode(DecoderKind kind, const codes::LinearCode& code,
                     const channel::LlrVector& r, const DecoderConfig& config = {});

}  // namespace guessdec::decoders
