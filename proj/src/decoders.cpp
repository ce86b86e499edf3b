#include "guessdec/decoders.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "guessdec/tep.hpp"

namespace guessdec::decoders {

using gf2::BitMatrix;
using gf2::BitVector;

std::string to_string(Termination t) {
  switch (t) {
    case Termination::early_stop: return "early_stop";
    case Termination::exhausted: return "exhausted";
    case Termination::cap_hit: return "cap_hit";
  }
  return "unknown";
}

std::string to_string(DecoderKind k) {
  switch (k) {
    case DecoderKind::gnd: return "gnd";
    case DecoderKind::gcd: return "gcd";
    case DecoderKind::osd_gcd: return "osd_gcd";
    case DecoderKind::oracle: return "oracle";
  }
  return "unknown";
}

DecoderKind parse_decoder_kind(const std::string& name) {
  if (name == "gnd") return DecoderKind::gnd;
  if (name == "gcd") return DecoderKind::gcd;
  if (name == "osd_gcd" || name == "osd") return DecoderKind::osd_gcd;
  if (name == "oracle") return DecoderKind::oracle;
  throw std::invalid_argument("unknown decoder: " + name);
}

namespace {

void check_inputs(const codes::LinearCode& code, const channel::LlrVector& r,
                  const DecoderConfig& config) {
  if (r.size() != code.n()) {
    throw std::invalid_argument("decode: LLR length does not match the code");
  }
  if (config.max_guesses == 0) {
    throw std::invalid_argument("decode: max_guesses must be >= 1");
  }
}

// True iff h e^T equals s, bailing out at the first mismatching row.
bool matches_syndrome(const BitMatrix& h, const BitVector& e, const BitVector& s) {
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (gf2::dot(h.row(i), e) != s.get(i)) return false;
  }
  return true;
}

DecodeOutcome finish(const BitVector& z, BitVector e, double weight,
                     std::uint64_t guesses, Termination term, bool certified) {
  DecodeOutcome out;
  out.codeword = z ^ e;
  out.tep = std::move(e);
  out.soft_weight = weight;
  out.guesses = guesses;
  out.termination = term;
  out.ml_certified = certified;
  return out;
}

// The valid pattern that is zero on the information part: in systematic
// coordinates e = (s | 0), mapped back through the column permutation.
BitVector zero_information_tep(const gf2::SystematicParity& sys, const BitVector& z) {
  const std::size_t m = sys.n - sys.k;
  const BitVector z_sys = gf2::apply_permutation(z, sys.column_perm);
  BitVector z_right(sys.k);
  for (std::size_t j = 0; j < sys.k; ++j) z_right.set(j, z_sys.get(m + j));
  const BitVector pz = gf2::mat_vec(sys.p, z_right);
  BitVector e_sys(sys.n);
  for (std::size_t i = 0; i < m; ++i) e_sys.set(i, z_sys.get(i) ^ pz.get(i));
  return gf2::undo_permutation(e_sys, sys.column_perm);
}

// Shared loop for decode_gcd and decode_osd_gcd. `sys` describes the
// systematic form in use; sys.column_perm maps systematic positions to
// original positions.
DecodeOutcome run_gcd(const gf2::SystematicParity& sys, const channel::LlrVector& r,
                      const DecoderConfig& config) {
  const std::size_t n = sys.n;
  const std::size_t k = sys.k;
  const std::size_t m = n - k;
  const std::vector<std::size_t>& perm = sys.column_perm;

  const std::vector<double> rel = r.reliabilities();
  const BitVector z = channel::hard_decision(r);
  const BitVector z_sys = gf2::apply_permutation(z, perm);

  BitVector z_right(k);
  for (std::size_t j = 0; j < k; ++j) z_right.set(j, z_sys.get(m + j));
  BitVector s = gf2::mat_vec(sys.p, z_right);
  for (std::size_t i = 0; i < m; ++i) {
    if (z_sys.get(i)) s.flip(i);
  }

  // Information-part slots presented to the sorter in ascending original
  // index, so emitted weights use the same fold as full-pattern weights.
  std::vector<std::size_t> slot(k);
  std::iota(slot.begin(), slot.end(), m);
  std::sort(slot.begin(), slot.end(),
            [&perm](std::size_t a, std::size_t b) { return perm[a] < perm[b]; });
  std::vector<double> rel_right(k);
  for (std::size_t t = 0; t < k; ++t) rel_right[t] = rel[perm[slot[t]]];

  std::vector<std::size_t> inv(n);  // original index -> systematic position
  for (std::size_t j = 0; j < n; ++j) inv[perm[j]] = j;

  if (n <= 64) {
    // Packed tables: information bit t selects column slot[t]-m of P and
    // original position perm[slot[t]]; parity bit i sits at original
    // position perm[i].
    std::vector<std::uint64_t> pcol(k, 0);
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t i = 0; i < m; ++i) {
        if (sys.p.get(i, slot[t] - m)) pcol[t] |= std::uint64_t{1} << i;
      }
    }
    std::vector<std::uint64_t> left_orig(m), right_orig(k);
    for (std::size_t i = 0; i < m; ++i) left_orig[i] = std::uint64_t{1} << perm[i];
    for (std::size_t t = 0; t < k; ++t) right_orig[t] = std::uint64_t{1} << perm[slot[t]];
    std::uint64_t s_mask = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (s.get(i)) s_mask |= std::uint64_t{1} << i;
    }

    // Original-domain support of (e_left | e_right); folding it in ascending
    // bit order reproduces the canonical ascending-original-index weight.
    const auto original_support = [&](std::uint64_t left, std::uint64_t right) {
      std::uint64_t acc = 0;
      while (left) {
        acc |= left_orig[static_cast<std::size_t>(std::countr_zero(left))];
        left &= left - 1;
      }
      while (right) {
        acc |= right_orig[static_cast<std::size_t>(std::countr_zero(right))];
        right &= right - 1;
      }
      return acc;
    };
    const auto weight_of_mask = [&rel](std::uint64_t mask) {
      double acc = 0.0;
      while (mask) {
        acc += rel[static_cast<std::size_t>(std::countr_zero(mask))];
        mask &= mask - 1;
      }
      return acc;
    };

    tep::TepSorter sorter(rel_right);
    sorter.next_word();  // the all-zero information-part pattern
    std::uint64_t e_opt = original_support(s_mask, 0);
    double gamma_opt = weight_of_mask(e_opt);
    std::uint64_t guesses = 1;

    Termination term = Termination::early_stop;
    bool certified = true;
    while (true) {
      const auto em = sorter.next_word();
      if (!em) {
        term = Termination::exhausted;
        break;
      }
      if (em->weight >= gamma_opt) {
        term = Termination::early_stop;  // this emission is not counted
        break;
      }
      if (guesses == config.max_guesses) {
        term = Termination::cap_hit;
        certified = false;
        break;
      }
      std::uint64_t left = s_mask;
      std::uint64_t bits = em->mask;
      while (bits) {
        left ^= pcol[static_cast<std::size_t>(std::countr_zero(bits))];
        bits &= bits - 1;
      }
      ++guesses;
      const std::uint64_t e_mask = original_support(left, em->mask);
      const double gamma = weight_of_mask(e_mask);
      if (gamma < gamma_opt) {
        e_opt = e_mask;
        gamma_opt = gamma;
      }
    }

    BitVector e(n);
    std::uint64_t bits = e_opt;
    while (bits) {
      e.set(static_cast<std::size_t>(std::countr_zero(bits)), true);
      bits &= bits - 1;
    }
    return finish(z, std::move(e), gamma_opt, guesses, term, certified);
  }

  // Canonical soft weight of a systematic-domain pattern: fold over the
  // support in ascending original index.
  const auto weight_of = [&](const BitVector& e_sys) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (e_sys.get(inv[i])) acc += rel[i];
    }
    return acc;
  };

  const auto assemble = [&](const BitVector& e_left, const BitVector& e_right_sorted) {
    BitVector e_sys(n);
    for (std::size_t i = 0; i < m; ++i) {
      if (e_left.get(i)) e_sys.set(i, true);
    }
    for (std::size_t t = 0; t < k; ++t) {
      if (e_right_sorted.get(t)) e_sys.set(slot[t], true);
    }
    return e_sys;
  };

  tep::TepSorter sorter(rel_right);
  const auto first = sorter.next();  // the all-zero information-part pattern
  BitVector e_opt = assemble(s, first->pattern);
  double gamma_opt = weight_of(e_opt);
  std::uint64_t guesses = 1;

  Termination term = Termination::early_stop;
  bool certified = true;
  while (true) {
    const auto em = sorter.next();
    if (!em) {
      term = Termination::exhausted;
      break;
    }
    if (em->weight >= gamma_opt) {
      term = Termination::early_stop;  // this emission is not counted
      break;
    }
    if (guesses == config.max_guesses) {
      term = Termination::cap_hit;
      certified = false;
      break;
    }
    BitVector e_right_cols(k);
    for (std::size_t t = 0; t < k; ++t) {
      if (em->pattern.get(t)) e_right_cols.set(slot[t] - m, true);
    }
    BitVector e_left = gf2::mat_vec(sys.p, e_right_cols);
    e_left ^= s;
    BitVector e_sys = assemble(e_left, em->pattern);
    ++guesses;
    const double gamma = weight_of(e_sys);
    if (gamma < gamma_opt) {
      e_opt = std::move(e_sys);
      gamma_opt = gamma;
    }
  }

  BitVector e = gf2::undo_permutation(e_opt, perm);
  return finish(z, std::move(e), gamma_opt, guesses, term, certified);
}

}  // namespace

DecodeOutcome decode_gnd(const codes::LinearCode& code, const channel::LlrVector& r,
                         const DecoderConfig& config) {
  check_inputs(code, r, config);
  const BitMatrix& h = code.parity();
  const std::size_t n = code.n();
  const std::size_t m = h.rows();
  const std::vector<double> rel = r.reliabilities();
  const BitVector z = channel::hard_decision(r);
  const BitVector s = gf2::mat_vec(h, z);
  tep::TepSorter sorter(rel);
  std::uint64_t guesses = 0;

  const auto capped = [&]() {
    BitVector e = zero_information_tep(code.systematic(), z);
    const double weight = channel::soft_weight(e, rel);
    return finish(z, std::move(e), weight, guesses, Termination::cap_hit, false);
  };

  if (n <= 64 && m <= 64) {
    // Column j of H packed into a word (bit i = row i); a pattern's syndrome
    // is the xor of the columns in its support.
    std::vector<std::uint64_t> column(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (h.get(i, j)) column[j] |= std::uint64_t{1} << i;
      }
    }
    std::uint64_t target = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (s.get(i)) target |= std::uint64_t{1} << i;
    }
    while (true) {
      if (guesses == config.max_guesses) return capped();
      const auto em = sorter.next_word();
      if (!em) {
        throw std::logic_error("decode_gnd: pattern space exhausted without a valid pattern");
      }
      ++guesses;
      std::uint64_t syn = 0;
      std::uint64_t bits = em->mask;
      while (bits) {
        syn ^= column[static_cast<std::size_t>(std::countr_zero(bits))];
        bits &= bits - 1;
      }
      if (syn == target) {
        BitVector e(n);
        bits = em->mask;
        while (bits) {
          e.set(static_cast<std::size_t>(std::countr_zero(bits)), true);
          bits &= bits - 1;
        }
        return finish(z, std::move(e), em->weight, guesses, Termination::early_stop, true);
      }
    }
  }

  while (true) {
    if (guesses == config.max_guesses) return capped();
    auto em = sorter.next();
    if (!em) {
      throw std::logic_error("decode_gnd: pattern space exhausted without a valid pattern");
    }
    ++guesses;
    if (matches_syndrome(h, em->pattern, s)) {
      return finish(z, std::move(em->pattern), em->weight, guesses,
                    Termination::early_stop, true);
    }
  }
}

DecodeOutcome decode_gcd(const codes::LinearCode& code, const channel::LlrVector& r,
                         const DecoderConfig& config) {
  check_inputs(code, r, config);
  return run_gcd(code.systematic(), r, config);
}

DecodeOutcome decode_osd_gcd(const codes::LinearCode& code, const channel::LlrVector& r,
                             const DecoderConfig& config) {
  check_inputs(code, r, config);
  const std::size_t n = code.n();
  // Least reliable positions first (ties by index); the elimination's pivot
  // rescue then leaves the k most reliable independent columns in the
  // information part.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&r](std::size_t a, std::size_t b) {
    const double ra = r.reliability(a);
    const double rb = r.reliability(b);
    if (ra != rb) return ra < rb;
    return a < b;
  });
  const BitMatrix& h = code.parity();
  BitMatrix permuted(h.rows(), n);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (h.get(i, order[j])) permuted.set(i, j, true);
    }
  }
  gf2::SystematicParity sys = gf2::systematize(permuted);
  for (std::size_t j = 0; j < n; ++j) sys.column_perm[j] = order[sys.column_perm[j]];
  return run_gcd(sys, r, config);
}

DecodeOutcome decode_oracle(const codes::LinearCode& code, const channel::LlrVector& r) {
  if (r.size() != code.n()) {
    throw std::invalid_argument("decode: LLR length does not match the code");
  }
  if (code.k() > 24) {
    throw std::invalid_argument("decode_oracle: k must be <= 24");
  }
  const std::vector<double> rel = r.reliabilities();
  const BitVector z = channel::hard_decision(r);
  const std::uint64_t total = std::uint64_t{1} << code.k();
  // Gray-code walk over information words: one generator row flips a
  // codeword into the next.
  BitVector c(code.n());
  BitVector best_e = z;
  double best_w = channel::soft_weight(best_e, rel);
  for (std::uint64_t i = 1; i < total; ++i) {
    c ^= code.generator().row(static_cast<std::size_t>(std::countr_zero(i)));
    BitVector e = z ^ c;
    const double w = channel::soft_weight(e, rel);
    if (w < best_w || (w == best_w && gf2::lex_less(e, best_e))) {
      best_w = w;
      best_e = std::move(e);
    }
  }
  return finish(z, std::move(best_e), best_w, total, Termination::exhausted, true);
}

DecodeOutcome decode(DecoderKind kind, const codes::LinearCode& code,
                     const channel::LlrVector& r, const DecoderConfig& config) {
  switch (kind) {
    case DecoderKind::gnd: return decode_gnd(code, r, config);
    case DecoderKind::gcd: return decode_gcd(code, r, config);
    case DecoderKind::osd_gcd: return decode_osd_gcd(code, r, config);
    case DecoderKind::oracle: return decode_oracle(code, r);
  }
  throw std::invalid_argument("decode: unknown decoder kind");
}

}  // namespace guessdec::decoders
