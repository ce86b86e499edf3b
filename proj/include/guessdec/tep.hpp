#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "guessdec/gf2.hpp"

namespace guessdec::tep {

// One pattern produced by the sorter. `weight` is the soft weight of the
// pattern under the sorter's reliabilities, folded in ascending index order
// (the same fold as channel::soft_weight).
struct Emission {
  gf2::BitVector pattern;
  double weight = 0.0;
};

// Word-packed emission for pattern lengths up to 64: bit i of `mask` is
// position i. Saves the per-pattern BitVector in guess-count-heavy loops.
struct WordEmission {
  std::uint64_t mask = 0;
  double weight = 0.0;
};

// Lazy enumerator of all 2^n binary patterns of length n in non-decreasing
// soft weight; equal weights emit in lexicographic order (at the first
// differing index, the pattern holding 0 comes first). Single consumer;
// distinct sorters are independent.
//
// Weights are compared as exact doubles. Two patterns tie exactly whenever
// their supports accumulate the same addend sequence, which covers the
// all-equal case and duplicates at adjacent indices. Equal reliabilities at
// indices straddling other support members can instead fold to values one
// ulp apart; such a pair is ordered by those folded weights, and when the
// lighter one is a successor of the heavier it is emitted after it.
class TepSorter {
 public:
  // Requires every reliability to be finite and >= 0.
  explicit TepSorter(std::vector<double> reliabilities);
  ~TepSorter();

  TepSorter(TepSorter&&) noexcept;
  TepSorter& operator=(TepSorter&&) noexcept;
  TepSorter(const TepSorter&) = delete;
  TepSorter& operator=(const TepSorter&) = delete;

  // Next pattern in the total order, or nullopt once all 2^n have been
  // emitted.
  std::optional<Emission> next();

  // Same stream as next(), packed into a word. Requires n <= 64; both
  // accessors advance the one shared sequence.
  std::optional<WordEmission> next_word();

  std::size_t size() const;              // pattern length n
  std::uint64_t emitted() const;         // patterns produced so far
  std::uint64_t frontier_ops() const;    // heap pushes + pops performed

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

// The (k+1)-th emission of a fresh sorter over `reliabilities`. Test-scale
// helper: requires n <= 24 and 0 <= k < 2^n.
gf2::BitVector kth_pattern(const std::vector<double>& reliabilities, std::uint64_t k);

}  // namespace guessdec::tep
