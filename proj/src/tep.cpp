#include "guessdec/tep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace guessdec::tep {

struct TepSorter::Impl {
  virtual ~Impl() = default;
  virtual std::optional<Emission> next() = 0;
  virtual std::optional<WordEmission> next_word() = 0;

  std::size_t n = 0;
  std::uint64_t emitted = 0;
  std::uint64_t ops = 0;
};

namespace {

// Pattern storage for lengths up to 64: bit i of the word is position i.
struct U64Ops {
  using Mask = std::uint64_t;

  static Mask zero(std::size_t) { return 0; }

  static void set(Mask& m, std::size_t i) { m |= std::uint64_t{1} << i; }

  static void move_bit(Mask& m, std::size_t from, std::size_t to) {
    m ^= std::uint64_t{1} << from;
    m ^= std::uint64_t{1} << to;
  }

  static bool lex_less(Mask a, Mask b) {
    const Mask diff = a ^ b;
    // The lowest differing bit is the first differing index; 0 there wins.
    return diff != 0 && (a & (diff & (0 - diff))) == 0;
  }

  static double fold(Mask m, const std::vector<double>& rel) {
    double acc = 0.0;
    while (m) {
      acc += rel[static_cast<std::size_t>(std::countr_zero(m))];
      m &= m - 1;
    }
    return acc;
  }

  static std::int32_t max_rank(Mask m, const std::vector<std::int32_t>& rank_of) {
    std::int32_t best = -1;
    while (m) {
      best = std::max(best, rank_of[static_cast<std::size_t>(std::countr_zero(m))]);
      m &= m - 1;
    }
    return best;
  }

  static gf2::BitVector to_bits(Mask m, std::size_t n) {
    gf2::BitVector v(n);
    while (m) {
      v.set(static_cast<std::size_t>(std::countr_zero(m)), true);
      m &= m - 1;
    }
    return v;
  }
};

// Fallback for lengths beyond 64 bits.
struct WideOps {
  using Mask = gf2::BitVector;

  static Mask zero(std::size_t n) { return Mask(n); }

  static void set(Mask& m, std::size_t i) { m.set(i, true); }

  static void move_bit(Mask& m, std::size_t from, std::size_t to) {
    m.flip(from);
    m.flip(to);
  }

  static bool lex_less(const Mask& a, const Mask& b) { return gf2::lex_less(a, b); }

  static double fold(const Mask& m, const std::vector<double>& rel) {
    double acc = 0.0;
    const auto& words = m.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits) {
        acc += rel[(w << 6) + static_cast<std::size_t>(std::countr_zero(bits))];
        bits &= bits - 1;
      }
    }
    return acc;
  }

  static std::int32_t max_rank(const Mask& m, const std::vector<std::int32_t>& rank_of) {
    std::int32_t best = -1;
    const auto& words = m.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits) {
        const std::size_t i = (w << 6) + static_cast<std::size_t>(std::countr_zero(bits));
        best = std::max(best, rank_of[i]);
        bits &= bits - 1;
      }
    }
    return best;
  }

  static gf2::BitVector to_bits(const Mask& m, std::size_t) { return m; }
};

template <class Ops>
struct Core final : TepSorter::Impl {
  using Mask = typename Ops::Mask;
  static constexpr std::size_t kArity = 4;

  struct Node {
    double weight;
    Mask mask;
  };

  // Emission order: lighter first, equal weights lexicographic.
  static bool before(const Node& a, const Node& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return Ops::lex_less(a.mask, b.mask);
  }

  std::vector<double> rel;
  std::vector<std::uint32_t> order;    // rank -> position
  std::vector<std::int32_t> rank_of;   // position -> rank
  std::vector<Node> heap;              // kArity-ary min-heap on `before`

  explicit Core(std::vector<double> reliabilities) {
    rel = std::move(reliabilities);
    n = rel.size();
    // Lightest positions first; within equal reliability, descending index,
    // so that a slide step always moves a bit to a smaller index and equal
    // weights surface in lexicographic order.
    order.resize(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [this](std::uint32_t a, std::uint32_t b) {
      if (rel[a] != rel[b]) return rel[a] < rel[b];
      return a > b;
    });
    rank_of.resize(n);
    for (std::size_t r = 0; r < n; ++r) rank_of[order[r]] = static_cast<std::int32_t>(r);
    heap.push_back(Node{0.0, Ops::zero(n)});
    ++ops;
  }

  // Moves hole `i` up until `v` fits, then places it.
  void sift_up(std::size_t i, Node v) {
    while (i > 0) {
      const std::size_t parent = (i - 1) / kArity;
      if (!before(v, heap[parent])) break;
      heap[i] = std::move(heap[parent]);
      i = parent;
    }
    heap[i] = std::move(v);
  }

  // Moves hole `i` down until `v` fits, then places it.
  void sift_down(std::size_t i, Node v) {
    const std::size_t count = heap.size();
    while (true) {
      const std::size_t first = kArity * i + 1;
      if (first >= count) break;
      const std::size_t last = std::min(first + kArity, count);
      std::size_t best = first;
      for (std::size_t c = first + 1; c < last; ++c) {
        if (before(heap[c], heap[best])) best = c;
      }
      if (!before(heap[best], v)) break;
      heap[i] = std::move(heap[best]);
      i = best;
    }
    heap[i] = std::move(v);
  }

  std::optional<Node> advance() {
    if (heap.empty()) return std::nullopt;
    const Node top = heap.front();
    ++ops;
    const std::int32_t top_rank = Ops::max_rank(top.mask, rank_of);
    const std::size_t next_rank = static_cast<std::size_t>(top_rank + 1);
    if (next_rank < n) {
      // The extend child takes the popped root's slot directly.
      Node ext{0.0, top.mask};
      Ops::set(ext.mask, order[next_rank]);
      ext.weight = Ops::fold(ext.mask, rel);
      sift_down(0, std::move(ext));
      ++ops;
      if (top_rank >= 0) {
        Node slid{0.0, top.mask};
        Ops::move_bit(slid.mask, order[static_cast<std::size_t>(top_rank)], order[next_rank]);
        slid.weight = Ops::fold(slid.mask, rel);
        heap.resize(heap.size() + 1);
        sift_up(heap.size() - 1, std::move(slid));
        ++ops;
      }
    } else {
      Node last = std::move(heap.back());
      heap.pop_back();
      if (!heap.empty()) sift_down(0, std::move(last));
    }
    ++emitted;
    return top;
  }

  std::optional<Emission> next() override {
    auto top = advance();
    if (!top) return std::nullopt;
    return Emission{Ops::to_bits(top->mask, n), top->weight};
  }

  std::optional<WordEmission> next_word() override {
    if constexpr (std::is_same_v<Mask, std::uint64_t>) {
      auto top = advance();
      if (!top) return std::nullopt;
      return WordEmission{top->mask, top->weight};
    } else {
      throw std::logic_error("TepSorter::next_word: pattern length exceeds 64");
    }
  }
};

std::unique_ptr<TepSorter::Impl> make_core(std::vector<double> reliabilities) {
  for (double v : reliabilities) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("TepSorter: reliabilities must be finite and non-negative");
    }
  }
  if (reliabilities.size() <= 64) {
    return std::make_unique<Core<U64Ops>>(std::move(reliabilities));
  }
  return std::make_unique<Core<WideOps>>(std::move(reliabilities));
}

}  // namespace

TepSorter::TepSorter(std::vector<double> reliabilities)
    : impl_(make_core(std::move(reliabilities))) {}

TepSorter::~TepSorter() = default;
TepSorter::TepSorter(TepSorter&&) noexcept = default;
TepSorter& TepSorter::operator=(TepSorter&&) noexcept = default;

std::optional<Emission> TepSorter::next() { return impl_->next(); }

std::optional<WordEmission> TepSorter::next_word() { return impl_->next_word(); }

std::size_t TepSorter::size() const { return impl_->n; }
std::uint64_t TepSorter::emitted() const { return impl_->emitted; }
std::uint64_t TepSorter::frontier_ops() const { return impl_->ops; }

gf2::BitVector kth_pattern(const std::vector<double>& reliabilities, std::uint64_t k) {
  if (reliabilities.size() > 24) {
    throw std::invalid_argument("kth_pattern: pattern length must be <= 24");
  }
  const std::uint64_t total = std::uint64_t{1} << reliabilities.size();
  if (k >= total) {
    throw std::invalid_argument("kth_pattern: k out of range");
  }
  TepSorter sorter(reliabilities);
  for (std::uint64_t i = 0; i < k; ++i) sorter.next();
  return sorter.next()->pattern;
}

}  // namespace guessdec::tep
