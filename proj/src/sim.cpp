#include "guessdec/sim.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "guessdec/rng.hpp"

namespace guessdec::sim {

using gf2::BitVector;

namespace {

constexpr std::uint64_t kChunkFrames = 256;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Partial {
  std::vector<DecoderStats> per_decoder;
  std::uint64_t frames = 0;
  std::uint64_t dominance_violations = 0;
  std::uint64_t agreement_mismatches = 0;
};

void accumulate(DecoderStats& into, const DecoderStats& chunk) {
  into.frames += chunk.frames;
  into.errors += chunk.errors;
  into.guess_total += chunk.guess_total;
  into.max_guesses = std::max(into.max_guesses, chunk.max_guesses);
  into.ml_certified += chunk.ml_certified;
  for (std::size_t b = 0; b < into.guess_histogram.size(); ++b) {
    into.guess_histogram[b] += chunk.guess_histogram[b];
  }
}

void record(DecoderStats& stats, const decoders::DecodeOutcome& outcome, bool frame_error) {
  ++stats.frames;
  if (frame_error) ++stats.errors;
  stats.guess_total += outcome.guesses;
  stats.max_guesses = std::max(stats.max_guesses, outcome.guesses);
  if (outcome.ml_certified) ++stats.ml_certified;
  const unsigned bucket = std::bit_width(std::max<std::uint64_t>(outcome.guesses, 1)) - 1;
  ++stats.guess_histogram[bucket];
}

void validate(const codes::LinearCode& code, const SimConfig& config) {
  if (config.frames == 0) throw std::invalid_argument("run_paired: frames must be >= 1");
  if (config.decoders.empty()) throw std::invalid_argument("run_paired: no decoders configured");
  if (config.jobs == 0) throw std::invalid_argument("run_paired: jobs must be >= 1");
  if (config.target_fer && !(*config.target_fer > 0.0 && *config.target_fer < 1.0)) {
    throw std::invalid_argument("run_paired: target_fer must lie in (0, 1)");
  }
  for (const DecoderSetup& setup : config.decoders) {
    if (setup.config.max_guesses == 0) {
      throw std::invalid_argument("run_paired: max_guesses must be >= 1");
    }
    if (setup.kind == decoders::DecoderKind::oracle && code.k() > 24) {
      throw std::invalid_argument("run_paired: oracle decoder needs k <= 24");
    }
  }
}

Partial run_chunk(const codes::LinearCode& code, const SimConfig& config,
                  const channel::ChannelSpec& spec, std::uint64_t begin, std::uint64_t end,
                  std::size_t gnd_slot, std::size_t gcd_slot) {
  Partial part;
  part.per_decoder.resize(config.decoders.size());
  for (std::size_t d = 0; d < config.decoders.size(); ++d) {
    part.per_decoder[d].kind = config.decoders[d].kind;
  }
  const std::size_t none = config.decoders.size();
  std::vector<decoders::DecodeOutcome> outcomes(config.decoders.size());
  for (std::uint64_t frame = begin; frame < end; ++frame) {
    SplitMix64 info_rng(substream(config.seed, frame, kStreamInfoWord));
    BitVector info(code.k());
    for (std::size_t i = 0; i < code.k(); ++i) info.set(i, info_rng.next_bit());
    const BitVector sent = code.encode(info);
    const channel::LlrVector r = channel::transmit(code, sent, spec, frame);
    for (std::size_t d = 0; d < config.decoders.size(); ++d) {
      outcomes[d] = decoders::decode(config.decoders[d].kind, code, r,
                                     config.decoders[d].config);
      record(part.per_decoder[d], outcomes[d], outcomes[d].codeword != sent);
    }
    ++part.frames;
    if (!config.check_pairing) continue;
    if (gnd_slot != none && gcd_slot != none &&
        outcomes[gnd_slot].termination != decoders::Termination::cap_hit &&
        outcomes[gcd_slot].termination != decoders::Termination::cap_hit &&
        outcomes[gcd_slot].guesses > outcomes[gnd_slot].guesses) {
      ++part.dominance_violations;
    }
    bool mismatch = false;
    double certified_weight = 0.0;
    bool have_certified = false;
    for (const decoders::DecodeOutcome& outcome : outcomes) {
      if (!outcome.ml_certified) continue;
      if (!have_certified) {
        certified_weight = outcome.soft_weight;
        have_certified = true;
      } else if (outcome.soft_weight != certified_weight) {
        mismatch = true;
      }
    }
    if (mismatch) ++part.agreement_mismatches;
  }
  return part;
}

}  // namespace

double DecoderStats::fer() const {
  return frames == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(frames);
}

double DecoderStats::fer_ci95() const {
  if (frames == 0) return 0.0;
  const double p = fer();
  return 1.959964 * std::sqrt(p * (1.0 - p) / static_cast<double>(frames));
}

double DecoderStats::avg_guesses() const {
  return frames == 0 ? 0.0
                     : static_cast<double>(guess_total) / static_cast<double>(frames);
}

double DecoderStats::ml_certified_fraction() const {
  return frames == 0 ? 0.0
                     : static_cast<double>(ml_certified) / static_cast<double>(frames);
}

SimResult run_paired(const codes::LinearCode& code, const SimConfig& config) {
  validate(code, config);
  const auto start = std::chrono::steady_clock::now();

  channel::ChannelSpec spec = config.channel;
  spec.seed = config.seed;

  const std::size_t none = config.decoders.size();
  std::size_t gnd_slot = none;
  std::size_t gcd_slot = none;
  for (std::size_t d = 0; d < config.decoders.size(); ++d) {
    if (config.decoders[d].kind == decoders::DecoderKind::gnd && gnd_slot == none) gnd_slot = d;
    if (config.decoders[d].kind == decoders::DecoderKind::gcd && gcd_slot == none) gcd_slot = d;
  }

  const std::uint64_t n_chunks = (config.frames + kChunkFrames - 1) / kChunkFrames;

  SimResult result;
  result.per_decoder.resize(config.decoders.size());
  for (std::size_t d = 0; d < config.decoders.size(); ++d) {
    result.per_decoder[d].kind = config.decoders[d].kind;
  }

  std::atomic<std::uint64_t> next_chunk{0};
  // Chunks at or past `limit` are discarded; lowered once the ordered
  // prefix satisfies stop_at_errors, so the cut is identical for any job
  // count.
  std::atomic<std::uint64_t> limit{n_chunks};
  std::mutex fold_mutex;
  std::map<std::uint64_t, Partial> pending;
  std::uint64_t folded = 0;
  std::exception_ptr first_error;

  const auto stop_satisfied = [&result, &config]() {
    if (!config.stop_at_errors) return false;
    for (const DecoderStats& stats : result.per_decoder) {
      if (stats.errors < *config.stop_at_errors) return false;
    }
    return true;
  };

  const auto worker = [&]() {
    while (true) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= limit.load()) return;
      const std::uint64_t begin = chunk * kChunkFrames;
      const std::uint64_t end = std::min(config.frames, begin + kChunkFrames);
      Partial part;
      try {
        part = run_chunk(code, config, spec, begin, end, gnd_slot, gcd_slot);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fold_mutex);
        if (!first_error) first_error = std::current_exception();
        limit.store(0);
        return;
      }
      std::lock_guard<std::mutex> lock(fold_mutex);
      pending.emplace(chunk, std::move(part));
      while (true) {
        const auto it = pending.find(folded);
        if (it == pending.end() || folded >= limit.load()) break;
        const Partial& ready = it->second;
        for (std::size_t d = 0; d < result.per_decoder.size(); ++d) {
          accumulate(result.per_decoder[d], ready.per_decoder[d]);
        }
        result.frames_run += ready.frames;
        result.dominance_violations += ready.dominance_violations;
        result.agreement_mismatches += ready.agreement_mismatches;
        pending.erase(it);
        ++folded;
        if (stop_satisfied() && folded < limit.load()) limit.store(folded);
      }
    }
  };

  const unsigned thread_count =
      static_cast<unsigned>(std::min<std::uint64_t>(config.jobs, std::max<std::uint64_t>(n_chunks, 1)));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  const auto elapsed = std::chrono::steady_clock::now() - start;
  result.wall_seconds = std::chrono::duration<double>(elapsed).count();
  return result;
}

std::string csv_header() {
  return "code,n,k,channel,param,decoder,frames,errors,fer,fer_ci95,avg_guesses,"
         "max_guesses,ml_certified_frac,seed";
}

std::vector<std::string> csv_rows(const codes::LinearCode& code, const SimConfig& config,
                                  const SimResult& result) {
  std::vector<std::string> rows;
  rows.reserve(result.per_decoder.size());
  for (const DecoderStats& stats : result.per_decoder) {
    std::ostringstream row;
    row << code.name() << ',' << code.n() << ',' << code.k() << ','
        << config.channel.name() << ',' << fmt_double(config.channel.param()) << ','
        << decoders::to_string(stats.kind) << ',' << stats.frames << ',' << stats.errors
        << ',' << fmt_double(stats.fer()) << ',' << fmt_double(stats.fer_ci95()) << ','
        << fmt_double(stats.avg_guesses()) << ',' << stats.max_guesses << ','
        << fmt_double(stats.ml_certified_fraction()) << ',' << config.seed;
    rows.push_back(row.str());
  }
  return rows;
}

double find_snr_at_fer(const codes::LinearCode& code, double target_fer,
                       const SnrSearchOptions& options) {
  if (!(target_fer > 0.0 && target_fer < 1.0)) {
    throw std::invalid_argument("find_snr_at_fer: target_fer must lie in (0, 1)");
  }
  if (!(options.lo_db < options.hi_db) || !(options.tolerance_db > 0.0)) {
    throw std::invalid_argument("find_snr_at_fer: invalid search bracket");
  }

  std::uint64_t probe_index = 0;
  const auto probe = [&](double snr_db) {
    SimConfig config;
    config.channel = channel::ChannelSpec::awgn(snr_db, 0);
    config.decoders = {{options.probe_decoder, {options.max_guesses}}};
    config.frames = options.probe_frames;
    config.seed = substream(options.seed, probe_index++, kStreamSnrProbe);
    config.stop_at_errors = options.probe_errors;
    config.jobs = options.jobs;
    const SimResult result = run_paired(code, config);
    const DecoderStats& stats = result.per_decoder.front();
    return std::pair<double, double>(stats.fer(), stats.fer_ci95());
  };

  const double fer_lo = probe(options.lo_db).first;
  if (fer_lo < target_fer) {
    throw std::runtime_error("find_snr_at_fer: FER at the low edge is already below target");
  }
  const double fer_hi = probe(options.hi_db).first;
  if (fer_hi > target_fer) {
    throw std::runtime_error("find_snr_at_fer: FER at the high edge is still above target");
  }

  double lo = options.lo_db;
  double hi = options.hi_db;
  while (hi - lo > options.tolerance_db) {
    const double mid = 0.5 * (lo + hi);
    const auto [fer, ci] = probe(mid);
    if (fer - ci <= target_fer && target_fer <= fer + ci) return mid;
    if (fer > target_fer) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace guessdec::sim
