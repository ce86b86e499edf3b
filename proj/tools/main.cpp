#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "guessdec/channel.hpp"
#include "guessdec/codes.hpp"
#include "guessdec/decoders.hpp"
#include "guessdec/sim.hpp"

namespace {

using guessdec::channel::ChannelSpec;
using guessdec::channel::LlrVector;
using guessdec::codes::LinearCode;
using guessdec::decoders::DecoderConfig;
using guessdec::decoders::DecoderKind;

// Command-line mistakes; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string code = "hamming74";
  unsigned rm_m = 5;
  unsigned rm_r = 1;
  std::size_t n = 15;
  std::size_t k = 7;
  std::uint64_t code_seed = 1;
  std::string matrix;

  std::string chan = "bsc";
  std::string p_list;
  std::string snr_list;
  double target_fer = 0.0;  // 0 = unset

  std::vector<std::string> decoders;
  std::uint64_t frames = 10000;
  std::uint64_t seed = 1;
  std::uint64_t max_guesses = 0;  // 0 = unlimited
  std::uint64_t stop_at_errors = 0;  // 0 = unset
  unsigned jobs = 1;

  std::string llr;
};

void add_code_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--code", f.code, "builtin code: hamming74, rm, random, file")
      ->capture_default_str();
  cmd->add_option("--m", f.rm_m, "rm: number of variables")->capture_default_str();
  cmd->add_option("--r", f.rm_r, "rm: maximum monomial degree")->capture_default_str();
  cmd->add_option("--n", f.n, "random: block length")->capture_default_str();
  cmd->add_option("--k", f.k, "random: dimension")->capture_default_str();
  cmd->add_option("--code-seed", f.code_seed, "random: generator seed")->capture_default_str();
  cmd->add_option("--matrix", f.matrix, "file: parity-check matrix path");
}

void add_channel_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--channel", f.chan, "bsc or awgn")->capture_default_str();
  cmd->add_option("--p", f.p_list, "bsc crossover probability (comma list for sweep)");
  cmd->add_option("--snr-db", f.snr_list, "awgn Eb/N0 in dB (comma list for sweep)");
}

void add_sim_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--decoder", f.decoders, "gnd, gcd, osd, oracle (repeatable)");
  cmd->add_option("--frames", f.frames, "frames to simulate")->capture_default_str();
  cmd->add_option("--seed", f.seed, "simulation seed")->capture_default_str();
  cmd->add_option("--max-guesses", f.max_guesses, "guess cap per decode, 0 = unlimited")
      ->capture_default_str();
  cmd->add_option("--stop-at-errors", f.stop_at_errors,
                  "stop once every decoder has this many frame errors, 0 = off");
  cmd->add_option("--jobs", f.jobs, "worker threads")->capture_default_str();
}

LinearCode build_code(const Flags& f) {
  if (f.code == "hamming74") return guessdec::codes::hamming_7_4();
  if (f.code == "rm") return guessdec::codes::reed_muller(f.rm_r, f.rm_m);
  if (f.code == "random") return guessdec::codes::random_code(f.n, f.k, f.code_seed);
  if (f.code == "file") {
    if (f.matrix.empty()) throw UsageError("--code file requires --matrix");
    return guessdec::codes::load_code(f.matrix);
  }
  throw UsageError("unknown --code: " + f.code);
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed ") + what + " value: '" + token + "'");
    }
  }
  if (values.empty()) throw UsageError(std::string("empty ") + what + " list");
  return values;
}

// Operating points for the configured channel; one per grid entry.
std::vector<double> channel_grid(const Flags& f, bool allow_list) {
  const bool is_bsc = f.chan == "bsc";
  if (!is_bsc && f.chan != "awgn") throw UsageError("unknown --channel: " + f.chan);
  const std::string& list = is_bsc ? f.p_list : f.snr_list;
  const char* flag = is_bsc ? "--p" : "--snr-db";
  if (list.empty()) throw UsageError(std::string(flag) + " is required for --channel " + f.chan);
  std::vector<double> values = parse_number_list(list, flag);
  if (!allow_list && values.size() != 1) {
    throw UsageError(std::string(flag) + " takes a single value here (lists only in sweep)");
  }
  return values;
}

ChannelSpec make_spec(const Flags& f, double param) {
  return f.chan == "bsc" ? ChannelSpec::bsc(param, f.seed) : ChannelSpec::awgn(param, f.seed);
}

std::vector<DecoderKind> decoder_kinds(const Flags& f, std::vector<DecoderKind> fallback) {
  if (f.decoders.empty()) return fallback;
  std::vector<DecoderKind> kinds;
  kinds.reserve(f.decoders.size());
  for (const std::string& name : f.decoders) {
    try {
      kinds.push_back(guessdec::decoders::parse_decoder_kind(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return kinds;
}

DecoderConfig decoder_config(const Flags& f) {
  DecoderConfig config;
  if (f.max_guesses != 0) config.max_guesses = f.max_guesses;
  return config;
}

guessdec::sim::SimConfig sim_config(const Flags& f, double param,
                                    const std::vector<DecoderKind>& kinds) {
  guessdec::sim::SimConfig config;
  config.channel = make_spec(f, param);
  for (DecoderKind kind : kinds) config.decoders.push_back({kind, decoder_config(f)});
  config.frames = f.frames;
  config.seed = f.seed;
  if (f.stop_at_errors != 0) config.stop_at_errors = f.stop_at_errors;
  config.jobs = f.jobs;
  return config;
}

// Inline comma list, or a path to a whitespace/comma separated file.
std::vector<double> parse_llr(const std::string& text) {
  if (text.empty()) throw UsageError("--llr is required");
  if (text.find(',') == std::string::npos) {
    std::ifstream in(text);
    if (in) {
      std::vector<double> values;
      std::string token;
      while (in >> token) {
        if (!token.empty() && token.back() == ',') token.pop_back();
        if (token.empty()) continue;
        try {
          std::size_t used = 0;
          values.push_back(std::stod(token, &used));
          if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
          throw UsageError("malformed LLR value in file: '" + token + "'");
        }
      }
      if (values.empty()) throw UsageError("LLR file holds no values: " + text);
      return values;
    }
  }
  return parse_number_list(text, "--llr");
}

// Resolves --target-fer to an SNR via bisection on the first decoder.
double resolve_operating_point(const Flags& f, const LinearCode& code,
                               const std::vector<DecoderKind>& kinds) {
  if (f.chan != "awgn") throw UsageError("--target-fer requires --channel awgn");
  if (!f.snr_list.empty()) throw UsageError("give either --snr-db or --target-fer, not both");
  guessdec::sim::SnrSearchOptions options;
  options.seed = f.seed;
  options.jobs = f.jobs;
  options.probe_decoder = kinds.front();
  if (f.max_guesses != 0) options.max_guesses = f.max_guesses;
  const double snr = guessdec::sim::find_snr_at_fer(code, f.target_fer, options);
  std::fprintf(stderr, "target fer %.6g resolved to snr_db=%.6g\n", f.target_fer, snr);
  return snr;
}

int cmd_decode(const Flags& f) {
  const LinearCode code = build_code(f);
  std::vector<double> values = parse_llr(f.llr);
  if (values.size() != code.n()) {
    std::ostringstream msg;
    msg << "--llr holds " << values.size() << " values but " << code.name() << " has length "
        << code.n();
    throw UsageError(msg.str());
  }
  LlrVector r(std::move(values));
  for (DecoderKind kind : decoder_kinds(f, {DecoderKind::gcd})) {
    const auto outcome = guessdec::decoders::decode(kind, code, r, decoder_config(f));
    std::cout << "decoder=" << guessdec::decoders::to_string(kind)
              << " codeword=" << outcome.codeword.to_string()
              << " tep=" << outcome.tep.to_string();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", outcome.soft_weight);
    std::cout << " soft_weight=" << buf << " guesses=" << outcome.guesses
              << " termination=" << guessdec::decoders::to_string(outcome.termination)
              << " ml_certified=" << (outcome.ml_certified ? 1 : 0) << '\n';
  }
  return 0;
}

int cmd_simulate(const Flags& f) {
  const LinearCode code = build_code(f);
  const std::vector<DecoderKind> kinds = decoder_kinds(f, {DecoderKind::gcd});
  double param = 0.0;
  if (f.target_fer != 0.0) {
    param = resolve_operating_point(f, code, kinds);
  } else {
    param = channel_grid(f, false).front();
  }
  const auto config = sim_config(f, param, kinds);
  const auto result = guessdec::sim::run_paired(code, config);
  std::cout << guessdec::sim::csv_header() << '\n';
  for (const std::string& row : guessdec::sim::csv_rows(code, config, result)) {
    std::cout << row << '\n';
  }
  return 0;
}

int cmd_compare(const Flags& f) {
  const LinearCode code = build_code(f);
  const std::vector<DecoderKind> kinds =
      decoder_kinds(f, {DecoderKind::gnd, DecoderKind::gcd});
  const double param = channel_grid(f, false).front();
  auto config = sim_config(f, param, kinds);
  config.check_pairing = true;
  const auto result = guessdec::sim::run_paired(code, config);
  std::cout << guessdec::sim::csv_header() << '\n';
  for (const std::string& row : guessdec::sim::csv_rows(code, config, result)) {
    std::cout << row << '\n';
  }
  std::cout << "violations," << result.dominance_violations << '\n';
  if (result.dominance_violations != 0) {
    std::cerr << "error: " << result.dominance_violations
              << " frames violated the guess-dominance guarantee\n";
    return 1;
  }
  return 0;
}

int cmd_sweep(const Flags& f) {
  const LinearCode code = build_code(f);
  const std::vector<DecoderKind> kinds = decoder_kinds(f, {DecoderKind::gcd});
  if (f.target_fer != 0.0) throw UsageError("sweep needs an explicit grid, not --target-fer");
  const std::vector<double> grid = channel_grid(f, true);
  std::cout << guessdec::sim::csv_header() << '\n';
  for (double param : grid) {
    const auto config = sim_config(f, param, kinds);
    const auto result = guessdec::sim::run_paired(code, config);
    for (const std::string& row : guessdec::sim::csv_rows(code, config, result)) {
      std::cout << row << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Flags f;
  CLI::App app{"guessing decoders for binary linear block codes"};
  app.require_subcommand(1);

  CLI::App* decode = app.add_subcommand("decode", "decode one reception");
  add_code_flags(decode, f);
  decode->add_option("--llr", f.llr, "comma-separated LLRs, or a file of numbers");
  decode->add_option("--decoder", f.decoders, "gnd, gcd, osd, oracle (repeatable)");
  decode->add_option("--max-guesses", f.max_guesses, "guess cap, 0 = unlimited");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo run, CSV to stdout");
  add_code_flags(simulate, f);
  add_channel_flags(simulate, f);
  add_sim_flags(simulate, f);
  simulate->add_option("--target-fer", f.target_fer,
                       "awgn: pick snr by bisection instead of --snr-db");

  CLI::App* compare = app.add_subcommand(
      "compare", "paired run with per-frame dominance checking, CSV to stdout");
  add_code_flags(compare, f);
  add_channel_flags(compare, f);
  add_sim_flags(compare, f);

  CLI::App* sweep = app.add_subcommand("sweep", "grid of operating points, CSV to stdout");
  add_code_flags(sweep, f);
  add_channel_flags(sweep, f);
  add_sim_flags(sweep, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (decode->parsed()) return cmd_decode(f);
    if (simulate->parsed()) return cmd_simulate(f);
    if (compare->parsed()) return cmd_compare(f);
    return cmd_sweep(f);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
