// ftc — feature-tensor codec command line.
//
// Subcommands: synth, analyze, encode, decode, bdrate. All diagnostic output
// is line-oriented key=value text so runs can be scripted and diffed.
// Exit codes: 0 success, 1 usage error, 2 data/format error.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ftc/bitstream.hpp"
#include "ftc/inner_codec.hpp"
#include "ftc/manifest.hpp"
#include "ftc/metrics.hpp"
#include "ftc/pipeline.hpp"
#include "ftc/synth.hpp"
#include "ftc/tensor_io.hpp"
#include "ftc/truncation.hpp"

namespace {

struct AlphaOption {
  std::string text = "2/3";

  ftc::AlphaRatio parse() const {
    const auto slash = text.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == text.size()) {
      throw ftc::InvalidInput("--alpha expects N/D with 0 < N/D < 1, got \"" +
                              text + "\"");
    }
    unsigned long num = 0;
    unsigned long den = 0;
    std::size_t used = 0;
    try {
      num = std::stoul(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(text);
      den = std::stoul(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw ftc::InvalidInput("--alpha expects N/D with 0 < N/D < 1, got \"" +
                              text + "\"");
    }
    if (num > 65535 || den > 65535) {
      throw ftc::InvalidInput("--alpha numerator and denominator must fit u16");
    }
    return ftc::AlphaRatio(static_cast<std::uint16_t>(num),
                           static_cast<std::uint16_t>(den));
  }
};

std::shared_ptr<const ftc::InnerCodec> make_codec(const std::string& name,
                                                  unsigned q) {
  if (name == "raw") return std::make_shared<ftc::RawCodec>();
  if (name == "qrle") {
    if (!ftc::is_valid_qrle_step(q)) {
      throw ftc::InvalidInput("--q must be one of {1,2,4,8,16,32}, got " +
                              std::to_string(q));
    }
    return std::make_shared<ftc::QrleCodec>(q);
  }
  throw ftc::InvalidInput("--codec must be raw or qrle, got \"" + name + "\"");
}

int run_encode(const std::string& input, const std::string& output,
               const AlphaOption& alpha, unsigned refresh,
               const std::string& codec_name, unsigned q, bool no_truncation) {
  ftc::EncodeConfig config;
  config.cutoff.alpha = alpha.parse();
  config.cutoff.refresh_period = refresh;
  config.truncation = !no_truncation;

  const auto codec = make_codec(codec_name, q);
  const auto seq = ftc::load_tensor_sequence(input);
  const auto result = ftc::encode_sequence(seq, config, *codec);

  ftc::RunManifest manifest;
  manifest.input_path = input;
  manifest.output_path = output;
  manifest.alpha = config.cutoff.alpha;
  manifest.refresh_period = refresh;
  manifest.inner_codec_id = codec->id();
  manifest.truncation = config.truncation;
  if (codec_name == "qrle") manifest.q_ladder.push_back(q);
  manifest.emitted_rate_bits.push_back(result.total_bits());

  std::FILE* out = stdout;
  std::fputs(manifest_text(manifest).c_str(), out);
  if (codec_name == "qrle") {
    std::fprintf(out, "codec=qrle q=%u\n", q);
  } else {
    std::fprintf(out, "codec=raw\n");
  }
  std::fprintf(out, "frames=%zu channels=%zu tile_height=%zu tile_width=%zu\n",
               seq.frame_count(), seq.channels(), seq.height(), seq.width());
  for (const auto& period : result.periods) {
    std::fprintf(out,
                 "period=%zu start=%zu length=%zu enabled=%d active=%zu "
                 "layout_rows=%zu layout_cols=%zu\n",
                 period.period_index, period.start_frame, period.frame_count,
                 period.truncation_enabled ? 1 : 0, period.active_count,
                 period.layout.rows, period.layout.cols);
  }
  const auto rate = ftc::bitrate_of_stream(result.bytes.size(), seq.frame_count());
  std::fprintf(out,
               "total_bytes=%zu total_bits=%" PRIu64
               " bits_per_frame=%.3f hls_bits=%zu\n",
               result.bytes.size(), rate.total_bits, rate.bits_per_frame,
               result.hls_bytes() * 8);

  std::ofstream file(output, std::ios::binary | std::ios::trunc);
  if (!file) throw ftc::Error("cannot open " + output + " for writing");
  file.write(reinterpret_cast<const char*>(result.bytes.data()),
             static_cast<std::streamsize>(result.bytes.size()));
  if (!file) throw ftc::Error("write failed for " + output);
  return 0;
}

int run_decode(const std::string& input, const std::string& output) {
  std::ifstream file(input, std::ios::binary | std::ios::ate);
  if (!file) throw ftc::Error("cannot open " + input + " for reading");
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(file.tellg()));
  file.seekg(0);
  file.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!file) throw ftc::Error("read failed for " + input);

  const auto registry = ftc::CodecRegistry::with_defaults();
  const auto seq = ftc::decode_sequence(bytes, registry);
  ftc::save_tensor_sequence(seq, output);
  std::printf("input=%s output=%s\n", input.c_str(), output.c_str());
  std::printf("frames=%zu channels=%zu height=%zu width=%zu\n",
              seq.frame_count(), seq.channels(), seq.height(), seq.width());
  return 0;
}

int run_analyze(const std::string& input, const AlphaOption& alpha) {
  const auto seq = ftc::load_tensor_sequence(input);
  const auto ratio = alpha.parse();

  // The view that decides period 0: statistics of the first frame.
  const auto stats = ftc::channel_stats(seq.frame(0));
  std::vector<float> ranges;
  ranges.reserve(stats.size());
  for (const auto& s : stats) ranges.push_back(s.range);
  const float threshold = ftc::compute_threshold(ranges, ratio);
  const auto mask = ftc::classify_channels(ranges, threshold);

  std::printf("input=%s frames=%zu channels=%zu height=%zu width=%zu\n",
              input.c_str(), seq.frame_count(), seq.channels(), seq.height(),
              seq.width());
  std::printf("alpha=%s threshold=%.9g\n", ratio.str().c_str(),
              static_cast<double>(threshold));
  for (const auto& s : stats) {
    std::printf("channel=%zu min=%.9g max=%.9g range=%.9g active=%d\n",
                s.channel_index, static_cast<double>(s.min),
                static_cast<double>(s.max), static_cast<double>(s.range),
                mask.is_active(s.channel_index) ? 1 : 0);
  }
  std::printf("active_count=%zu inactive_count=%zu\n", mask.active_count(),
              mask.size() - mask.active_count());
  return 0;
}

int run_bdrate(const std::string& anchor_path, const std::string& test_path) {
  const auto anchor = ftc::load_curve_csv(anchor_path);
  const auto test = ftc::load_curve_csv(test_path);
  std::printf("bd_rate_percent=%.6f\n", ftc::bd_rate(anchor, test));
  return 0;
}

int run_synth(const std::string& output, const ftc::SynthSpec& spec) {
  const auto seq = ftc::generate_sequence(spec);
  ftc::save_tensor_sequence(seq, output);
  std::printf("output=%s frames=%zu channels=%zu active=%zu height=%zu "
              "width=%zu seed=%" PRIu64 "\n",
              output.c_str(), spec.frame_count, spec.channels,
              spec.active_count, spec.height, spec.width, spec.seed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ftc — channel-truncating feature tensor codec"};
  app.require_subcommand(1);

  const CLI::Validator alpha_validator(
      [](std::string& input) -> std::string {
        try {
          AlphaOption{input}.parse();
        } catch (const std::exception& e) {
          return std::string(e.what());
        }
        return {};
      },
      "N/D");

  // encode
  std::string enc_input, enc_output;
  AlphaOption enc_alpha;
  unsigned enc_refresh = 128;
  std::string enc_codec = "raw";
  unsigned enc_q = 8;
  bool enc_no_truncation = false;
  auto* encode = app.add_subcommand("encode", "Encode a .fcmt tensor file to a .fctb bitstream");
  encode->add_option("input", enc_input, ".fcmt input path")->required();
  encode->add_option("output", enc_output, ".fctb output path")->required();
  encode->add_option("--alpha", enc_alpha.text, "cutoff strength N/D (default 2/3)")->check(alpha_validator);
  encode->add_option("--refresh", enc_refresh, "mask refresh period in frames (default 128)")
      ->check(CLI::Range(1u, 65535u));
  encode->add_option("--codec", enc_codec, "inner codec: raw or qrle (default raw)")
      ->check(CLI::IsMember({"raw", "qrle"}));
  encode->add_option("--q", enc_q, "qrle requantization step, one of {1,2,4,8,16,32} (default 8)")
      ->check(CLI::IsMember({1u, 2u, 4u, 8u, 16u, 32u}));
  encode->add_flag("--no-truncation", enc_no_truncation, "keep every channel (full-channel path)");

  // decode
  std::string dec_input, dec_output;
  auto* decode = app.add_subcommand("decode", "Decode a .fctb bitstream back to a .fcmt tensor file");
  decode->add_option("input", dec_input, ".fctb input path")->required();
  decode->add_option("output", dec_output, ".fcmt output path")->required();

  // analyze
  std::string ana_input;
  AlphaOption ana_alpha;
  auto* analyze = app.add_subcommand("analyze", "Report per-channel ranges, the cutoff threshold, and the would-be mask");
  analyze->add_option("input", ana_input, ".fcmt input path")->required();
  analyze->add_option("--alpha", ana_alpha.text, "cutoff strength N/D (default 2/3)")->check(alpha_validator);

  // bdrate
  std::string bd_anchor, bd_test;
  auto* bdrate = app.add_subcommand("bdrate", "Bjontegaard delta rate between two rate,accuracy csv files");
  bdrate->add_option("--anchor", bd_anchor, "anchor curve csv")->required();
  bdrate->add_option("--test", bd_test, "test curve csv")->required();

  // synth
  std::string syn_output;
  ftc::SynthSpec spec;
  AlphaOption syn_alpha;
  auto* synth = app.add_subcommand("synth", "Generate a deterministic synthetic .fcmt corpus");
  synth->add_option("output", syn_output, ".fcmt output path")->required();
  synth->add_option("--channels", spec.channels, "channel count (default 320)");
  synth->add_option("--active", spec.active_count, "signal channel count (default 200)");
  synth->add_option("--height", spec.height, "channel height (default 32)");
  synth->add_option("--width", spec.width, "channel width (default 32)");
  synth->add_option("--frames", spec.frame_count, "frame count (default 128)");
  synth->add_option("--signal", spec.signal_amplitude, "signal channel range (default 8.0)");
  synth->add_option("--noise", spec.noise_amplitude, "noise channel range (default 0.05)");
  synth->add_option("--seed", spec.seed, "generator seed (default 1)");
  synth->add_option("--alpha", syn_alpha.text, "cutoff strength used for validation (default 2/3)")->check(alpha_validator);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (encode->parsed()) {
      return run_encode(enc_input, enc_output, enc_alpha, enc_refresh,
                        enc_codec, enc_q, enc_no_truncation);
    }
    if (decode->parsed()) return run_decode(dec_input, dec_output);
    if (analyze->parsed()) return run_analyze(ana_input, ana_alpha);
    if (bdrate->parsed()) return run_bdrate(bd_anchor, bd_test);
    if (synth->parsed()) {
      spec.alpha = syn_alpha.parse();
      return run_synth(syn_output, spec);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error=\"%s\"\n", e.what());
    return 2;
  }
  return 1;
}
