#include "ftc/pipeline.hpp"

#include <limits>

#include "ftc/packing.hpp"

namespace ftc {

EncodeResult encode_sequence(const FeatureTensorSequence& seq,
                             const EncodeConfig& config,
                             const InnerCodec& codec) {
  if (seq.channels() > std::numeric_limits<std::uint16_t>::max() ||
      seq.height() > std::numeric_limits<std::uint16_t>::max() ||
      seq.width() > std::numeric_limits<std::uint16_t>::max()) {
    throw InvalidInput("encode: tensor dimensions do not fit in u16");
  }
  if (seq.frame_count() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidInput("encode: frame count does not fit in u32");
  }

  if (config.cutoff.refresh_period == 0 ||
      config.cutoff.refresh_period > std::numeric_limits<std::uint16_t>::max()) {
    throw InvalidInput("encode: refresh period must fit in u16 and be >= 1");
  }

  StreamHeader header;
  header.channels = static_cast<std::uint16_t>(seq.channels());
  header.tile_height = static_cast<std::uint16_t>(seq.height());
  header.tile_width = static_cast<std::uint16_t>(seq.width());
  header.refresh_period = static_cast<std::uint16_t>(config.cutoff.refresh_period);
  header.frame_count = static_cast<std::uint32_t>(seq.frame_count());
  header.alpha_num = config.cutoff.alpha.num();
  header.alpha_den = config.cutoff.alpha.den();
  header.inner_codec_id = codec.id();

  const auto spans =
      period_boundaries(seq.frame_count(), config.cutoff.refresh_period);

  std::vector<PeriodPlan> plans;
  std::vector<PackedFrame> packed;
  std::vector<PeriodSummary> summaries;
  plans.reserve(spans.size());
  packed.reserve(seq.frame_count());

  std::optional<std::size_t> capacity;
  for (std::size_t p = 0; p < spans.size(); ++p) {
    PeriodPlan plan =
        config.truncation
            ? plan_period(seq.frame(spans[p].start), config.cutoff, capacity, p)
            : PeriodPlan{p, ActiveChannelMask::all_active(seq.channels()), false};
    if (p == 0) capacity = plan.mask.active_count();

    const FrameLayout layout = compute_layout(plan.mask.active_count(),
                                              seq.height(), seq.width());
    summaries.push_back(PeriodSummary{p, spans[p].start, spans[p].length,
                                      plan.mask.active_count(),
                                      plan.truncation_enabled, layout});

    for (std::size_t f = spans[p].start; f < spans[p].start + spans[p].length;
         ++f) {
      packed.push_back(pack(seq.frame(f), plan.mask));
    }
    plans.push_back(std::move(plan));
  }

  EncodeResult result;
  result.bytes = write_stream(header, plans, packed, codec);
  result.header = header;
  result.periods = std::move(summaries);
  return result;
}

FeatureTensorSequence decode_sequence(std::span<const std::uint8_t> bytes,
                                      const CodecRegistry& registry) {
  const DecodedStream stream = read_stream(bytes, registry);
  const auto spans =
      period_boundaries(stream.header.frame_count, stream.header.refresh_period);

  std::vector<FeatureTensor> frames;
  frames.reserve(stream.frames.size());
  for (std::size_t p = 0; p < spans.size(); ++p) {
    const ParsedPeriod& period = stream.periods[p];
    for (std::size_t f = spans[p].start; f < spans[p].start + spans[p].length;
         ++f) {
      frames.push_back(unpack(stream.frames[f], period.mask));
    }
  }
  return FeatureTensorSequence(std::move(frames));
}

}  // namespace ftc
