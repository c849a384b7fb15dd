#include "blockkm/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "blockkm/errors.hpp"
#include "blockkm/splitmix.hpp"

namespace blockkm {

void validate_dims(Dims dims, std::size_t channels) {
  if (dims.width < 1 || dims.height < 1) {
    throw InvalidArgument("image dimensions must be >= 1, got " + std::to_string(dims.width) +
                          "x" + std::to_string(dims.height));
  }
  if (channels != 1 && channels != 3) {
    throw InvalidArgument("channels must be 1 or 3, got " + std::to_string(channels));
  }
  if (dims.width > kMaxSamples || dims.height > kMaxSamples / dims.width ||
      dims.area() > kMaxSamples / channels) {
    throw InvalidArgument("image exceeds the maximum of 2^31-1 samples");
  }
}

Image::Image(Dims dims, std::size_t channels, std::uint32_t maxval, std::vector<Sample> samples)
    : dims_(dims), channels_(channels), maxval_(maxval), samples_(std::move(samples)) {
  validate_dims(dims, channels);
  if (maxval < 1 || maxval > 65535) {
    throw InvalidArgument("maxval must be in [1, 65535], got " + std::to_string(maxval));
  }
  if (samples_.size() != dims.area() * channels) {
    throw InvalidArgument("sample count " + std::to_string(samples_.size()) +
                          " does not match width*height*channels = " +
                          std::to_string(dims.area() * channels));
  }
  auto bad = std::find_if(samples_.begin(), samples_.end(),
                          [maxval](Sample s) { return s > maxval; });
  if (bad != samples_.end()) {
    throw InvalidArgument("sample " + std::to_string(*bad) + " exceeds maxval " +
                          std::to_string(maxval));
  }
}

Image::Image(Dims dims, std::size_t channels, std::uint32_t maxval)
    : Image(dims, channels, maxval,
            std::vector<Sample>((validate_dims(dims, channels), dims.area() * channels), 0)) {}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Reads one non-negative decimal header field, skipping whitespace and
  // '#' comments. Values are saturated well above any legal maxval.
  std::uint64_t field(const std::string& name) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw DecodeError(name, "missing header value");
    if (bytes_[pos_] == '-') throw DecodeError(name, "value must be positive");
    if (!std::isdigit(bytes_[pos_])) throw DecodeError(name, "expected a decimal integer");
    std::uint64_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = std::min<std::uint64_t>(v * 10 + (bytes_[pos_] - '0'), std::uint64_t{1} << 40);
      ++pos_;
    }
    if (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw DecodeError(name, "expected a decimal integer");
    }
    return v;
  }

  // The single whitespace byte that separates maxval from the raster.
  void raster_separator() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw DecodeError("maxval", "missing whitespace before sample data");
    }
    ++pos_;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image decode_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw DecodeError("magic", "malformed magic");
  std::size_t channels = 0;
  switch (bytes[1]) {
    case '5': channels = 1; break;
    case '6': channels = 3; break;
    case '1': case '2': case '3': case '4': case '7':
      throw DecodeError("magic", std::string("unsupported magic P") + static_cast<char>(bytes[1]));
    default:
      throw DecodeError("magic", "malformed magic");
  }

  HeaderReader reader(bytes);
  reader.advance(2);
  if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#') {
    throw DecodeError("magic", "malformed magic");
  }
  const std::uint64_t width = reader.field("width");
  if (width == 0) throw DecodeError("width", "value must be positive");
  const std::uint64_t height = reader.field("height");
  if (height == 0) throw DecodeError("height", "value must be positive");
  const std::uint64_t maxval = reader.field("maxval");
  if (maxval == 0 || maxval > 65535) throw DecodeError("maxval", "must be in [1, 65535]");
  reader.raster_separator();

  const Dims dims{static_cast<std::size_t>(width), static_cast<std::size_t>(height)};
  try {
    validate_dims(dims, channels);
  } catch (const InvalidArgument& e) {
    throw DecodeError("size", e.what());
  }

  const std::size_t count = dims.area() * channels;
  const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  const std::size_t available = bytes.size() - reader.pos();
  if (available / bytes_per_sample < count) {
    throw DecodeError("payload", "expected " + std::to_string(count * bytes_per_sample) +
                                     " sample bytes, found " + std::to_string(available));
  }

  std::vector<Sample> samples(count);
  const std::uint8_t* p = bytes.data() + reader.pos();
  for (std::size_t i = 0; i < count; ++i) {
    Sample s = bytes_per_sample == 1
                   ? Sample{p[i]}
                   : static_cast<Sample>((Sample{p[2 * i]} << 8) | p[2 * i + 1]);
    if (s > maxval) {
      throw DecodeError("sample", "sample " + std::to_string(i) + " value " + std::to_string(s) +
                                      " exceeds maxval");
    }
    samples[i] = s;
  }
  return Image(dims, channels, static_cast<std::uint32_t>(maxval), std::move(samples));
}

std::vector<std::uint8_t> encode_pnm(const Image& img) {
  const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(img.width()) + " " + std::to_string(img.height()) +
                             "\n" + std::to_string(img.maxval()) + "\n";
  const bool wide = img.maxval() > 255;
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + img.samples().size() * (wide ? 2 : 1));
  out.insert(out.end(), header.begin(), header.end());
  for (Sample s : img.samples()) {
    if (wide) out.push_back(static_cast<std::uint8_t>(s >> 8));
    out.push_back(static_cast<std::uint8_t>(s & 0xFF));
  }
  return out;
}

Image read_pnm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path + " for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_pnm(bytes);
}

void write_pnm_file(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  const auto bytes = encode_pnm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path);
}

Image generate_synthetic(Dims dims, std::size_t channels, std::size_t num_regions,
                         unsigned noise_amplitude, std::uint64_t seed) {
  validate_dims(dims, channels);
  if (num_regions < 1) throw InvalidArgument("num_regions must be >= 1");
  if (noise_amplitude > 64) throw InvalidArgument("noise_amplitude must be <= 64");

  SplitMix64 rng(seed);

  // Distinct base colors; with a single channel only 256 exist, so give up on
  // distinctness after a bounded number of redraws.
  std::vector<std::vector<Sample>> colors;
  colors.reserve(num_regions);
  for (std::size_t r = 0; r < num_regions; ++r) {
    std::vector<Sample> color(channels);
    for (int attempt = 0; attempt < 64; ++attempt) {
      for (auto& c : color) c = static_cast<Sample>(rng.next() % 256);
      if (std::find(colors.begin(), colors.end(), color) == colors.end()) break;
    }
    colors.push_back(std::move(color));
  }

  std::vector<std::size_t> owner(dims.area(), 0);
  for (std::size_t r = 1; r < num_regions; ++r) {
    const std::size_t x0 = rng.next() % dims.width;
    const std::size_t y0 = rng.next() % dims.height;
    const std::size_t w = 1 + rng.next() % (dims.width - x0);
    const std::size_t h = 1 + rng.next() % (dims.height - y0);
    for (std::size_t y = y0; y < y0 + h; ++y) {
      std::fill_n(owner.begin() + static_cast<std::ptrdiff_t>(y * dims.width + x0), w, r);
    }
  }

  std::vector<Sample> samples(dims.area() * channels);
  const std::uint64_t span = 2 * std::uint64_t{noise_amplitude} + 1;
  for (std::size_t i = 0; i < dims.area(); ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      int v = colors[owner[i]][c];
      if (noise_amplitude > 0) {
        v += static_cast<int>(rng.next() % span) - static_cast<int>(noise_amplitude);
      }
      samples[i * channels + c] = static_cast<Sample>(std::clamp(v, 0, 255));
    }
  }
  return Image(dims, channels, 255, std::move(samples));
}

}  // namespace blockkm
