#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace blockkm {

using Sample = std::uint16_t;

/// Image extent in pixels.
struct Dims {
  std::size_t width = 0;
  std::size_t height = 0;

  std::size_t area() const noexcept { return width * height; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Largest total sample count (width * height * channels) the library accepts.
inline constexpr std::size_t kMaxSamples = (std::size_t{1} << 31) - 1;

/// Immutable row-major raster with 1 (gray) or 3 (RGB) interleaved channels.
///
/// Samples are kept as exact integers in [0, maxval]; maxval may be anything
/// in [1, 65535], values above 255 use two bytes per sample on disk.
class Image {
 public:
  /// Throws InvalidArgument if any invariant is violated.
  Image(Dims dims, std::size_t channels, std::uint32_t maxval, std::vector<Sample> samples);

  /// Zero-filled image.
  Image(Dims dims, std::size_t channels, std::uint32_t maxval);

  Dims dims() const noexcept { return dims_; }
  std::size_t width() const noexcept { return dims_.width; }
  std::size_t height() const noexcept { return dims_.height; }
  std::size_t channels() const noexcept { return channels_; }
  std::uint32_t maxval() const noexcept { return maxval_; }
  std::span<const Sample> samples() const noexcept { return samples_; }

  /// Sample at pixel (x, y), channel c. Unchecked.
  Sample at(std::size_t x, std::size_t y, std::size_t c = 0) const noexcept {
    return samples_[(y * dims_.width + x) * channels_ + c];
  }

  /// Pixel (x, y) as a span of `channels()` samples. Unchecked.
  std::span<const Sample> pixel(std::size_t x, std::size_t y) const noexcept {
    return {samples_.data() + (y * dims_.width + x) * channels_, channels_};
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  Dims dims_;
  std::size_t channels_;
  std::uint32_t maxval_;
  std::vector<Sample> samples_;
};

/// Throws InvalidArgument unless width, height >= 1 and the sample budget fits.
void validate_dims(Dims dims, std::size_t channels);

/// Decodes binary Netpbm P5 (gray) or P6 (RGB). Throws DecodeError.
Image decode_pnm(std::span<const std::uint8_t> bytes);

/// Encodes as P5 when channels == 1, else P6. decode_pnm inverts this exactly.
std::vector<std::uint8_t> encode_pnm(const Image& img);

Image read_pnm_file(const std::string& path);
void write_pnm_file(const std::string& path, const Image& img);

/// Deterministic stand-in for aerial imagery: `num_regions` axis-aligned
/// rectangles with distinct base colors painted over each other, plus uniform
/// noise in [-noise_amplitude, +noise_amplitude] clamped to [0, 255].
/// The first region always covers the whole image. maxval is 255.
Image generate_synthetic(Dims dims, std::size_t channels, std::size_t num_regions,
                         unsigned noise_amplitude, std::uint64_t seed);

}  // namespace blockkm
