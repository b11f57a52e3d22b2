#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsr {

/// 2-D luminance raster with real-valued samples, stored row-major.
/// Nominal sample range is [0,255]; intermediates are never quantized.
class ImageGrid {
public:
    ImageGrid() = default;
    ImageGrid(int width, int height, double fill = 0.0);
    ImageGrid(int width, int height, std::vector<double> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return samples_.size(); }

    // x = column, y = row
    double at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
    double& at(int x, int y) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

    const std::vector<double>& samples() const { return samples_; }
    std::vector<double>& samples() { return samples_; }

    bool operator==(const ImageGrid&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> samples_;
};

/// Boolean raster marking originally acquired pixel positions (true = acquired).
class SamplingMask {
public:
    SamplingMask() = default;
    SamplingMask(int width, int height, bool fill = false);

    int width() const { return width_; }
    int height() const { return height_; }

    bool at(int x, int y) const { return flags_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    void set(int x, int y, bool v) { flags_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0; }

    std::size_t count_true() const;
    double density() const;

    bool operator==(const SamplingMask&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> flags_;
};

/// Per-pixel role of a window position during model generation.
enum class AreaLabel : std::uint8_t {
    Support,        // originally acquired
    Reconstructed,  // filled in by an earlier block
    Loss,           // missing, not yet reconstructed
    Outside,        // beyond the image bounds
};

/// Loads an 8-bit binary PGM (P5, maxval 255). Header comments are tolerated.
/// Throws std::runtime_error on missing files, malformed headers, unsupported
/// depth, or truncated payloads.
ImageGrid load_image(const std::string& path);

/// Clamps samples to [0,255], rounds half-up to integers and writes a P5 file.
void save_image(const ImageGrid& grid, const std::string& path);

/// Masks are stored as P5 files with the value set {0,255}; 255 marks an
/// acquired pixel. Any other value is rejected. An optional header comment is
/// written verbatim after the magic; load can return the first comment found.
SamplingMask load_mask(const std::string& path, std::string* comment = nullptr);
void save_mask(const SamplingMask& mask, const std::string& path, const std::string& comment = "");

/// Keeps acquired samples and zeroes the rest. The zero is a placeholder only;
/// reconstruction never reads it as data. Throws on dimension mismatch.
ImageGrid apply_mask(const ImageGrid& grid, const SamplingMask& mask);

/// Clamp-and-round used by save_image; exposed for tests and write-back.
std::uint8_t quantize_sample(double v);

}  // namespace fsr
