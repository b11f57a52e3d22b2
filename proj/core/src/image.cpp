#include "fsr/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

namespace fsr {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in, const std::string& path, std::string* first_comment) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            std::string comment;
            c = in.get();
            while (c != EOF && c != '\n') {
                comment.push_back(static_cast<char>(c));
                c = in.get();
            }
            if (first_comment && first_comment->empty()) {
                while (!comment.empty() && comment.front() == ' ') comment.erase(comment.begin());
                *first_comment = comment;
            }
            c = in.get();
            continue;
        }
        if (!std::isspace(c)) break;
        c = in.get();
    }
    require(c != EOF, "pgm: truncated header in " + path);
    std::string tok;
    while (c != EOF && !std::isspace(c) && c != '#') {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (c == '#') in.unget();
    return tok;
}

int parse_int(const std::string& tok, const std::string& what, const std::string& path) {
    require(!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos,
            "pgm: malformed " + what + " in " + path);
    return std::stoi(tok);
}

std::vector<std::uint8_t> load_p5(const std::string& path, int& width, int& height,
                                  std::string* comment) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "pgm: cannot open " + path);
    std::string magic = next_token(in, path, comment);
    require(magic == "P5", "pgm: not a binary PGM (P5): " + path);
    width = parse_int(next_token(in, path, comment), "width", path);
    height = parse_int(next_token(in, path, comment), "height", path);
    int maxval = parse_int(next_token(in, path, comment), "maxval", path);
    require(width >= 1 && height >= 1, "pgm: invalid dimensions in " + path);
    require(maxval == 255, "pgm: unsupported maxval " + std::to_string(maxval) + " in " + path);
    // exactly one whitespace byte separates the header from the payload
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    require(static_cast<std::size_t>(in.gcount()) == bytes.size(),
            "pgm: truncated pixel payload in " + path);
    return bytes;
}

void save_p5(const std::vector<std::uint8_t>& bytes, int width, int height,
             const std::string& path, const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "pgm: cannot write " + path);
    out << "P5\n";
    if (!comment.empty()) out << "# " << comment << "\n";
    out << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    require(out.good(), "pgm: write failed for " + path);
}

}  // namespace

ImageGrid::ImageGrid(int width, int height, double fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("ImageGrid: dimensions must be >= 1");
    samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

ImageGrid::ImageGrid(int width, int height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 1 || height < 1) throw std::invalid_argument("ImageGrid: dimensions must be >= 1");
    if (samples_.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("ImageGrid: sample count does not match dimensions");
}

SamplingMask::SamplingMask(int width, int height, bool fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("SamplingMask: dimensions must be >= 1");
    flags_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t SamplingMask::count_true() const {
    std::size_t n = 0;
    for (auto f : flags_) n += f;
    return n;
}

double SamplingMask::density() const {
    if (flags_.empty()) return 0.0;
    return static_cast<double>(count_true()) / static_cast<double>(flags_.size());
}

std::uint8_t quantize_sample(double v) {
    double clamped = std::clamp(v, 0.0, 255.0);
    double rounded = std::floor(clamped + 0.5);  // half-up
    return static_cast<std::uint8_t>(std::clamp(rounded, 0.0, 255.0));
}

ImageGrid load_image(const std::string& path) {
    int w = 0, h = 0;
    std::vector<std::uint8_t> bytes = load_p5(path, w, h, nullptr);
    std::vector<double> samples(bytes.size());
    std::transform(bytes.begin(), bytes.end(), samples.begin(),
                   [](std::uint8_t b) { return static_cast<double>(b); });
    return ImageGrid(w, h, std::move(samples));
}

void save_image(const ImageGrid& grid, const std::string& path) {
    std::vector<std::uint8_t> bytes(grid.size());
    const auto& s = grid.samples();
    for (std::size_t i = 0; i < s.size(); ++i) bytes[i] = quantize_sample(s[i]);
    save_p5(bytes, grid.width(), grid.height(), path, "");
}

SamplingMask load_mask(const std::string& path, std::string* comment) {
    int w = 0, h = 0;
    std::vector<std::uint8_t> bytes = load_p5(path, w, h, comment);
    SamplingMask mask(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t b = bytes[static_cast<std::size_t>(y) * w + x];
            require(b == 0 || b == 255, "pgm: mask value outside {0,255} in " + path);
            mask.set(x, y, b == 255);
        }
    }
    return mask;
}

void save_mask(const SamplingMask& mask, const std::string& path, const std::string& comment) {
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(mask.width()) * mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            bytes[static_cast<std::size_t>(y) * mask.width() + x] = mask.at(x, y) ? 255 : 0;
    save_p5(bytes, mask.width(), mask.height(), path, comment);
}

ImageGrid apply_mask(const ImageGrid& grid, const SamplingMask& mask) {
    if (grid.width() != mask.width() || grid.height() != mask.height())
        throw std::invalid_argument("apply_mask: dimension mismatch");
    ImageGrid out = grid;
    for (int y = 0; y < grid.height(); ++y)
        for (int x = 0; x < grid.width(); ++x)
            if (!mask.at(x, y)) out.at(x, y) = 0.0;
    return out;
}

}  // namespace fsr
