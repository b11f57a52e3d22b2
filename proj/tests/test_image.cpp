#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fsr/image.hpp"
#include "support/synth.hpp"

namespace fs = std::filesystem;
using namespace fsr;

namespace {

fs::path temp_file(const char* name) {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "fsr_image_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir / name;
}

void write_bytes(const fs::path& p, const std::string& data) {
    std::ofstream out(p, std::ios::binary);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

}  // namespace

TEST_SUITE_BEGIN("image");

TEST_CASE("pgm decode maps bytes to samples unchanged") {
    auto p = temp_file("decode.pgm");
    write_bytes(p, std::string("P5\n2 2\n255\n") + '\0' + '\xff' + '\x80' + '\x40');
    ImageGrid g = load_image(p.string());
    CHECK(g.width() == 2);
    CHECK(g.height() == 2);
    CHECK(g.at(0, 0) == 0.0);
    CHECK(g.at(1, 0) == 255.0);
    CHECK(g.at(0, 1) == 128.0);
    CHECK(g.at(1, 1) == 64.0);
}

TEST_CASE("pgm header comments are tolerated") {
    auto p = temp_file("comments.pgm");
    write_bytes(p, std::string("P5\n# a comment\n2 # inline\n1\n# another\n255\n") + 'a' + 'b');
    ImageGrid g = load_image(p.string());
    CHECK(g.width() == 2);
    CHECK(g.height() == 1);
    CHECK(g.at(0, 0) == double('a'));
}

TEST_CASE("pgm rejects unsupported and malformed input") {
    auto deep = temp_file("deep.pgm");
    write_bytes(deep, "P5\n1 1\n65535\n\0\0");
    CHECK_THROWS_AS(load_image(deep.string()), std::runtime_error);

    auto truncated = temp_file("short.pgm");
    write_bytes(truncated, "P5\n4 4\n255\nab");
    CHECK_THROWS_AS(load_image(truncated.string()), std::runtime_error);

    auto p6 = temp_file("color.pgm");
    write_bytes(p6, "P6\n1 1\n255\nabc");
    CHECK_THROWS_AS(load_image(p6.string()), std::runtime_error);

    CHECK_THROWS_AS(load_image("/nonexistent/path/img.pgm"), std::runtime_error);
}

TEST_CASE("save clamps and rounds half-up") {
    CHECK(quantize_sample(255.7) == 255);
    CHECK(quantize_sample(-3.2) == 0);
    CHECK(quantize_sample(127.5) == 128);
    CHECK(quantize_sample(126.4999) == 126);
    CHECK(quantize_sample(0.5) == 1);

    ImageGrid g(3, 1, std::vector<double>{255.7, -3.2, 127.5});
    auto p = temp_file("clamp.pgm");
    save_image(g, p.string());
    ImageGrid back = load_image(p.string());
    CHECK(back.at(0, 0) == 255.0);
    CHECK(back.at(1, 0) == 0.0);
    CHECK(back.at(2, 0) == 128.0);
}

TEST_CASE("io round trip is the identity on 8-bit data") {
    std::vector<double> all(256);
    for (int i = 0; i < 256; ++i) all[i] = i;
    ImageGrid g(256, 1, all);
    auto p = temp_file("roundtrip.pgm");
    save_image(g, p.string());
    CHECK(load_image(p.string()) == g);

    // random 8-bit images survive save/load exactly
    fsrtest::Rng rng(7);
    ImageGrid noisy(23, 17);
    for (double& s : noisy.samples()) s = static_cast<double>(rng.uniform_int(0, 255));
    save_image(noisy, p.string());
    CHECK(load_image(p.string()) == noisy);
}

TEST_CASE("mask files use the {0,255} value set strictly") {
    SamplingMask m(4, 2, false);
    m.set(0, 0, true);
    m.set(3, 1, true);
    auto p = temp_file("mask.pgm");
    save_mask(m, p.string(), "seed=42");
    std::string comment;
    SamplingMask back = load_mask(p.string(), &comment);
    CHECK(back == m);
    CHECK(comment == "seed=42");

    auto bad = temp_file("badmask.pgm");
    write_bytes(bad, std::string("P5\n2 1\n255\n") + '\x01' + '\xff');
    CHECK_THROWS_AS(load_mask(bad.string()), std::runtime_error);
}

TEST_CASE("apply_mask keeps acquired pixels and zeroes the rest") {
    ImageGrid g(2, 2, std::vector<double>{10, 20, 30, 40});

    SamplingMask all_true(2, 2, true);
    CHECK(apply_mask(g, all_true) == g);

    SamplingMask all_false(2, 2, false);
    ImageGrid zero = apply_mask(g, all_false);
    for (double s : zero.samples()) CHECK(s == 0.0);

    ImageGrid c(4, 4, 100.0);
    SamplingMask checker(4, 4, false);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            if ((x + y) % 2 == 0) checker.set(x, y, true);
    ImageGrid masked = apply_mask(c, checker);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            CHECK(masked.at(x, y) == (checker.at(x, y) ? 100.0 : 0.0));

    SamplingMask wrong(3, 3, true);
    CHECK_THROWS_AS(apply_mask(g, wrong), std::invalid_argument);
}

TEST_CASE("apply_mask agrees with the source on every acquired pixel") {
    fsrtest::Rng rng(11);
    ImageGrid g = fsrtest::make_random_image(19, 13, 3);
    SamplingMask m = fsrtest::make_bernoulli_mask(19, 13, 0.4, 5);
    ImageGrid masked = apply_mask(g, m);
    for (int y = 0; y < 13; ++y)
        for (int x = 0; x < 19; ++x)
            if (m.at(x, y)) CHECK(masked.at(x, y) == g.at(x, y));
}

TEST_CASE("grid constructors validate their invariants") {
    CHECK_THROWS_AS(ImageGrid(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(ImageGrid(2, 2, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_SUITE_END();
