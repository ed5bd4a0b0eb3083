#include "qrsl/gf256.hpp"

#include "qrsl/error.hpp"
#include "qrsl/rng.hpp"

#include "doctest.h"

#include <vector>

using namespace qrsl;

namespace {

std::vector<std::uint8_t> make_codeword(const std::vector<std::uint8_t>& data, int parity) {
    std::vector<std::uint8_t> cw = data;
    auto p = gf256::rs_encode(std::span<const std::uint8_t>(data.data(), data.size()), parity);
    cw.insert(cw.end(), p.begin(), p.end());
    return cw;
}

} // namespace

TEST_CASE("gf256 field axioms on random samples") {
    SplitMix64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        auto a = static_cast<std::uint8_t>(rng.next_below(256));
        auto b = static_cast<std::uint8_t>(rng.next_below(256));
        auto c = static_cast<std::uint8_t>(rng.next_below(256));
        CHECK(gf256::mul(a, b) == gf256::mul(b, a));
        CHECK(gf256::mul(a, gf256::mul(b, c)) == gf256::mul(gf256::mul(a, b), c));
        CHECK(gf256::mul(a, 1) == a);
        if (a != 0)
            CHECK(gf256::mul(a, gf256::inv(a)) == 1);
    }
}

TEST_CASE("rs_decode is identity on clean codewords") {
    std::vector<std::uint8_t> data{1, 2, 3, 4, 5, 250, 0, 77};
    for (int parity = 2; parity <= 10; ++parity) {
        auto cw = make_codeword(data, parity);
        CHECK(gf256::rs_check(cw, parity));
        auto dec = gf256::rs_decode(cw, parity);
        CHECK(dec.data == data);
        CHECK(dec.corrected == 0);
    }
}

TEST_CASE("single-byte error at every position is corrected for parity 2..10") {
    std::vector<std::uint8_t> data{10, 20, 30, 40, 55, 66, 77, 88, 99, 111};
    for (int parity = 2; parity <= 10; ++parity) {
        auto clean = make_codeword(data, parity);
        for (std::size_t pos = 0; pos < clean.size(); ++pos) {
            for (std::uint8_t flip : {std::uint8_t{0x01}, std::uint8_t{0xFF}, std::uint8_t{0x5A}}) {
                auto corrupted = clean;
                corrupted[pos] ^= flip;
                auto dec = gf256::rs_decode(corrupted, parity);
                CHECK(dec.data == data);
                CHECK(dec.corrected == 1);
            }
        }
    }
}

TEST_CASE("errors up to floor(parity/2) are corrected") {
    SplitMix64 rng(99);
    for (int parity = 2; parity <= 14; parity += 2) {
        std::vector<std::uint8_t> data;
        for (int i = 0; i < 16; ++i)
            data.push_back(static_cast<std::uint8_t>(rng.next_below(256)));
        auto clean = make_codeword(data, parity);
        int t = parity / 2;
        for (int trial = 0; trial < 50; ++trial) {
            auto corrupted = clean;
            // t distinct positions, nonzero flips
            std::vector<std::size_t> used;
            for (int e = 0; e < t; ++e) {
                std::size_t pos;
                do {
                    pos = rng.next_below(corrupted.size());
                } while (std::find(used.begin(), used.end(), pos) != used.end());
                used.push_back(pos);
                corrupted[pos] ^= static_cast<std::uint8_t>(1 + rng.next_below(255));
            }
            auto dec = gf256::rs_decode(corrupted, parity);
            CHECK(dec.data == data);
            CHECK(dec.corrected == t);
        }
    }
}

TEST_CASE("floor(parity/2)+1 errors are rejected in nearly all random trials") {
    SplitMix64 rng(1234);
    int rejected = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        int parity = 4 + 2 * static_cast<int>(rng.next_below(4)); // 4,6,8,10
        std::vector<std::uint8_t> data;
        for (int i = 0; i < 12; ++i)
            data.push_back(static_cast<std::uint8_t>(rng.next_below(256)));
        auto clean = make_codeword(data, parity);
        auto corrupted = clean;
        int t_plus_1 = parity / 2 + 1;
        std::vector<std::size_t> used;
        for (int e = 0; e < t_plus_1; ++e) {
            std::size_t pos;
            do {
                pos = rng.next_below(corrupted.size());
            } while (std::find(used.begin(), used.end(), pos) != used.end());
            used.push_back(pos);
            corrupted[pos] ^= static_cast<std::uint8_t>(1 + rng.next_below(255));
        }
        try {
            (void)gf256::rs_decode(corrupted, parity);
            // falling through means a silent miscorrection
        } catch (const TooManyErrors&) {
            ++rejected;
        }
    }
    CHECK(rejected >= trials * 99 / 100);
}
