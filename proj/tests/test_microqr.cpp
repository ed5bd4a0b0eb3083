#include "qrsl/microqr.hpp"

#include "qrsl/error.hpp"
#include "qrsl/gf256.hpp"
#include "qrsl/rng.hpp"

#include "doctest.h"

#include <set>
#include <string>
#include <vector>

using namespace qrsl;

namespace {

const std::vector<std::pair<MicroQrVersion, EcLevel>> kAllCombos = {
    {MicroQrVersion::M1, EcLevel::DetectOnly}, {MicroQrVersion::M2, EcLevel::L},
    {MicroQrVersion::M2, EcLevel::M},          {MicroQrVersion::M3, EcLevel::L},
    {MicroQrVersion::M3, EcLevel::M},          {MicroQrVersion::M4, EcLevel::L},
    {MicroQrVersion::M4, EcLevel::M},          {MicroQrVersion::M4, EcLevel::Q},
};

std::string random_payload(SplitMix64& rng, PayloadMode mode, int len) {
    static const std::string alnum = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ $%*+-./:";
    std::string s;
    for (int i = 0; i < len; ++i) {
        switch (mode) {
        case PayloadMode::Numeric:
            s += static_cast<char>('0' + rng.next_below(10));
            break;
        case PayloadMode::Alphanumeric:
            s += alnum[rng.next_below(alnum.size())];
            break;
        case PayloadMode::Byte:
            s += static_cast<char>(32 + rng.next_below(95)); // printable ASCII
            break;
        }
    }
    return s;
}

std::vector<PayloadMode> modes_for(MicroQrVersion v) {
    switch (v) {
    case MicroQrVersion::M1: return {PayloadMode::Numeric};
    case MicroQrVersion::M2: return {PayloadMode::Numeric, PayloadMode::Alphanumeric};
    default:
        return {PayloadMode::Numeric, PayloadMode::Alphanumeric, PayloadMode::Byte};
    }
}

} // namespace

TEST_CASE("capacity table matches the standard") {
    // chars per (version, ec, mode), zero when the mode is undefined
    CHECK(char_capacity(MicroQrVersion::M1, EcLevel::DetectOnly, PayloadMode::Numeric) == 5);
    CHECK(char_capacity(MicroQrVersion::M1, EcLevel::DetectOnly, PayloadMode::Alphanumeric) == 0);
    CHECK(char_capacity(MicroQrVersion::M2, EcLevel::L, PayloadMode::Numeric) == 10);
    CHECK(char_capacity(MicroQrVersion::M2, EcLevel::L, PayloadMode::Alphanumeric) == 6);
    CHECK(char_capacity(MicroQrVersion::M2, EcLevel::M, PayloadMode::Numeric) == 8);
    CHECK(char_capacity(MicroQrVersion::M2, EcLevel::M, PayloadMode::Alphanumeric) == 5);
    CHECK(char_capacity(MicroQrVersion::M2, EcLevel::L, PayloadMode::Byte) == 0);
    CHECK(char_capacity(MicroQrVersion::M3, EcLevel::L, PayloadMode::Numeric) == 23);
    CHECK(char_capacity(MicroQrVersion::M3, EcLevel::L, PayloadMode::Alphanumeric) == 14);
    CHECK(char_capacity(MicroQrVersion::M3, EcLevel::L, PayloadMode::Byte) == 9);
    CHECK(char_capacity(MicroQrVersion::M3, EcLevel::M, PayloadMode::Numeric) == 18);
    CHECK(char_capacity(MicroQrVersion::M3, EcLevel::M, PayloadMode::Alphanumeric) == 11);
    CHECK(char_capacity(MicroQrVersion::M3, EcLevel::M, PayloadMode::Byte) == 7);
    CHECK(char_capacity(MicroQrVersion::M4, EcLevel::L, PayloadMode::Numeric) == 35);
    CHECK(char_capacity(MicroQrVersion::M4, EcLevel::L, PayloadMode::Alphanumeric) == 21);
    CHECK(char_capacity(MicroQrVersion::M4, EcLevel::L, PayloadMode::Byte) == 15);
    CHECK(char_capacity(MicroQrVersion::M4, EcLevel::M, PayloadMode::Numeric) == 30);
    CHECK(char_capacity(MicroQrVersion::M4, EcLevel::M, PayloadMode::Alphanumeric) == 18);
    CHECK(char_capacity(MicroQrVersion::M4, EcLevel::M, PayloadMode::Byte) == 13);
    CHECK(char_capacity(MicroQrVersion::M4, EcLevel::Q, PayloadMode::Numeric) == 21);
    CHECK(char_capacity(MicroQrVersion::M4, EcLevel::Q, PayloadMode::Alphanumeric) == 13);
    CHECK(char_capacity(MicroQrVersion::M4, EcLevel::Q, PayloadMode::Byte) == 9);
}

TEST_CASE("GP1 in M2-L round-trips through a 13x13 symbol") {
    Payload p{PayloadMode::Alphanumeric, "GP1"};
    SymbolMatrix sym = encode(p, MicroQrVersion::M2, EcLevel::L);
    CHECK(sym.side == 13);
    DecodedPayload d = decode(sym);
    CHECK(d.text == "GP1");
    CHECK(d.version == MicroQrVersion::M2);
    CHECK(d.ec == EcLevel::L);
    CHECK(d.corrected_errors == 0);
}

TEST_CASE("GP2 in M3-M clean round-trip") {
    SymbolMatrix sym = encode(Payload{PayloadMode::Alphanumeric, "GP2"}, MicroQrVersion::M3, EcLevel::M);
    DecodedPayload d = decode(sym);
    CHECK(d.text == "GP2");
    CHECK(d.corrected_errors == 0);
}

TEST_CASE("encoding is deterministic") {
    Payload p{PayloadMode::Byte, "incubator"};
    SymbolMatrix a = encode(p, MicroQrVersion::M4, EcLevel::M);
    SymbolMatrix b = encode(p, MicroQrVersion::M4, EcLevel::M);
    CHECK(a == b);
}

TEST_CASE("invalid combinations are refused") {
    CHECK_THROWS_AS(encode(Payload{PayloadMode::Numeric, "1"}, MicroQrVersion::M2, EcLevel::Q),
                    InvalidCombination);
    CHECK_THROWS_AS(encode(Payload{PayloadMode::Numeric, "1"}, MicroQrVersion::M1, EcLevel::L),
                    InvalidCombination);
    CHECK_THROWS_AS(encode(Payload{PayloadMode::Byte, "ab"}, MicroQrVersion::M2, EcLevel::L),
                    InvalidCombination);
    CHECK_THROWS_AS(encode(Payload{PayloadMode::Numeric, "123456"}, MicroQrVersion::M1, EcLevel::DetectOnly),
                    CapacityExceeded);
    CHECK_THROWS_AS(encode(Payload{PayloadMode::Numeric, "12a"}, MicroQrVersion::M2, EcLevel::L), Error);
}

TEST_CASE("round-trip over all versions, ec levels, modes, masks and lengths") {
    SplitMix64 rng(42);
    for (auto [version, ec] : kAllCombos) {
        for (PayloadMode mode : modes_for(version)) {
            int cap = char_capacity(version, ec, mode);
            REQUIRE(cap > 0);
            for (int len : {1, cap / 2 + 1, cap}) {
                for (int mask = -1; mask < 4; ++mask) {
                    Payload p{mode, random_payload(rng, mode, len)};
                    SymbolMatrix sym = mask < 0 ? encode(p, version, ec)
                                                : encode(p, version, ec, mask);
                    DecodeResult r = try_decode(sym);
                    REQUIRE(r.status == DecodeStatus::Ok);
                    CHECK(r.payload->text == p.data);
                    CHECK(r.payload->mode == mode);
                    CHECK(r.payload->version == version);
                    CHECK(r.payload->ec == ec);
                    if (mask >= 0)
                        CHECK(r.payload->mask == mask);
                    CHECK(r.payload->corrected_errors == 0);
                }
            }
        }
    }
}

TEST_CASE("100 random numeric payloads of maximal length per (version, ec) round-trip") {
    SplitMix64 rng(2024);
    for (auto [version, ec] : kAllCombos) {
        int cap = char_capacity(version, ec, PayloadMode::Numeric);
        for (int i = 0; i < 100; ++i) {
            Payload p{PayloadMode::Numeric, random_payload(rng, PayloadMode::Numeric, cap)};
            DecodedPayload d = decode(encode(p, version, ec));
            CHECK(d.text == p.data);
        }
    }
}

TEST_CASE("corruption up to capacity is corrected, reported exactly") {
    SplitMix64 rng(555);
    for (auto [version, ec] : kAllCombos) {
        int t = error_correction_capacity(version, ec);
        if (t == 0)
            continue;
        int n_data = data_codeword_count(version, ec);
        int n_ec = ec_codeword_count(version, ec);
        Payload p{PayloadMode::Numeric,
                  random_payload(rng, PayloadMode::Numeric, char_capacity(version, ec, PayloadMode::Numeric))};
        auto data_cw = encode_codewords(p, version, ec);
        auto parity = gf256::rs_encode(std::span<const std::uint8_t>(data_cw.data(), data_cw.size()), n_ec);
        std::vector<std::uint8_t> cws = data_cw;
        cws.insert(cws.end(), parity.begin(), parity.end());

        for (int errs = 1; errs <= t; ++errs) {
            for (int trial = 0; trial < 20; ++trial) {
                auto corrupted = cws;
                std::set<std::size_t> positions;
                while (static_cast<int>(positions.size()) < errs)
                    positions.insert(rng.next_below(corrupted.size()));
                bool nibble_broken = false;
                for (std::size_t pos : positions) {
                    bool is_nibble = (version == MicroQrVersion::M1 || version == MicroQrVersion::M3) &&
                                     pos == static_cast<std::size_t>(n_data - 1);
                    std::uint8_t flip =
                        static_cast<std::uint8_t>(1 + rng.next_below(is_nibble ? 15 : 255));
                    corrupted[pos] ^= is_nibble ? static_cast<std::uint8_t>(flip << 4) : flip;
                    nibble_broken = nibble_broken || is_nibble;
                }
                (void)nibble_broken;
                SymbolMatrix sym = assemble_symbol(corrupted, version, ec, 0);
                DecodeResult r = try_decode(sym);
                REQUIRE_MESSAGE(r.status == DecodeStatus::Ok,
                                "version=" << to_string(version) << " ec=" << to_string(ec)
                                           << " errs=" << errs);
                CHECK(r.payload->text == p.data);
                CHECK(r.payload->corrected_errors == errs);
            }
        }
    }
}

TEST_CASE("capacity+1 corruption is rejected in >=99% of 1000 trials, never silently wrong") {
    SplitMix64 rng(777);
    int rejected = 0, silent_wrong = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        auto [version, ec] = kAllCombos[1 + rng.next_below(kAllCombos.size() - 1)]; // skip M1
        int t = error_correction_capacity(version, ec);
        int n_ec = ec_codeword_count(version, ec);
        Payload p{PayloadMode::Numeric,
                  random_payload(rng, PayloadMode::Numeric,
                                 char_capacity(version, ec, PayloadMode::Numeric))};
        auto cws = encode_codewords(p, version, ec);
        auto parity = gf256::rs_encode(std::span<const std::uint8_t>(cws.data(), cws.size()), n_ec);
        cws.insert(cws.end(), parity.begin(), parity.end());

        std::set<std::size_t> positions;
        while (static_cast<int>(positions.size()) < t + 1)
            positions.insert(rng.next_below(cws.size()));
        int n_data = data_codeword_count(version, ec);
        for (std::size_t pos : positions) {
            bool is_nibble = (version == MicroQrVersion::M1 || version == MicroQrVersion::M3) &&
                             pos == static_cast<std::size_t>(n_data - 1);
            std::uint8_t flip = static_cast<std::uint8_t>(1 + rng.next_below(is_nibble ? 15 : 255));
            cws[pos] ^= is_nibble ? static_cast<std::uint8_t>(flip << 4) : flip;
        }
        DecodeResult r = try_decode(assemble_symbol(cws, version, ec, 1));
        if (r.status != DecodeStatus::Ok)
            ++rejected;
        else if (r.payload->text != p.data)
            ++silent_wrong;
        else
            ++rejected; // corrected back to the true payload (possible only via miscount); count as fine
    }
    CHECK(rejected >= trials * 99 / 100);
    CHECK(silent_wrong <= trials / 100);
}

TEST_CASE("M1 any corruption is detected (detect-only level)") {
    SplitMix64 rng(31337);
    Payload p{PayloadMode::Numeric, "01234"};
    auto data_cw = encode_codewords(p, MicroQrVersion::M1, EcLevel::DetectOnly);
    auto parity = gf256::rs_encode(std::span<const std::uint8_t>(data_cw.data(), data_cw.size()), 2);
    std::vector<std::uint8_t> cws = data_cw;
    cws.insert(cws.end(), parity.begin(), parity.end());
    int detected = 0;
    const int trials = 200;
    for (int i = 0; i < trials; ++i) {
        auto corrupted = cws;
        std::size_t pos = rng.next_below(corrupted.size());
        bool is_nibble = pos == 2;
        std::uint8_t flip = static_cast<std::uint8_t>(1 + rng.next_below(is_nibble ? 15 : 255));
        corrupted[pos] ^= is_nibble ? static_cast<std::uint8_t>(flip << 4) : flip;
        DecodeResult r = try_decode(assemble_symbol(corrupted, MicroQrVersion::M1, EcLevel::DetectOnly, 2));
        if (r.status != DecodeStatus::Ok)
            ++detected;
    }
    CHECK(detected == trials);
}

TEST_CASE("format info damage is repaired up to 3 bits then refused") {
    SymbolMatrix sym = encode(Payload{PayloadMode::Alphanumeric, "GP1"}, MicroQrVersion::M2, EcLevel::L, 1);
    // format modules: (1..8, 8) and (8, 7..1)
    std::vector<std::pair<int, int>> coords;
    for (int x = 1; x <= 8; ++x)
        coords.emplace_back(x, 8);
    for (int y = 7; y >= 1; --y)
        coords.emplace_back(8, y);

    SymbolMatrix damaged = sym;
    for (int i = 0; i < 3; ++i)
        damaged.set(coords[i].first, coords[i].second, !damaged.get(coords[i].first, coords[i].second));
    DecodeResult r = try_decode(damaged);
    REQUIRE(r.status == DecodeStatus::Ok);
    CHECK(r.payload->text == "GP1");

    // 7 flips exceeds the BCH(15,5) distance-7 repair budget of any code pair
    SymbolMatrix dead = sym;
    for (int i = 0; i < 7; ++i)
        dead.set(coords[i].first, coords[i].second, !dead.get(coords[i].first, coords[i].second));
    DecodeResult r2 = try_decode(dead);
    CHECK(r2.status != DecodeStatus::Ok);
}

TEST_CASE("symbol text format round-trips") {
    SymbolMatrix sym = encode(Payload{PayloadMode::Numeric, "42"}, MicroQrVersion::M1, EcLevel::DetectOnly);
    std::string text = symbol_to_text(sym);
    SymbolMatrix back = symbol_from_text(text);
    CHECK(back == sym);
}

TEST_CASE("narrowest_mode picks the densest representation") {
    CHECK(narrowest_mode("0123") == PayloadMode::Numeric);
    CHECK(narrowest_mode("GP1") == PayloadMode::Alphanumeric);
    CHECK(narrowest_mode("gp1") == PayloadMode::Byte);
}
