#include "qrsl/microqr.hpp"

#include "qrsl/bitstream.hpp"
#include "qrsl/error.hpp"
#include "qrsl/gf256.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <sstream>
#include <utility>

namespace qrsl {
namespace {

// Symbology parameters per (version, ec), ISO 18004 Micro QR clauses.
// correctable is the standard's error correction capacity; the remaining
// parity budget is reserved for misdecode protection.
struct SymbolParams {
    MicroQrVersion version;
    EcLevel ec;
    int symbol_number; // 3-bit field in the format information
    int data_codewords; // includes the trailing 4-bit codeword of M1/M3
    int ec_codewords;
    int correctable;
};

constexpr std::array<SymbolParams, 8> kParams = {{
    {MicroQrVersion::M1, EcLevel::DetectOnly, 0, 3, 2, 0},
    {MicroQrVersion::M2, EcLevel::L, 1, 5, 5, 1},
    {MicroQrVersion::M2, EcLevel::M, 2, 4, 6, 2},
    {MicroQrVersion::M3, EcLevel::L, 3, 11, 6, 2},
    {MicroQrVersion::M3, EcLevel::M, 4, 9, 8, 4},
    {MicroQrVersion::M4, EcLevel::L, 5, 16, 8, 3},
    {MicroQrVersion::M4, EcLevel::M, 6, 14, 10, 5},
    {MicroQrVersion::M4, EcLevel::Q, 7, 10, 14, 7},
}};

const SymbolParams* find_params(MicroQrVersion v, EcLevel e) {
    for (const auto& p : kParams)
        if (p.version == v && p.ec == e)
            return &p;
    return nullptr;
}

const SymbolParams& params_for_symbol_number(int n) { return kParams[static_cast<std::size_t>(n)]; }

bool has_nibble_codeword(MicroQrVersion v) {
    return v == MicroQrVersion::M1 || v == MicroQrVersion::M3;
}

int version_index(MicroQrVersion v) { return static_cast<int>(v); }

int mode_indicator_bits(MicroQrVersion v) { return version_index(v) - 1; }

int terminator_bits(MicroQrVersion v) { return 2 * version_index(v) + 1; } // 3,5,7,9

// Character count field width; -1 when the mode does not exist for the version.
int count_bits(MicroQrVersion v, PayloadMode m) {
    int idx = version_index(v);
    switch (m) {
    case PayloadMode::Numeric:
        return std::array{3, 4, 5, 6}[idx - 1];
    case PayloadMode::Alphanumeric:
        return idx >= 2 ? std::array{3, 4, 5}[idx - 2] : -1;
    case PayloadMode::Byte:
        return idx >= 3 ? std::array{4, 5}[idx - 3] : -1;
    }
    return -1;
}

int mode_indicator_value(PayloadMode m) {
    switch (m) {
    case PayloadMode::Numeric: return 0;
    case PayloadMode::Alphanumeric: return 1;
    case PayloadMode::Byte: return 2;
    }
    return 0;
}

int payload_bits(PayloadMode m, int len) {
    switch (m) {
    case PayloadMode::Numeric:
        return 10 * (len / 3) + std::array{0, 4, 7}[len % 3];
    case PayloadMode::Alphanumeric:
        return 11 * (len / 2) + 6 * (len % 2);
    case PayloadMode::Byte:
        return 8 * len;
    }
    return 0;
}

constexpr std::string_view kAlnumChars = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ $%*+-./:";

int alnum_value(char c) {
    auto pos = kAlnumChars.find(c);
    return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

// BCH(15,5) format field: 5 data bits followed by 10 remainder bits,
// XOR-masked with the Micro QR constant.
std::uint32_t micro_format_pattern(int symbol_number, int mask) {
    int data = (symbol_number << 2) | mask;
    int rem = data;
    for (int i = 0; i < 10; ++i)
        rem = (rem << 1) ^ ((rem >> 9) * 0x537);
    return static_cast<std::uint32_t>(((data << 10) | rem) ^ 0x4445);
}

bool is_function_module(int x, int y) { return (x < 9 && y < 9) || x == 0 || y == 0; }

void draw_function_patterns(SymbolMatrix& m) {
    // Finder: concentric 7x7, light ring at Chebyshev distance 2.
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 7; ++x)
            m.set(x, y, std::max(std::abs(x - 3), std::abs(y - 3)) != 2);
    // Timing along row 0 and column 0, alternating from the separator out.
    for (int x = 8; x < m.side; ++x)
        m.set(x, 0, x % 2 == 0);
    for (int y = 8; y < m.side; ++y)
        m.set(0, y, y % 2 == 0);
}

void write_format(SymbolMatrix& m, std::uint32_t pattern) {
    int bit = 14;
    for (int x = 1; x <= 8; ++x)
        m.set(x, 8, ((pattern >> bit--) & 1) != 0);
    for (int y = 7; y >= 1; --y)
        m.set(8, y, ((pattern >> bit--) & 1) != 0);
}

std::uint32_t read_format(const SymbolMatrix& m) {
    std::uint32_t bits = 0;
    for (int x = 1; x <= 8; ++x)
        bits = (bits << 1) | (m.get(x, 8) ? 1u : 0u);
    for (int y = 7; y >= 1; --y)
        bits = (bits << 1) | (m.get(8, y) ? 1u : 0u);
    return bits;
}

bool mask_bit(int mask, int x, int y) {
    switch (mask) {
    case 0: return y % 2 == 0;
    case 1: return (y / 2 + x / 3) % 2 == 0;
    case 2: return (y * x) % 6 < 3;
    case 3: return (y + x + (y * x) % 3) % 2 == 0;
    default: return false;
    }
}

// Zigzag order of data modules: column pairs right to left, alternating
// bottom-up / top-down, right column first within a pair.
std::vector<std::pair<int, int>> data_module_order(int side) {
    std::vector<std::pair<int, int>> order;
    bool up = true;
    for (int x = side - 1; x > 0; x -= 2) {
        for (int r = 0; r < side; ++r) {
            int y = up ? side - 1 - r : r;
            for (int c = 0; c < 2; ++c) {
                int xx = x - c;
                if (!is_function_module(xx, y))
                    order.emplace_back(xx, y);
            }
        }
        up = !up;
    }
    return order;
}

// The 4-bit codeword of M1/M3 symbols is kept high-aligned in its byte
// (value 0xX0): the error correction runs over that byte value and only the
// top four bits are placed in the matrix / fed to the bit stream.
std::vector<bool> codewords_to_bits(const std::vector<std::uint8_t>& cws, const SymbolParams& p) {
    int nibble_idx = has_nibble_codeword(p.version) ? p.data_codewords - 1 : -1;
    std::vector<bool> bits;
    for (std::size_t i = 0; i < cws.size(); ++i) {
        int lowest = (static_cast<int>(i) == nibble_idx) ? 4 : 0;
        for (int b = 7; b >= lowest; --b)
            bits.push_back(((cws[i] >> b) & 1) != 0);
    }
    return bits;
}

// Standard Micro QR mask evaluation: count dark modules along the bottom and
// right edges (excluding the timing module at index 0); higher is better.
int micro_mask_score(const SymbolMatrix& m) {
    int sum_bottom = 0, sum_right = 0;
    for (int x = 1; x < m.side; ++x)
        sum_bottom += m.get(x, m.side - 1) ? 1 : 0;
    for (int y = 1; y < m.side; ++y)
        sum_right += m.get(m.side - 1, y) ? 1 : 0;
    int lo = std::min(sum_bottom, sum_right);
    int hi = std::max(sum_bottom, sum_right);
    return 16 * lo + hi;
}

void validate_alphabet(const Payload& payload) {
    switch (payload.mode) {
    case PayloadMode::Numeric:
        for (char c : payload.data)
            if (c < '0' || c > '9')
                throw Error("encode: non-digit byte in Numeric payload");
        break;
    case PayloadMode::Alphanumeric:
        for (char c : payload.data)
            if (alnum_value(c) < 0)
                throw Error("encode: byte outside the 45-symbol alphabet in Alphanumeric payload");
        break;
    case PayloadMode::Byte:
        break;
    }
}

struct ParsedStream {
    std::string text;
    PayloadMode mode = PayloadMode::Byte;
};

// Parses the data bit stream (mode / count / payload segments until the
// terminator). Returns nullopt on any structural violation.
std::optional<ParsedStream> parse_stream(const std::vector<bool>& bits, MicroQrVersion v) {
    BitReader r(bits);
    const int term = terminator_bits(v);
    const int mode_width = mode_indicator_bits(v);
    std::string text;
    std::optional<PayloadMode> first_mode;

    auto at_end = [&] {
        std::size_t peek_n = std::min(r.available(), static_cast<std::size_t>(term));
        return peek_n == 0 || r.peek(static_cast<int>(peek_n)) == 0;
    };

    while (!at_end()) {
        PayloadMode mode = PayloadMode::Numeric;
        if (mode_width > 0) {
            if (r.available() < static_cast<std::size_t>(mode_width))
                return std::nullopt;
            std::uint32_t mv = r.read(mode_width);
            if (mv > 2)
                return std::nullopt; // Kanji and reserved indicators unsupported
            mode = mv == 0 ? PayloadMode::Numeric
                 : mv == 1 ? PayloadMode::Alphanumeric
                           : PayloadMode::Byte;
        }
        int cb = count_bits(v, mode);
        if (cb < 0 || r.available() < static_cast<std::size_t>(cb))
            return std::nullopt;
        std::uint32_t count = r.read(cb);
        if (count == 0)
            return std::nullopt;

        switch (mode) {
        case PayloadMode::Numeric: {
            std::uint32_t left = count;
            while (left >= 3) {
                if (r.available() < 10) return std::nullopt;
                std::uint32_t g = r.read(10);
                if (g > 999) return std::nullopt;
                text += static_cast<char>('0' + g / 100);
                text += static_cast<char>('0' + (g / 10) % 10);
                text += static_cast<char>('0' + g % 10);
                left -= 3;
            }
            if (left == 2) {
                if (r.available() < 7) return std::nullopt;
                std::uint32_t g = r.read(7);
                if (g > 99) return std::nullopt;
                text += static_cast<char>('0' + g / 10);
                text += static_cast<char>('0' + g % 10);
            } else if (left == 1) {
                if (r.available() < 4) return std::nullopt;
                std::uint32_t g = r.read(4);
                if (g > 9) return std::nullopt;
                text += static_cast<char>('0' + g);
            }
            break;
        }
        case PayloadMode::Alphanumeric: {
            std::uint32_t left = count;
            while (left >= 2) {
                if (r.available() < 11) return std::nullopt;
                std::uint32_t g = r.read(11);
                if (g >= 45 * 45) return std::nullopt;
                text += kAlnumChars[g / 45];
                text += kAlnumChars[g % 45];
                left -= 2;
            }
            if (left == 1) {
                if (r.available() < 6) return std::nullopt;
                std::uint32_t g = r.read(6);
                if (g >= 45) return std::nullopt;
                text += kAlnumChars[g];
            }
            break;
        }
        case PayloadMode::Byte: {
            for (std::uint32_t i = 0; i < count; ++i) {
                if (r.available() < 8) return std::nullopt;
                text += static_cast<char>(r.read(8));
            }
            break;
        }
        }
        if (!first_mode)
            first_mode = mode;
    }

    if (text.empty() || !first_mode)
        return std::nullopt;
    return ParsedStream{std::move(text), *first_mode};
}

} // namespace

const char* to_string(MicroQrVersion v) {
    switch (v) {
    case MicroQrVersion::M1: return "M1";
    case MicroQrVersion::M2: return "M2";
    case MicroQrVersion::M3: return "M3";
    case MicroQrVersion::M4: return "M4";
    }
    return "?";
}

const char* to_string(EcLevel e) {
    switch (e) {
    case EcLevel::DetectOnly: return "detect";
    case EcLevel::L: return "L";
    case EcLevel::M: return "M";
    case EcLevel::Q: return "Q";
    }
    return "?";
}

const char* to_string(PayloadMode m) {
    switch (m) {
    case PayloadMode::Numeric: return "numeric";
    case PayloadMode::Alphanumeric: return "alphanumeric";
    case PayloadMode::Byte: return "byte";
    }
    return "?";
}

const char* to_string(DecodeStatus s) {
    switch (s) {
    case DecodeStatus::Ok: return "ok";
    case DecodeStatus::FormatInfoUnreadable: return "format_info_unreadable";
    case DecodeStatus::UncorrectableCodeword: return "uncorrectable_codeword";
    case DecodeStatus::ChecksumMismatch: return "checksum_mismatch";
    }
    return "?";
}

std::optional<MicroQrVersion> version_from_string(std::string_view s) {
    if (s == "M1" || s == "m1") return MicroQrVersion::M1;
    if (s == "M2" || s == "m2") return MicroQrVersion::M2;
    if (s == "M3" || s == "m3") return MicroQrVersion::M3;
    if (s == "M4" || s == "m4") return MicroQrVersion::M4;
    return std::nullopt;
}

std::optional<EcLevel> ec_from_string(std::string_view s) {
    if (s == "detect" || s == "D" || s == "d") return EcLevel::DetectOnly;
    if (s == "L" || s == "l") return EcLevel::L;
    if (s == "M" || s == "m") return EcLevel::M;
    if (s == "Q" || s == "q") return EcLevel::Q;
    return std::nullopt;
}

PayloadMode narrowest_mode(std::string_view text) {
    bool numeric = !text.empty(), alnum = !text.empty();
    for (char c : text) {
        numeric = numeric && c >= '0' && c <= '9';
        alnum = alnum && alnum_value(c) >= 0;
    }
    if (numeric) return PayloadMode::Numeric;
    if (alnum) return PayloadMode::Alphanumeric;
    return PayloadMode::Byte;
}

bool ec_valid_for(MicroQrVersion v, EcLevel e) { return find_params(v, e) != nullptr; }

int data_bit_capacity(MicroQrVersion v, EcLevel e) {
    const SymbolParams* p = find_params(v, e);
    if (!p)
        throw InvalidCombination("data_bit_capacity: ec level not defined for version");
    return 8 * p->data_codewords - (has_nibble_codeword(v) ? 4 : 0);
}

int char_capacity(MicroQrVersion v, EcLevel e, PayloadMode m) {
    int cb = count_bits(v, m);
    if (cb < 0)
        return 0;
    int budget = data_bit_capacity(v, e) - mode_indicator_bits(v) - cb;
    int max_count = (1 << cb) - 1;
    int len = 0;
    while (len < max_count && payload_bits(m, len + 1) <= budget)
        ++len;
    return len;
}

int error_correction_capacity(MicroQrVersion v, EcLevel e) {
    const SymbolParams* p = find_params(v, e);
    if (!p)
        throw InvalidCombination("error_correction_capacity: ec level not defined for version");
    return p->correctable;
}

int data_codeword_count(MicroQrVersion v, EcLevel e) {
    const SymbolParams* p = find_params(v, e);
    if (!p)
        throw InvalidCombination("data_codeword_count: ec level not defined for version");
    return p->data_codewords;
}

int ec_codeword_count(MicroQrVersion v, EcLevel e) {
    const SymbolParams* p = find_params(v, e);
    if (!p)
        throw InvalidCombination("ec_codeword_count: ec level not defined for version");
    return p->ec_codewords;
}

std::vector<std::uint8_t> encode_codewords(const Payload& payload, MicroQrVersion version, EcLevel ec) {
    const SymbolParams* p = find_params(version, ec);
    if (!p)
        throw InvalidCombination("encode: ec level not defined for version");
    if (payload.data.empty())
        throw Error("encode: empty payload");
    validate_alphabet(payload);

    int cb = count_bits(version, payload.mode);
    if (cb < 0)
        throw InvalidCombination("encode: mode not available for version");
    const int len = static_cast<int>(payload.data.size());
    if (len > (1 << cb) - 1 || payload_bits(payload.mode, len) + mode_indicator_bits(version) + cb >
                                   data_bit_capacity(version, ec))
        throw CapacityExceeded("encode: payload exceeds symbol capacity");

    const int data_bits = data_bit_capacity(version, ec);
    BitWriter w;
    if (mode_indicator_bits(version) > 0)
        w.append(static_cast<std::uint32_t>(mode_indicator_value(payload.mode)),
                 mode_indicator_bits(version));
    w.append(static_cast<std::uint32_t>(len), cb);

    switch (payload.mode) {
    case PayloadMode::Numeric: {
        int i = 0;
        for (; i + 3 <= len; i += 3) {
            int g = (payload.data[i] - '0') * 100 + (payload.data[i + 1] - '0') * 10 +
                    (payload.data[i + 2] - '0');
            w.append(static_cast<std::uint32_t>(g), 10);
        }
        if (len - i == 2)
            w.append(static_cast<std::uint32_t>((payload.data[i] - '0') * 10 + (payload.data[i + 1] - '0')), 7);
        else if (len - i == 1)
            w.append(static_cast<std::uint32_t>(payload.data[i] - '0'), 4);
        break;
    }
    case PayloadMode::Alphanumeric: {
        int i = 0;
        for (; i + 2 <= len; i += 2)
            w.append(static_cast<std::uint32_t>(alnum_value(payload.data[i]) * 45 +
                                                alnum_value(payload.data[i + 1])),
                     11);
        if (i < len)
            w.append(static_cast<std::uint32_t>(alnum_value(payload.data[i])), 6);
        break;
    }
    case PayloadMode::Byte:
        for (char c : payload.data)
            w.append(static_cast<std::uint8_t>(c), 8);
        break;
    }

    // Terminator, shortened when little room remains.
    int term = std::min<int>(terminator_bits(version), data_bits - static_cast<int>(w.size()));
    w.append(0, term);
    // Zero-fill to the next codeword boundary, then alternate pad codewords;
    // a leftover 4-bit tail (M1/M3) pads as 0000.
    while (w.size() < static_cast<std::size_t>(data_bits) && w.size() % 8 != 0)
        w.append_bit(false);
    bool alt = false;
    while (w.size() < static_cast<std::size_t>(data_bits)) {
        int rem = data_bits - static_cast<int>(w.size());
        if (rem >= 8) {
            w.append(alt ? 0x11u : 0xECu, 8);
            alt = !alt;
        } else {
            w.append(0, rem);
        }
    }

    // Slice the stream into codewords; M1/M3 end with a 4-bit codeword that
    // stays high-aligned in its byte.
    const std::vector<bool>& bits = w.bits();
    std::vector<std::uint8_t> cws;
    cws.reserve(static_cast<std::size_t>(p->data_codewords));
    int pos = 0;
    for (int i = 0; i < p->data_codewords; ++i) {
        bool nibble = has_nibble_codeword(version) && i == p->data_codewords - 1;
        std::uint8_t v = 0;
        for (int b = 0; b < (nibble ? 4 : 8); ++b)
            v = static_cast<std::uint8_t>((v << 1) | (bits[pos++] ? 1 : 0));
        cws.push_back(nibble ? static_cast<std::uint8_t>(v << 4) : v);
    }
    return cws;
}

SymbolMatrix assemble_symbol(const std::vector<std::uint8_t>& codewords, MicroQrVersion version,
                             EcLevel ec, int mask) {
    const SymbolParams* p = find_params(version, ec);
    if (!p)
        throw InvalidCombination("assemble_symbol: ec level not defined for version");
    if (mask < 0 || mask > 3)
        throw Error("assemble_symbol: mask must be in 0..3");
    if (static_cast<int>(codewords.size()) != p->data_codewords + p->ec_codewords)
        throw Error("assemble_symbol: wrong codeword count");

    SymbolMatrix m(side_modules(version));
    draw_function_patterns(m);

    std::vector<bool> bits = codewords_to_bits(codewords, *p);
    auto order = data_module_order(m.side);
    assert(bits.size() == order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [x, y] = order[i];
        m.set(x, y, bits[i] != mask_bit(mask, x, y));
    }

    write_format(m, micro_format_pattern(p->symbol_number, mask));
    return m;
}

SymbolMatrix encode(const Payload& payload, MicroQrVersion version, EcLevel ec,
                    std::optional<int> mask) {
    const SymbolParams* p = find_params(version, ec);
    if (!p)
        throw InvalidCombination("encode: ec level not defined for version");
    if (mask && (*mask < 0 || *mask > 3))
        throw Error("encode: mask must be in 0..3");

    std::vector<std::uint8_t> cws = encode_codewords(payload, version, ec);
    std::vector<std::uint8_t> parity =
        gf256::rs_encode(std::span<const std::uint8_t>(cws.data(), cws.size()), p->ec_codewords);
    cws.insert(cws.end(), parity.begin(), parity.end());

    if (mask)
        return assemble_symbol(cws, version, ec, *mask);

    SymbolMatrix best;
    int best_score = -1;
    for (int m = 0; m < 4; ++m) {
        SymbolMatrix candidate = assemble_symbol(cws, version, ec, m);
        int score = micro_mask_score(candidate);
        if (score > best_score) {
            best_score = score;
            best = std::move(candidate);
        }
    }
    return best;
}

DecodeResult try_decode(const SymbolMatrix& symbol) {
    if (symbol.side != 11 && symbol.side != 13 && symbol.side != 15 && symbol.side != 17)
        throw Error("try_decode: side must be 11, 13, 15 or 17");
    if (symbol.modules.size() != static_cast<std::size_t>(symbol.side) * symbol.side)
        throw Error("try_decode: module grid size mismatch");

    // Format info: nearest of the 32 valid patterns within 3 bit flips.
    std::uint32_t observed = read_format(symbol);
    int best_sym = -1, best_mask = -1, best_dist = 4;
    for (int sym = 0; sym < 8; ++sym) {
        for (int mask = 0; mask < 4; ++mask) {
            std::uint32_t pat = micro_format_pattern(sym, mask);
            int dist = std::popcount(observed ^ pat);
            if (dist < best_dist) {
                best_dist = dist;
                best_sym = sym;
                best_mask = mask;
            }
        }
    }
    if (best_sym < 0)
        return {DecodeStatus::FormatInfoUnreadable, std::nullopt};

    const SymbolParams& p = params_for_symbol_number(best_sym);
    if (side_modules(p.version) != symbol.side)
        return {DecodeStatus::FormatInfoUnreadable, std::nullopt};

    // Unmask and collect codewords along the placement order.
    auto order = data_module_order(symbol.side);
    int nibble_idx = has_nibble_codeword(p.version) ? p.data_codewords - 1 : -1;
    std::vector<std::uint8_t> cws;
    cws.reserve(static_cast<std::size_t>(p.data_codewords + p.ec_codewords));
    std::uint8_t cur = 0;
    int bits_read = 0;
    for (auto [x, y] : order) {
        bool bit = symbol.get(x, y) != mask_bit(best_mask, x, y);
        cur = static_cast<std::uint8_t>((cur << 1) | (bit ? 1 : 0));
        ++bits_read;
        if (bits_read == 8) {
            cws.push_back(cur);
            cur = 0;
            bits_read = 0;
        } else if (bits_read == 4 && static_cast<int>(cws.size()) == nibble_idx) {
            cws.push_back(static_cast<std::uint8_t>(cur << 4)); // high-aligned 4-bit codeword
            cur = 0;
            bits_read = 0;
        }
    }
    if (static_cast<int>(cws.size()) != p.data_codewords + p.ec_codewords)
        return {DecodeStatus::ChecksumMismatch, std::nullopt};

    std::vector<std::uint8_t> data;
    int corrected = 0;
    if (p.ec == EcLevel::DetectOnly) {
        if (!gf256::rs_check(cws, p.ec_codewords))
            return {DecodeStatus::ChecksumMismatch, std::nullopt};
        data.assign(cws.begin(), cws.begin() + p.data_codewords);
    } else {
        try {
            gf256::RsDecoded dec = gf256::rs_decode(cws, p.ec_codewords);
            data = std::move(dec.data);
            corrected = dec.corrected;
        } catch (const TooManyErrors&) {
            return {DecodeStatus::UncorrectableCodeword, std::nullopt};
        }
        if (corrected > p.correctable)
            return {DecodeStatus::UncorrectableCodeword, std::nullopt};
    }

    std::vector<bool> bits;
    for (std::size_t i = 0; i < data.size(); ++i) {
        int lowest = (static_cast<int>(i) == nibble_idx) ? 4 : 0;
        for (int b = 7; b >= lowest; --b)
            bits.push_back(((data[i] >> b) & 1) != 0);
    }
    std::optional<ParsedStream> parsed = parse_stream(bits, p.version);
    if (!parsed)
        return {DecodeStatus::ChecksumMismatch, std::nullopt};

    DecodedPayload out;
    out.text = std::move(parsed->text);
    out.mode = parsed->mode;
    out.version = p.version;
    out.ec = p.ec;
    out.mask = best_mask;
    out.corrected_errors = corrected;
    return {DecodeStatus::Ok, std::move(out)};
}

DecodedPayload decode(const SymbolMatrix& symbol) {
    DecodeResult r = try_decode(symbol);
    if (r.status != DecodeStatus::Ok)
        throw Error(std::string("decode: ") + to_string(r.status));
    return *r.payload;
}

std::string symbol_to_text(const SymbolMatrix& symbol) {
    std::ostringstream out;
    out << symbol.side << '\n';
    for (int y = 0; y < symbol.side; ++y) {
        for (int x = 0; x < symbol.side; ++x)
            out << (symbol.get(x, y) ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

SymbolMatrix symbol_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    int side = 0;
    if (!(in >> side) || side < 1)
        throw ParseError("symbol_from_text: bad side");
    SymbolMatrix m(side);
    std::string row;
    for (int y = 0; y < side; ++y) {
        if (!(in >> row) || static_cast<int>(row.size()) != side)
            throw ParseError("symbol_from_text: bad row");
        for (int x = 0; x < side; ++x) {
            if (row[x] != '0' && row[x] != '1')
                throw ParseError("symbol_from_text: bad character");
            m.set(x, y, row[x] == '1');
        }
    }
    return m;
}

} // namespace qrsl
