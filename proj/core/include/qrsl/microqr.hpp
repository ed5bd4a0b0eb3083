#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qrsl {

/// Micro QR symbol versions M1..M4 (sides 11, 13, 15, 17 modules).
enum class MicroQrVersion { M1 = 1, M2 = 2, M3 = 3, M4 = 4 };

/// Error correction levels. DetectOnly is valid only for M1 (its two parity
/// codewords detect errors but correct none); Q is valid only for M4.
enum class EcLevel { DetectOnly, L, M, Q };

enum class PayloadMode { Numeric, Alphanumeric, Byte };

constexpr int side_modules(MicroQrVersion v) { return 9 + 2 * static_cast<int>(v); }

const char* to_string(MicroQrVersion v);
const char* to_string(EcLevel e);
const char* to_string(PayloadMode m);

std::optional<MicroQrVersion> version_from_string(std::string_view s);
std::optional<EcLevel> ec_from_string(std::string_view s);

/// Message content plus the encoding mode it should use. Numeric accepts
/// digits only; Alphanumeric the 45-symbol QR alphabet; Byte any bytes
/// (ISO-8859-1 semantics, passed through opaquely).
struct Payload {
    PayloadMode mode = PayloadMode::Byte;
    std::string data;
};

/// Picks the densest mode able to represent the text.
PayloadMode narrowest_mode(std::string_view text);

/// Square module grid, row-major, true = dark.
struct SymbolMatrix {
    int side = 0;
    std::vector<bool> modules;

    SymbolMatrix() = default;
    explicit SymbolMatrix(int side_) : side(side_), modules(static_cast<std::size_t>(side_) * side_) {}

    bool get(int x, int y) const { return modules[static_cast<std::size_t>(y) * side + x]; }
    void set(int x, int y, bool dark) { modules[static_cast<std::size_t>(y) * side + x] = dark; }

    bool operator==(const SymbolMatrix&) const = default;
};

struct DecodedPayload {
    std::string text;
    PayloadMode mode = PayloadMode::Byte;
    MicroQrVersion version = MicroQrVersion::M2;
    EcLevel ec = EcLevel::L;
    int mask = 0;
    int corrected_errors = 0;
};

/// Decode failure causes, kept distinguishable so callers can count them.
/// FormatInfoUnreadable: format field beyond BCH repair or inconsistent with
/// the matrix size. UncorrectableCodeword: Reed-Solomon failure or more
/// repairs than the (version, ec) capacity allows. ChecksumMismatch: M1
/// parity check failed, or the corrected bit stream does not parse as a
/// valid message.
enum class DecodeStatus { Ok, FormatInfoUnreadable, UncorrectableCodeword, ChecksumMismatch };

const char* to_string(DecodeStatus s);

struct DecodeResult {
    DecodeStatus status = DecodeStatus::ChecksumMismatch;
    std::optional<DecodedPayload> payload; // set iff status == Ok
};

/// True iff the error correction level is defined for the version.
bool ec_valid_for(MicroQrVersion v, EcLevel e);

/// Data capacity in bits for a (version, ec) pair.
int data_bit_capacity(MicroQrVersion v, EcLevel e);

/// Character capacity for a mode, or 0 when the mode does not exist for the
/// version (e.g. Byte in M1/M2).
int char_capacity(MicroQrVersion v, EcLevel e, PayloadMode m);

/// Number of codeword byte errors the symbology corrects (ISO 18004 Table 9;
/// less than floor(parity/2) where parity bytes are reserved for misdecode
/// protection). Zero for M1.
int error_correction_capacity(MicroQrVersion v, EcLevel e);

int data_codeword_count(MicroQrVersion v, EcLevel e);
int ec_codeword_count(MicroQrVersion v, EcLevel e);

/// Builds a standard-conformant symbol. When mask is absent the four data
/// masks are scored per the standard's Micro QR evaluation and the best
/// (ties: lowest index) is chosen. Deterministic for fixed inputs.
/// Throws InvalidCombination for an (ec, version) or (mode, version) pair the
/// standard does not define, CapacityExceeded when the payload does not fit,
/// Error on characters invalid for the mode.
SymbolMatrix encode(const Payload& payload, MicroQrVersion version, EcLevel ec,
                    std::optional<int> mask = std::nullopt);

/// Module-grid decoder. Returns the payload iff format info and
/// Reed-Solomon decoding succeed within correction capacity.
DecodeResult try_decode(const SymbolMatrix& symbol);

/// Throwing wrapper around try_decode.
DecodedPayload decode(const SymbolMatrix& symbol);

/// Symbol exchange format: first line the side, then side lines of '0'/'1'
/// (dark = 1).
std::string symbol_to_text(const SymbolMatrix& symbol);
SymbolMatrix symbol_from_text(std::string_view text);

/// Data codewords as placed in the symbol (exposed for corruption tests:
/// flip bytes, rebuild, decode). The final codeword of M1/M3 symbols is four
/// bits long, kept high-aligned in its byte (0xX0).
std::vector<std::uint8_t> encode_codewords(const Payload& payload, MicroQrVersion version, EcLevel ec);

/// Builds a symbol from a full codeword sequence (data + parity), applying
/// the given mask. Used by corruption tests to inject byte errors.
SymbolMatrix assemble_symbol(const std::vector<std::uint8_t>& codewords, MicroQrVersion version,
                             EcLevel ec, int mask);

} // namespace qrsl
