#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qrsl::gf256 {

/// Arithmetic over GF(2^8) with reduction polynomial x^8+x^4+x^3+x^2+1
/// (0x11D) and generator element 2, as used by QR error correction.
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t inv(std::uint8_t a);
std::uint8_t pow_of_2(int exponent); // alpha^exponent, exponent may exceed 255

/// Reed-Solomon parity for a data block. Returns parity_len parity bytes;
/// the full codeword is data followed by parity.
std::vector<std::uint8_t> rs_encode(std::span<const std::uint8_t> data, int parity_len);

struct RsDecoded {
    std::vector<std::uint8_t> data; // corrected data bytes (codeword minus parity)
    int corrected = 0;              // number of byte errors repaired
};

/// Corrects up to floor(parity_len/2) byte errors in a codeword produced by
/// rs_encode. Throws TooManyErrors when the error pattern is beyond that
/// capacity (detection is probabilistic but overwhelmingly reliable).
RsDecoded rs_decode(std::span<const std::uint8_t> codeword, int parity_len);

/// Syndrome check only: true iff the codeword is a valid RS codeword.
bool rs_check(std::span<const std::uint8_t> codeword, int parity_len);

} // namespace qrsl::gf256
