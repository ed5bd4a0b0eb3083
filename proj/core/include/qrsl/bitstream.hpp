#pragma once

#include <cstdint>
#include <vector>

namespace qrsl {

/// Append-only MSB-first bit buffer.
class BitWriter {
public:
    void append(std::uint32_t value, int bit_count) {
        for (int i = bit_count - 1; i >= 0; --i)
            bits_.push_back(((value >> i) & 1u) != 0);
    }

    void append_bit(bool bit) { bits_.push_back(bit); }

    std::size_t size() const { return bits_.size(); }
    const std::vector<bool>& bits() const { return bits_; }

private:
    std::vector<bool> bits_;
};

/// MSB-first reader over a bit sequence.
class BitReader {
public:
    explicit BitReader(const std::vector<bool>& bits) : bits_(bits) {}

    std::size_t available() const { return bits_.size() - pos_; }

    std::uint32_t read(int bit_count) {
        std::uint32_t v = 0;
        for (int i = 0; i < bit_count; ++i)
            v = (v << 1) | (bits_[pos_++] ? 1u : 0u);
        return v;
    }

    /// Reads up to bit_count bits without consuming them.
    std::uint32_t peek(int bit_count) const {
        std::uint32_t v = 0;
        for (int i = 0; i < bit_count; ++i)
            v = (v << 1) | (bits_[pos_ + i] ? 1u : 0u);
        return v;
    }

private:
    const std::vector<bool>& bits_;
    std::size_t pos_ = 0;
};

} // namespace qrsl
