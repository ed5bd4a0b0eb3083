#include "qrsl/gf256.hpp"

#include "qrsl/error.hpp"

#include <array>

namespace qrsl::gf256 {
namespace {

struct Tables {
    std::array<std::uint8_t, 256> log{};
    std::array<std::uint8_t, 512> exp{};

    Tables() {
        int x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[i] = static_cast<std::uint8_t>(x);
            log[x] = static_cast<std::uint8_t>(i);
            x <<= 1;
            if (x & 0x100)
                x ^= 0x11D;
        }
        for (int i = 255; i < 512; ++i)
            exp[i] = exp[i - 255];
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

} // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0)
        return 0;
    const Tables& t = tables();
    return t.exp[t.log[a] + t.log[b]];
}

std::uint8_t inv(std::uint8_t a) {
    if (a == 0)
        throw Error("gf256: inverse of zero");
    const Tables& t = tables();
    return t.exp[255 - t.log[a]];
}

std::uint8_t pow_of_2(int exponent) {
    int e = exponent % 255;
    if (e < 0)
        e += 255;
    return tables().exp[e];
}

std::vector<std::uint8_t> rs_encode(std::span<const std::uint8_t> data, int parity_len) {
    if (parity_len < 1)
        throw Error("rs_encode: parity_len must be >= 1");
    if (data.size() + static_cast<std::size_t>(parity_len) > 255)
        throw Error("rs_encode: codeword longer than 255");

    // Generator polynomial (x - a^0)(x - a^1)...(x - a^{p-1}), monic,
    // stored without the leading coefficient, descending powers.
    std::vector<std::uint8_t> gen(parity_len, 0);
    gen[parity_len - 1] = 1;
    std::uint8_t root = 1;
    for (int i = 0; i < parity_len; ++i) {
        for (std::size_t j = 0; j < gen.size(); ++j) {
            gen[j] = mul(gen[j], root);
            if (j + 1 < gen.size())
                gen[j] ^= gen[j + 1];
        }
        root = mul(root, 2);
    }

    // Polynomial remainder of data * x^p by the generator.
    std::vector<std::uint8_t> rem(parity_len, 0);
    for (std::uint8_t b : data) {
        std::uint8_t factor = b ^ rem[0];
        rem.erase(rem.begin());
        rem.push_back(0);
        for (std::size_t j = 0; j < rem.size(); ++j)
            rem[j] ^= mul(gen[j], factor);
    }
    return rem;
}

namespace {

// Syndome S_j = C(alpha^j); codeword[0] is the highest-degree coefficient.
std::vector<std::uint8_t> syndromes(std::span<const std::uint8_t> cw, int parity_len) {
    std::vector<std::uint8_t> syn(parity_len, 0);
    for (int j = 0; j < parity_len; ++j) {
        std::uint8_t a = pow_of_2(j);
        std::uint8_t acc = 0;
        for (std::uint8_t c : cw)
            acc = static_cast<std::uint8_t>(mul(acc, a) ^ c);
        syn[j] = acc;
    }
    return syn;
}

// Polynomial coefficients in ascending powers for the decoder helpers below.
std::uint8_t poly_eval(const std::vector<std::uint8_t>& p, std::uint8_t x) {
    std::uint8_t acc = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        acc = static_cast<std::uint8_t>(mul(acc, x) ^ p[i]);
    return acc;
}

} // namespace

bool rs_check(std::span<const std::uint8_t> codeword, int parity_len) {
    for (std::uint8_t s : syndromes(codeword, parity_len))
        if (s != 0)
            return false;
    return true;
}

RsDecoded rs_decode(std::span<const std::uint8_t> codeword, int parity_len) {
    const int n = static_cast<int>(codeword.size());
    if (parity_len < 1 || n <= parity_len || n > 255)
        throw Error("rs_decode: bad codeword/parity length");

    std::vector<std::uint8_t> cw(codeword.begin(), codeword.end());
    std::vector<std::uint8_t> syn = syndromes(cw, parity_len);

    bool clean = true;
    for (std::uint8_t s : syn)
        clean = clean && s == 0;
    if (clean)
        return {std::vector<std::uint8_t>(cw.begin(), cw.end() - parity_len), 0};

    // Berlekamp-Massey: error locator lambda(x), ascending powers, lambda[0]=1.
    std::vector<std::uint8_t> lambda{1}, prev{1};
    int L = 0, m = 1;
    std::uint8_t b = 1;
    for (int i = 0; i < parity_len; ++i) {
        std::uint8_t delta = syn[i];
        for (int j = 1; j <= L; ++j)
            if (j < static_cast<int>(lambda.size()))
                delta ^= mul(lambda[j], syn[i - j]);
        if (delta == 0) {
            ++m;
            continue;
        }
        std::vector<std::uint8_t> t = lambda;
        std::uint8_t coef = mul(delta, inv(b));
        if (lambda.size() < prev.size() + m)
            lambda.resize(prev.size() + m, 0);
        for (std::size_t j = 0; j < prev.size(); ++j)
            lambda[j + m] ^= mul(coef, prev[j]);
        if (2 * L <= i) {
            L = i + 1 - L;
            prev = std::move(t);
            b = delta;
            m = 1;
        } else {
            ++m;
        }
    }

    const int max_correctable = parity_len / 2;
    if (L > max_correctable)
        throw TooManyErrors("rs_decode: error count exceeds correction capacity");

    // Chien search over codeword positions; position c has degree n-1-c.
    std::vector<int> error_pos;
    for (int c = 0; c < n; ++c) {
        std::uint8_t x_inv = pow_of_2(-(n - 1 - c));
        if (poly_eval(lambda, x_inv) == 0)
            error_pos.push_back(c);
    }
    if (static_cast<int>(error_pos.size()) != L)
        throw TooManyErrors("rs_decode: error locator has wrong root count");

    // Forney: omega(x) = syn(x) * lambda(x) mod x^parity_len.
    std::vector<std::uint8_t> omega(parity_len, 0);
    for (int i = 0; i < parity_len; ++i) {
        for (std::size_t j = 0; j < lambda.size() && j <= static_cast<std::size_t>(i); ++j)
            omega[i] ^= mul(lambda[j], syn[i - j]);
    }
    for (int c : error_pos) {
        std::uint8_t x = pow_of_2(n - 1 - c);
        std::uint8_t x_inv = inv(x);
        std::uint8_t num = poly_eval(omega, x_inv);
        // lambda'(x) keeps only odd-power terms over GF(2^m):
        // d/dx lambda_j x^j = j lambda_j x^{j-1}, and j mod 2 is the scalar.
        std::uint8_t den = 0;
        for (std::size_t j = 1; j < lambda.size(); j += 2) {
            std::uint8_t xp = 1;
            for (std::size_t k = 0; k + 1 < j; ++k)
                xp = mul(xp, x_inv);
            den ^= mul(lambda[j], xp);
        }
        if (den == 0)
            throw TooManyErrors("rs_decode: Forney denominator vanished");
        std::uint8_t magnitude = mul(x, mul(num, inv(den)));
        cw[c] ^= magnitude;
    }

    if (!rs_check(cw, parity_len))
        throw TooManyErrors("rs_decode: correction failed verification");

    return {std::vector<std::uint8_t>(cw.begin(), cw.end() - parity_len), L};
}

} // namespace qrsl::gf256
