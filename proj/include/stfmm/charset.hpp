// Alphabets, window-size derivation, and the character <-> (position,
// remainder) bijection used by the codec.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stfmm/errors.hpp"

namespace stfmm {

// Contiguous alphabet of byte codes. `size` is the n that drives the window
// size and index arithmetic; `space_sentinel` marks the letters-only mode
// where a space travels as remainder 4 instead of an alphabet index.
struct Charset {
    std::string_view name;
    int start_code = 0;
    int size = 0;
    bool space_sentinel = false;

    bool contains(int code) const noexcept {
        return code >= start_code && code < start_code + size;
    }
};

inline constexpr Charset printable95{"printable95", 32, 95, false};
inline constexpr Charset lower26{"lower26", 'a', 26, true};
inline constexpr Charset ascii128{"ascii128", 0, 128, false};
inline constexpr Charset ascii256{"ascii256", 0, 256, false};

inline constexpr std::array<Charset, 4> builtin_charsets{printable95, lower26, ascii128,
                                                         ascii256};

inline const Charset& charset_by_name(std::string_view name) {
    for (const Charset& cs : builtin_charsets)
        if (cs.name == name) return cs;
    throw std::invalid_argument("unknown charset \"" + std::string(name) +
                                "\" (expected printable95, lower26, ascii128 or ascii256)");
}

// Smallest window edge k with 4*k*k >= n, i.e. ceil(sqrt(n/4)).
inline int window_size_for(int n) {
    if (n < 1) throw std::invalid_argument("alphabet size must be positive");
    int k = 1;
    while (4 * k * k < n) ++k;
    return k;
}

// Marker returned by char_to_index for the sentinel space; never a real
// alphabet index (those start at 1).
inline constexpr int space_sentinel_index = 0;

// 1-based alphabet index of `code`. Sentinel charsets map the space to
// space_sentinel_index and fold uppercase letters to lowercase first.
inline int char_to_index(int code, const Charset& cs) {
    if (cs.space_sentinel) {
        if (code == ' ') return space_sentinel_index;
        if (code >= 'A' && code <= 'Z') code += 'a' - 'A';
    }
    if (!cs.contains(code)) throw UnsupportedCharacterError(code);
    return code - (cs.start_code - 1);
}

// Intra-window slot of one hidden character: the 1-based column-wise pixel
// position plus the residue "loop" selecting which k^2-wide band of the
// alphabet that position indexes.
struct IndexEncoding {
    int position = 0;   // in [1, k^2]
    int remainder = 0;  // in {1, 2, 3, 4}

    bool operator==(const IndexEncoding&) const = default;
};

// Splits a 1-based alphabet index into its window slot. Inverse of
// decode_index for every index in [1, 4k^2].
inline IndexEncoding encode_index(int index, int k) {
    if (k < 1) throw std::invalid_argument("window edge must be positive");
    const int span = k * k;
    if (index < 1 || index > 4 * span)
        throw std::invalid_argument("alphabet index " + std::to_string(index) +
                                    " outside window capacity " + std::to_string(4 * span));
    return {(index - 1) % span + 1, (index - 1) / span + 1};
}

// Character code = position + (remainder - 1) * k^2, shifted to the charset
// start. Sentinel charsets decode remainder 4 as a space regardless of
// position.
inline int decode_index(const IndexEncoding& e, int k, const Charset& cs) {
    if (k < 1) throw std::invalid_argument("window edge must be positive");
    const int span = k * k;
    if (e.position < 1 || e.position > span || e.remainder < 1 || e.remainder > 4)
        throw CorruptEncodingError("slot (position " + std::to_string(e.position) +
                                   ", remainder " + std::to_string(e.remainder) +
                                   ") out of range for window edge " + std::to_string(k));
    if (cs.space_sentinel && e.remainder == 4) return ' ';
    const int index = e.position + (e.remainder - 1) * span;
    if (index > cs.size)
        throw CorruptEncodingError("decoded index " + std::to_string(index) +
                                   " exceeds alphabet size " + std::to_string(cs.size));
    return index + (cs.start_code - 1);
}

// Deterministic filler text for capacity sweeps: repeats a pangram that
// stays inside the charset, truncated to the requested byte count.
inline std::string pangram_payload(std::size_t size, const Charset& cs) {
    const std::string_view base = cs.space_sentinel
                                      ? "the quick brown fox jumps over the lazy dog "
                                      : "The quick brown fox jumps over the lazy dog 0123456789. ";
    std::string out;
    out.reserve(size);
    while (out.size() < size) out += base.substr(0, std::min(base.size(), size - out.size()));
    return out;
}

} // namespace stfmm
