// Exception types shared across the toolkit.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stfmm {

namespace detail {

inline std::string describe_character(int code) {
    std::string s = "code " + std::to_string(code);
    if (code >= 32 && code < 127) {
        s += " ('";
        s += static_cast<char>(code);
        s += "')";
    }
    return s;
}

} // namespace detail

// Base of every recoverable toolkit error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written.
struct IoError : Error {
    using Error::Error;
};

// Malformed or unsupported image file contents.
struct FormatError : Error {
    using Error::Error;
};

// Metric fed two images of different sizes.
struct DimensionMismatchError : Error {
    using Error::Error;
};

// Message longer than the cover can hold.
struct CapacityError : Error {
    using Error::Error;
};

// Message byte outside the selected alphabet.
class UnsupportedCharacterError : public Error {
public:
    static constexpr std::size_t no_offset = static_cast<std::size_t>(-1);

    explicit UnsupportedCharacterError(int character, std::size_t offset = no_offset)
        : Error(make_message(character, offset)), character_(character), offset_(offset) {}

    int character() const noexcept { return character_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    static std::string make_message(int character, std::size_t offset) {
        std::string m = "unsupported character " + detail::describe_character(character);
        if (offset != no_offset) m += " at offset " + std::to_string(offset);
        return m;
    }

    int character_;
    std::size_t offset_;
};

// A (position, remainder) pair that does not name any alphabet entry.
struct CorruptEncodingError : Error {
    using Error::Error;
};

// A stego window that cannot carry a valid character. Coordinates are
// 0-based window-grid row and column.
class CorruptWindowError : public Error {
public:
    CorruptWindowError(int row, int col, const std::string& reason)
        : Error("corrupt window (row " + std::to_string(row) + ", col " + std::to_string(col) +
                "): " + reason),
          row_(row),
          col_(col) {}

    int row() const noexcept { return row_; }
    int col() const noexcept { return col_; }

private:
    int row_;
    int col_;
};

} // namespace stfmm
