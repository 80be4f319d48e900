#pragma once

#include <filesystem>
#include <string>

#include "chaocipher/cipher.hpp"

namespace chaocipher {

/// Parse a key from flat JSON text:
///   {"x0": "...", "y0": "...", "a1": "...", "a2": "...", "a3": "...",
///    "a4": "...", "c0": 113}
/// The six reals are decimal strings parsed at full binary64 precision
/// (round-to-nearest); plain JSON numbers are accepted too. c0 must be an
/// integer in [0, 255] (number or decimal string). Throws KeyError on any
/// missing field, wrong type, non-finite real, or out-of-range c0.
CipherKey parse_key(const std::string& json_text);

/// Load and parse a key file. Throws KeyError (also for unreadable files).
CipherKey load_key(const std::filesystem::path& path);

/// Serialize with decimal-string reals carrying full binary64 precision, so
/// save/load round-trips bit-exactly.
std::string format_key(const CipherKey& key);

/// Write format_key(key) to a file. Throws KeyError if unwritable.
void save_key(const CipherKey& key, const std::filesystem::path& path);

}  // namespace chaocipher
