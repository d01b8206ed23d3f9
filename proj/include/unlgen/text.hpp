#ifndef UNLGEN_TEXT_HPP
#define UNLGEN_TEXT_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace unlgen::text {

/// Decodes UTF-8 into Unicode scalar values. Invalid sequences decode to
/// U+FFFD, one replacement per bogus byte.
std::u32string decode_utf8(std::string_view s);

std::string encode_utf8(std::u32string_view s);

/// Number of Unicode scalar values in a UTF-8 string. Affix strip counts and
/// the apply_affix length law are defined over this measure.
std::size_t scalar_count(std::string_view s);

/// Canonical composition (NFC). Backed by ICU.
std::string nfc(std::string_view s);

/// Collapses runs of ASCII whitespace to a single space and trims both ends.
std::string collapse_spaces(std::string_view s);

/// Splits on whitespace runs, dropping empties.
std::vector<std::string> split_whitespace(std::string_view s);

/// Strips a leading UTF-8 BOM if present.
std::string_view strip_bom(std::string_view s);

/// Slurps a file as UTF-8 text, BOM stripped. Throws std::runtime_error on
/// I/O failure.
std::string read_text_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace unlgen::text

#endif
