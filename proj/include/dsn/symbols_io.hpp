#pragma once

#include <string>
#include <vector>

#include "dsn/codec.hpp"

namespace dsn {

/// One byte per symbol for theta <= 8, two bytes little-endian above.
std::string pack_symbols(const FieldContext& field, const std::vector<std::vector<Symbol>>& blocks);
/// Splits a packed file into blocks of the given lengths; throws format on size mismatch or
/// out-of-field symbols.
std::vector<std::vector<Symbol>> unpack_symbols(const FieldContext& field, const std::string& bytes,
                                                const std::vector<std::size_t>& lengths);

std::vector<std::size_t> message_lengths(const CodeInstance& code);
std::vector<std::size_t> codeword_lengths(const CodeInstance& code);

/// {"<node-id>": [1-based coordinates]}; nodes without erasures are omitted.
std::string pattern_to_json(const ErasurePattern& pattern);
ErasurePattern pattern_from_json(const CodeInstance& code, const std::string& text);

}  // namespace dsn
