#include "dsn/symbols_io.hpp"

#include <json.hpp>

namespace dsn {

std::string pack_symbols(const FieldContext& field, const std::vector<std::vector<Symbol>>& blocks) {
  const bool wide = field.theta() > 8;
  std::string out;
  for (const auto& blk : blocks)
    for (Symbol s : blk) {
      out.push_back(static_cast<char>(s & 0xFF));
      if (wide) out.push_back(static_cast<char>(s >> 8));
    }
  return out;
}

std::vector<std::vector<Symbol>> unpack_symbols(const FieldContext& field, const std::string& bytes,
                                                const std::vector<std::size_t>& lengths) {
  const std::size_t width = field.theta() > 8 ? 2 : 1;
  std::size_t total = 0;
  for (auto n : lengths) total += n;
  if (bytes.size() != total * width)
    throw Error(ErrorCode::format, "symbol file has " + std::to_string(bytes.size()) + " bytes, expected " +
                                       std::to_string(total * width));
  std::vector<std::vector<Symbol>> out;
  std::size_t pos = 0;
  for (auto n : lengths) {
    std::vector<Symbol> blk(n);
    for (auto& s : blk) {
      std::uint32_t v = static_cast<unsigned char>(bytes[pos++]);
      if (width == 2) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos++])) << 8;
      if (!field.contains(v)) throw Error(ErrorCode::format, "symbol " + std::to_string(v) + " outside the field");
      s = static_cast<Symbol>(v);
    }
    out.push_back(std::move(blk));
  }
  return out;
}

std::vector<std::size_t> message_lengths(const CodeInstance& code) {
  std::vector<std::size_t> out;
  for (int i = 1; i <= code.size(); ++i) out.push_back(code.topology().node(i).k);
  return out;
}

std::vector<std::size_t> codeword_lengths(const CodeInstance& code) {
  std::vector<std::size_t> out;
  for (int i = 1; i <= code.size(); ++i) out.push_back(code.topology().node(i).n());
  return out;
}

std::string pattern_to_json(const ErasurePattern& pattern) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < pattern.erased.size(); ++i) {
    std::vector<std::size_t> coords;
    for (std::size_t c = 0; c < pattern.erased[i].size(); ++c)
      if (pattern.erased[i][c]) coords.push_back(c + 1);
    if (!coords.empty()) j[std::to_string(i + 1)] = coords;
  }
  return j.dump();
}

ErasurePattern pattern_from_json(const CodeInstance& code, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::schema, std::string("erasure pattern: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::schema, "erasure pattern must be a JSON object");
  ErasurePattern pat = ErasurePattern::none(code);
  for (const auto& [key, val] : j.items()) {
    std::size_t used = 0;
    int node = 0;
    try {
      node = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || node < 1 || node > code.size())
      throw Error(ErrorCode::unknown_node, "erasure pattern names unknown node \"" + key + "\"");
    if (!val.is_array()) throw Error(ErrorCode::schema, "erasure list for node " + key + " must be an array");
    for (const auto& c : val) {
      if (!c.is_number_unsigned()) throw Error(ErrorCode::schema, "erasure coordinates must be positive integers");
      pat.erase(node, c.get<std::size_t>());
    }
  }
  return pat;
}

}  // namespace dsn
