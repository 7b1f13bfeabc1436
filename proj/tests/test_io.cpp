#include <doctest.h>

#include "dsn/symbols_io.hpp"
#include "support.hpp"

using namespace dsn;

namespace {

ErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::io;
}

const char* pair_doc = R"({"nodes": [{"id": 1, "k": 2, "r": 4, "delta": 1}, {"id": 2, "k": 2, "r": 4, "delta": 1}],
                           "edges": [{"a": 1, "b": 2, "t": 0.6}]})";

}  // namespace

TEST_CASE("exact time parsing") {
  CHECK(parse_time("3") == Time(3));
  CHECK(parse_time("0.6") == Time(3, 5));
  CHECK(parse_time("3/5") == Time(3, 5));
  CHECK(parse_time("1.25") == Time(5, 4));
  CHECK(format_time(Time(6, 5)) == "6/5");
  CHECK(format_time(Time(2)) == "2");
  CHECK(error_of([] { parse_time("abc"); }) == ErrorCode::bad_latency);
  CHECK(error_of([] { parse_time("1/0"); }) == ErrorCode::bad_latency);
  CHECK(load_config(pair_doc).topology->latency(1, 2) == Time(3, 5));
}

TEST_CASE("config schema errors") {
  CHECK(error_of([] { load_config("[1,2]"); }) == ErrorCode::schema);
  CHECK(error_of([] { load_config("{not json"); }) == ErrorCode::schema);
  CHECK(error_of([] { load_config(R"({"nodes": [], "colour": 1})"); }) == ErrorCode::schema);
  CHECK(error_of([] { load_config(R"({"nodes": [{"id": 1, "k": 2, "r": 4}]})"); }) == ErrorCode::schema);
  CHECK(error_of([] { load_config(R"({"nodes": [{"id": 2, "k": 2, "r": 4, "delta": 0}]})"); }) == ErrorCode::schema);
  CHECK(error_of([] { load_config(R"({"nodes": [{"id": 1, "k": "2", "r": 4, "delta": 0}]})"); }) ==
        ErrorCode::schema);
  CHECK(error_of([] {
          load_config(R"({"nodes": [{"id": 1, "k": 2, "r": 4, "delta": 1}, {"id": 2, "k": 2, "r": 4, "delta": 1}],
                          "edges": [{"a": 1, "b": 2, "t": -1}]})");
        }) == ErrorCode::bad_latency);
}

TEST_CASE("cycle symbols resolve to gammas") {
  const Config c = testing::config("mesh12_cycles");
  REQUIRE(c.cycles.size() == 6);
  CHECK(c.cycles[1].gamma.at(2) == 1);
  CHECK(c.cycles[4].gamma.at(2) == 1);
  CHECK(c.cycles[5].X == NodeSet{10, 11, 12});
}

TEST_CASE("canonical serialization round-trips") {
  for (const char* name : {"mesh12", "mesh12_gf16", "mesh12_cycles", "mesh12_latency"}) {
    const Config c = testing::config(name);
    const std::string text = serialize_config(c);
    const Config back = load_config(text);
    CHECK(*back.topology == *c.topology);
    CHECK(back.cycles == c.cycles);
    CHECK(back.theta == c.theta);
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("code containers round-trip and detect tampering") {
  const Config c = testing::config("mesh12_cycles");
  const CodeInstance code = build_code(c, ConstructionKind::multi_level);
  const std::string bytes = save_container(code, c);
  CHECK(bytes.substr(0, 4) == "DSNC");
  CHECK(save_container(build_code(c, ConstructionKind::multi_level), c) == bytes);
  const LoadedCode back = load_container(bytes);
  CHECK(back.code.generator() == code.generator());
  CHECK(back.code.kind() == ConstructionKind::multi_level);
  CHECK(back.config.theta == 4u);
  CHECK(back.config.modulus == 0x13u);

  std::string flipped = bytes;
  flipped[flipped.size() - 3] ^= 1;
  CHECK(error_of([&] { load_container(flipped); }) == ErrorCode::format);
  CHECK(error_of([&] { load_container(bytes.substr(0, bytes.size() - 1)); }) == ErrorCode::format);
  CHECK(error_of([&] { load_container(bytes + "x"); }) == ErrorCode::format);
  std::string magic = bytes;
  magic[0] = 'X';
  CHECK(error_of([&] { load_container(magic); }) == ErrorCode::format);
}

TEST_CASE("symbol packing widths") {
  const FieldContext f4(4), f12(12);
  const std::vector<std::vector<Symbol>> small = {{1, 15}, {7}};
  const std::string b4 = pack_symbols(f4, small);
  CHECK(b4 == std::string("\x01\x0f\x07", 3));
  CHECK(unpack_symbols(f4, b4, {2, 1}) == small);
  const std::vector<std::vector<Symbol>> wide = {{0x0ABC, 1}};
  const std::string b12 = pack_symbols(f12, wide);
  CHECK(b12 == std::string("\xbc\x0a\x01\x00", 4));
  CHECK(unpack_symbols(f12, b12, {2}) == wide);
  CHECK(error_of([&] { unpack_symbols(f4, b4, {2, 2}); }) == ErrorCode::format);
  CHECK(error_of([&] { unpack_symbols(f4, std::string("\x10", 1), {1}); }) == ErrorCode::format);
}

TEST_CASE("erasure pattern files") {
  const CodeInstance code = testing::mesh12_gf16();
  ErasurePattern p = ErasurePattern::none(code);
  p.erase(2, 1);
  p.erase(2, 6);
  p.erase(10, 3);
  const std::string text = pattern_to_json(p);
  CHECK(text == R"({"2":[1,6],"10":[3]})");
  CHECK(pattern_from_json(code, text) == p);
  CHECK(error_of([&] { pattern_from_json(code, R"({"13": [1]})"); }) == ErrorCode::unknown_node);
  CHECK(error_of([&] { pattern_from_json(code, R"({"x": [1]})"); }) == ErrorCode::unknown_node);
  CHECK(error_of([&] { pattern_from_json(code, R"({"2": [7]})"); }) == ErrorCode::domain);
  CHECK(error_of([&] { pattern_from_json(code, R"({"2": 1})"); }) == ErrorCode::schema);
  CHECK(error_of([&] { pattern_from_json(code, "[]"); }) == ErrorCode::schema);
}
