#include "dsn/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dsn {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::schema, msg); }

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) schema(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok |= key == a;
    if (!ok) schema(where + ": unknown key \"" + key + "\"");
  }
}

const json& need(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where + ": missing \"" + key + "\"");
  return *it;
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema(where + " must be an integer");
  return v.get<int>();
}

int parse_id(const std::string& s, const std::string& where) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) schema(where + ": \"" + s + "\" is not a node id");
  return v;
}

NodeSet as_set(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be an array");
  NodeSet out;
  for (const auto& e : v)
    if (!out.insert(as_int(e, where + " entry")).second) schema(where + " repeats an entry");
  return out;
}

Time json_time(const json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return Time(v.get<std::int64_t>());
    if (v.is_number_float()) {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
      return parse_time(std::string(buf, res.ptr));
    }
    if (v.is_string()) return parse_time(v.get<std::string>());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::bad_latency) throw Error(ErrorCode::bad_latency, where + ": " + e.what());
    throw;
  }
  schema(where + " must be a number or a \"p/q\" string");
}

std::uint32_t parse_modulus(const json& v) {
  if (v.is_number_unsigned() || v.is_number_integer()) {
    auto x = v.get<std::int64_t>();
    if (x <= 0) schema("modulus must be positive");
    return static_cast<std::uint32_t>(x);
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.size() < 3 || (s.rfind("0x", 0) != 0 && s.rfind("0X", 0) != 0)) schema("modulus string must be 0x-prefixed hex");
    std::uint32_t x = 0;
    auto [ptr, ec] = std::from_chars(s.data() + 2, s.data() + s.size(), x, 16);
    if (ec != std::errc{} || ptr != s.data() + s.size()) schema("modulus \"" + s + "\" is not valid hex");
    return x;
  }
  schema("modulus must be an integer or a 0x-prefixed string");
}

Config parse(const json& doc) {
  only_keys(doc, {"theta", "modulus", "nodes", "edges", "coop", "cycles", "symbols"}, "document");
  Config cfg;
  if (auto it = doc.find("theta"); it != doc.end()) {
    int th = as_int(*it, "theta");
    if (th < 2 || th > 16) throw Error(ErrorCode::parameter, "theta must be in [2, 16]");
    cfg.theta = static_cast<unsigned>(th);
  }
  if (auto it = doc.find("modulus"); it != doc.end()) cfg.modulus = parse_modulus(*it);

  const json& jn = need(doc, "nodes", "document");
  if (!jn.is_array() || jn.empty()) schema("nodes must be a non-empty array");
  std::map<int, NodeParams> by_id;
  for (const auto& n : jn) {
    only_keys(n, {"id", "k", "r", "delta"}, "node");
    const int id = as_int(need(n, "id", "node"), "node id");
    const std::string w = "node " + std::to_string(id);
    NodeParams np{as_int(need(n, "k", w), w + " k"), as_int(need(n, "r", w), w + " r"),
                  as_int(need(n, "delta", w), w + " delta")};
    if (!by_id.emplace(id, np).second) schema("duplicate node id " + std::to_string(id));
  }
  std::vector<NodeParams> nodes;
  for (int i = 1; i <= static_cast<int>(by_id.size()); ++i) {
    auto it = by_id.find(i);
    if (it == by_id.end()) schema("node ids must be exactly 1.." + std::to_string(by_id.size()));
    nodes.push_back(it->second);
  }

  std::vector<Edge> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) schema("edges must be an array");
    for (const auto& e : *it) {
      only_keys(e, {"a", "b", "t"}, "edge");
      Edge ed;
      ed.a = as_int(need(e, "a", "edge"), "edge a");
      ed.b = as_int(need(e, "b", "edge"), "edge b");
      const std::string w = "edge " + std::to_string(ed.a) + "-" + std::to_string(ed.b);
      if (auto t = e.find("t"); t != e.end()) ed.t = json_time(*t, w);
      edges.push_back(ed);
    }
  }

  std::map<NodeId, NodeSet> coop;
  if (auto it = doc.find("coop"); it != doc.end()) {
    if (!it->is_object()) schema("coop must be an object");
    for (const auto& [key, val] : it->items()) coop[parse_id(key, "coop")] = as_set(val, "coop[" + key + "]");
  }
  cfg.topology = std::make_shared<const DsnTopology>(std::move(nodes), std::move(edges), std::move(coop));

  std::map<std::string, int> symbols;
  if (auto it = doc.find("symbols"); it != doc.end()) {
    if (!it->is_object()) schema("symbols must be an object");
    for (const auto& [key, val] : it->items()) symbols[key] = as_int(val, "symbols[" + key + "]");
  }

  if (auto it = doc.find("cycles"); it != doc.end()) {
    if (!it->is_array()) schema("cycles must be an array");
    int id = 0;
    for (const auto& c : *it) {
      ++id;
      const std::string w = "cycle " + std::to_string(id);
      only_keys(c, {"X", "Y", "pairs", "level", "gamma"}, w);
      NodeSet X = as_set(need(c, "X", w), w + " X");
      NodeSet Y = as_set(need(c, "Y", w), w + " Y");
      const int level = as_int(need(c, "level", w), w + " level");
      std::map<NodeId, std::array<NodeId, 2>> row_cols;
      std::map<NodeId, int> gamma;
      const json& pairs = need(c, "pairs", w);
      if (!pairs.is_array()) schema(w + " pairs must be an array");
      for (const auto& pr : pairs) {
        only_keys(pr, {"row", "cols", "symbol"}, w + " pair");
        const int row = as_int(need(pr, "row", w + " pair"), w + " pair row");
        const json& cols = need(pr, "cols", w + " pair");
        if (!cols.is_array() || cols.size() != 2) schema(w + " pair cols must list exactly two columns");
        if (!row_cols.emplace(row, std::array<NodeId, 2>{as_int(cols[0], w + " col"), as_int(cols[1], w + " col")}).second)
          schema(w + " lists row " + std::to_string(row) + " twice");
        if (auto s = pr.find("symbol"); s != pr.end()) {
          if (!s->is_string()) schema(w + " pair symbol must be a string");
          auto sym = symbols.find(s->get<std::string>());
          if (sym == symbols.end())
            throw Error(ErrorCode::missing_gamma, w + ": symbol \"" + s->get<std::string>() + "\" has no gamma");
          gamma[row] = sym->second;
        }
      }
      if (auto g = c.find("gamma"); g != c.end()) {
        if (!g->is_object()) schema(w + " gamma must be an object");
        for (const auto& [key, val] : g->items()) {
          const int row = parse_id(key, w + " gamma");
          const int v = as_int(val, w + " gamma[" + key + "]");
          auto [pos, fresh] = gamma.emplace(row, v);
          if (!fresh && pos->second != v) schema(w + ": gamma for row " + key + " disagrees with its symbol");
        }
      }
      cfg.cycles.push_back(make_cycle(id, X, Y, row_cols, level, gamma));
    }
  }
  return cfg;
}

json time_json(const Time& t) {
  if (t.denominator() == 1) return t.numerator();
  return format_time(t);
}

}  // namespace

Time parse_time(const std::string& text) {
  auto bad = [&]() -> Error { return Error(ErrorCode::bad_latency, "cannot parse time \"" + text + "\""); };
  if (text.empty()) throw bad();
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      std::int64_t num = 0, den = 0;
      auto r1 = std::from_chars(text.data(), text.data() + slash, num);
      auto r2 = std::from_chars(text.data() + slash + 1, text.data() + text.size(), den);
      if (r1.ec != std::errc{} || r1.ptr != text.data() + slash || r2.ec != std::errc{} ||
          r2.ptr != text.data() + text.size() || den == 0)
        throw bad();
      return Time(num, den);
    }
    // Decimal with optional fraction and exponent, converted exactly.
    std::string digits;
    std::int64_t scale = 0;
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '-' || text[pos] == '+') neg = text[pos++] == '-';
    bool frac = false, any = false;
    for (; pos < text.size(); ++pos) {
      char ch = text[pos];
      if (ch >= '0' && ch <= '9') {
        digits.push_back(ch);
        any = true;
        if (frac) --scale;
      } else if (ch == '.' && !frac) {
        frac = true;
      } else {
        break;
      }
    }
    if (!any) throw bad();
    if (pos < text.size()) {
      if (text[pos] != 'e' && text[pos] != 'E') throw bad();
      int ex = 0;
      const char* b = text.data() + pos + 1;
      if (*b == '+') ++b;
      auto r = std::from_chars(b, text.data() + text.size(), ex);
      if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) throw bad();
      scale += ex;
    }
    std::int64_t mant = 0;
    auto r = std::from_chars(digits.data(), digits.data() + digits.size(), mant);
    if (r.ec != std::errc{}) throw bad();
    if (scale > 18 || scale < -18) throw bad();
    std::int64_t pow10 = 1;
    for (std::int64_t s = 0; s < (scale < 0 ? -scale : scale); ++s) pow10 *= 10;
    Time out = scale >= 0 ? Time(mant * pow10) : Time(mant, pow10);
    return neg ? -out : out;
  } catch (const boost::bad_rational&) {
    throw bad();
  }
}

std::string format_time(const Time& t) {
  if (t.denominator() == 1) return std::to_string(t.numerator());
  return std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
}

Config load_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema, std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema, e.what());
  }
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

DsnTopology load_topology(const std::string& text) { return *load_config(text).topology; }

std::string serialize_config(const Config& cfg) {
  json doc = json::object();
  if (cfg.theta) doc["theta"] = *cfg.theta;
  if (cfg.modulus) {
    std::ostringstream os;
    os << "0x" << std::hex << std::uppercase << *cfg.modulus;
    doc["modulus"] = os.str();
  }
  const DsnTopology& t = *cfg.topology;
  json nodes = json::array();
  for (int i = 1; i <= t.size(); ++i) {
    const auto& np = t.node(i);
    nodes.push_back({{"id", i}, {"k", np.k}, {"r", np.r}, {"delta", np.delta}});
  }
  doc["nodes"] = nodes;
  json edges = json::array();
  for (const auto& e : t.edges()) edges.push_back({{"a", e.a}, {"b", e.b}, {"t", time_json(e.t)}});
  doc["edges"] = edges;
  if (!t.explicit_coop().empty()) {
    json coop = json::object();
    for (const auto& [i, set] : t.explicit_coop()) coop[std::to_string(i)] = std::vector<int>(set.begin(), set.end());
    doc["coop"] = coop;
  }
  if (!cfg.cycles.empty()) {
    json cycles = json::array();
    for (const auto& c : cfg.cycles) {
      json pairs = json::array();
      for (const auto& [row, cols] : c.row_cols) pairs.push_back({{"row", row}, {"cols", {cols[0], cols[1]}}});
      json gamma = json::object();
      for (const auto& [row, g] : c.gamma) gamma[std::to_string(row)] = g;
      cycles.push_back({{"X", std::vector<int>(c.X.begin(), c.X.end())},
                        {"Y", std::vector<int>(c.Y.begin(), c.Y.end())},
                        {"pairs", pairs},
                        {"level", c.level},
                        {"gamma", gamma}});
    }
    doc["cycles"] = cycles;
  }
  return doc.dump(2);
}

}  // namespace dsn
