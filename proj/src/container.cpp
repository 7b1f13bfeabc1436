#include "dsn/container.hpp"

#include <fstream>
#include <sstream>

namespace dsn {

namespace {

constexpr char magic[4] = {'D', 'S', 'N', 'C'};
constexpr std::uint16_t version = 1;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v));
    u16(static_cast<std::uint16_t>(v >> 16));
  }
  void bytes(const std::string& s) { out_ += s; }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& in) : in_(in) {}
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint16_t u16() {
    const std::uint16_t lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }
  std::uint32_t u32() {
    const std::uint32_t lo = u16();
    return lo | (static_cast<std::uint32_t>(u16()) << 16);
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) {
    if (in_.size() - pos_ < n) throw Error(ErrorCode::format, "code container is truncated");
  }
  const std::string& in_;
  std::size_t pos_ = 0;
};

}  // namespace

CodeInstance build_code(const Config& cfg, ConstructionKind kind) {
  std::vector<Cycle> cycles = kind == ConstructionKind::multi_level ? cfg.cycles : std::vector<Cycle>{};
  auto graph = std::make_shared<const CooperationGraph>(cfg.topology, std::move(cycles));
  FieldPtr field;
  if (cfg.theta && cfg.modulus)
    field = make_field(*cfg.theta, *cfg.modulus);
  else if (cfg.theta)
    field = make_field(*cfg.theta);
  else
    field = make_field(select_theta(*graph, kind));
  if (kind == ConstructionKind::single_level) return build_single_level(cfg.topology, std::move(field));
  return build_multi_level(std::move(graph), std::move(field));
}

std::string save_container(const CodeInstance& code, const Config& cfg) {
  Config canon = cfg;
  canon.theta = code.field()->theta();
  canon.modulus = code.field()->modulus();
  if (code.kind() == ConstructionKind::single_level) canon.cycles.clear();
  const std::string json = serialize_config(canon);

  Writer w;
  for (char c : magic) w.u8(static_cast<std::uint8_t>(c));
  w.u16(version);
  w.u8(static_cast<std::uint8_t>(code.field()->theta()));
  w.u32(code.field()->modulus());
  w.u16(static_cast<std::uint16_t>(code.size()));
  w.u8(static_cast<std::uint8_t>(code.kind()));
  for (int i = 1; i <= code.size(); ++i) {
    const NodeParams& np = code.topology().node(i);
    w.u16(static_cast<std::uint16_t>(np.k));
    w.u16(static_cast<std::uint16_t>(np.r));
    w.u16(static_cast<std::uint16_t>(np.delta));
  }
  w.u32(static_cast<std::uint32_t>(json.size()));
  w.bytes(json);
  for (int i = 1; i <= code.size(); ++i) {
    const NodeCode& nc = code.node(i);
    w.u32(static_cast<std::uint32_t>(nc.a.size()));
    w.u32(static_cast<std::uint32_t>(nc.b.size()));
    for (Symbol s : nc.a) w.u16(s);
    for (Symbol s : nc.b) w.u16(s);
  }
  for (int i = 1; i <= code.size(); ++i)
    for (int j = 1; j <= code.size(); ++j) {
      const Matrix blk = code.block(i, j);
      for (Symbol s : blk.data()) w.u16(s);
    }
  return w.take();
}

LoadedCode load_container(const std::string& bytes) {
  Reader r(bytes);
  for (char c : magic)
    if (r.u8() != static_cast<std::uint8_t>(c)) throw Error(ErrorCode::format, "not a code container (bad magic)");
  if (const auto v = r.u16(); v != version)
    throw Error(ErrorCode::format, "unsupported container version " + std::to_string(v));
  const unsigned theta = r.u8();
  const std::uint32_t modulus = r.u32();
  const int p = r.u16();
  const std::uint8_t kind_raw = r.u8();
  if (kind_raw != 1 && kind_raw != 2) throw Error(ErrorCode::format, "unknown construction kind");
  const auto kind = static_cast<ConstructionKind>(kind_raw);
  std::vector<NodeParams> params(p);
  for (auto& np : params) {
    np.k = r.u16();
    np.r = r.u16();
    np.delta = r.u16();
  }
  Config cfg = load_config(r.bytes(r.u32()));
  if (cfg.theta != theta || cfg.modulus != modulus)
    throw Error(ErrorCode::format, "container header disagrees with embedded config");
  CodeInstance code = build_code(cfg, kind);
  if (code.size() != p) throw Error(ErrorCode::format, "container node count disagrees with embedded config");
  for (int i = 1; i <= p; ++i) {
    const NodeParams& np = code.topology().node(i);
    if (np.k != params[i - 1].k || np.r != params[i - 1].r || np.delta != params[i - 1].delta)
      throw Error(ErrorCode::format, "node " + std::to_string(i) + " parameters disagree with embedded config");
  }
  for (int i = 1; i <= p; ++i) {
    const NodeCode& nc = code.node(i);
    const std::size_t na = r.u32(), nb = r.u32();
    std::vector<Symbol> a(na), b(nb);
    for (auto& s : a) s = r.u16();
    for (auto& s : b) s = r.u16();
    if (a != nc.a || b != nc.b)
      throw Error(ErrorCode::format, "node " + std::to_string(i) + " element assignment does not match rebuild");
  }
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= p; ++j) {
      const Matrix blk = code.block(i, j);
      for (Symbol s : blk.data())
        if (r.u16() != s)
          throw Error(ErrorCode::format,
                      "block (" + std::to_string(i) + "," + std::to_string(j) + ") does not match rebuild");
    }
  if (!r.done()) throw Error(ErrorCode::format, "trailing bytes after code container");
  return {std::move(cfg), std::move(code)};
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io, "write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dsn
