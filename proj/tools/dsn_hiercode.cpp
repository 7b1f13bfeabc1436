// dsn_hiercode: build, inspect, encode, corrupt, decode, simulate and validate hierarchical codes.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "dsn/container.hpp"
#include "dsn/oracle.hpp"
#include "dsn/rng.hpp"
#include "dsn/symbols_io.hpp"

using namespace dsn;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed_nodes = 1;
constexpr int exit_invalid = 2;

bool use_color() {
  const char* v = std::getenv("DSN_HIERCODE_COLOR");
  return v && std::string(v) == "1";
}

std::string paint(const std::string& s, const char* code) {
  return use_color() ? fmt::format("\x1b[{}m{}\x1b[0m", code, s) : s;
}

std::string status_text(NodeStatus s) {
  const std::string name(status_name(s));
  return paint(name, s == NodeStatus::failed ? "31" : "32");
}

void emit_error(const std::string& code, const std::string& message) {
  std::cerr << ojson{{"error", code}, {"message", message}}.dump() << "\n";
}

std::string set_text(const NodeSet& s) {
  std::string out = "{";
  bool first = true;
  for (NodeId x : s) {
    out += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return out + "}";
}

std::string vec_text(const std::vector<int>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

void print_json(const ojson& j) { std::cout << j.dump(2) << "\n"; }

// ---- shared pieces -------------------------------------------------------

ojson hierarchy_json(const CodeInstance& code, const EccHierarchy& h, std::optional<NodeId> only) {
  ojson nodes = ojson::array();
  for (int i = 1; i <= code.size(); ++i) {
    if (only && *only != i) continue;
    const NodeHierarchy& nh = h.node(i);
    ojson levels = ojson::array();
    for (int l = 1; l <= h.depth(i); ++l)
      levels.push_back({{"level", l}, {"I", nh.I[l]}, {"A", nh.A[l]}, {"B", nh.B[l]}});
    ojson n = {{"node", i}, {"d", nh.d}, {"levels", levels}};
    if (nh.d1_example) n["d1_example"] = *nh.d1_example;
    nodes.push_back(n);
  }
  ojson flags = ojson::array();
  for (const auto& f : h.flags())
    if (!only || *only == f.node)
      flags.push_back({{"node", f.node}, {"level", f.level}, {"kind", f.kind}, {"detail", f.detail}});
  return {{"nodes", nodes}, {"flags", flags}};
}

void print_hierarchy_table(const CodeInstance& code, const EccHierarchy& h, std::optional<NodeId> only) {
  fmt::print("{:>4}  {:<16} {:<5} {:<16} {:<16}\n", "node", "d", "level", "I", "B");
  for (int i = 1; i <= code.size(); ++i) {
    if (only && *only != i) continue;
    const NodeHierarchy& nh = h.node(i);
    for (int l = 1; l <= h.depth(i); ++l)
      fmt::print("{:>4}  {:<16} {:<5} {:<16} {:<16}\n", l == 1 ? std::to_string(i) : "", l == 1 ? vec_text(nh.d) : "",
                 l, set_text(nh.I[l]), set_text(nh.B[l]));
  }
  for (const auto& f : h.flags())
    if (!only || *only == f.node) fmt::print("flag {} node {} level {}: {}\n", f.kind, f.node, f.level, f.detail);
}

ojson compat_json(const CompatibilityReport& rep) {
  auto list = [](const std::vector<Violation>& vs) {
    ojson a = ojson::array();
    for (const auto& v : vs)
      a.push_back({{"condition", v.condition}, {"node", v.node}, {"level", v.level}, {"detail", v.detail}});
    return a;
  };
  return {{"compatible", rep.compatible()}, {"violations", list(rep.violations)}, {"literal", list(rep.literal)}};
}

ojson helper_json(const HelperLink& h) {
  return {{"kind", h.kind}, {"via", h.via}, {"needs", h.needs}, {"level", h.level}};
}

ojson report_json(const RecoveryReport& rep, bool with_times) {
  ojson nodes = ojson::array();
  for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
    const NodeOutcome& n = rep.nodes[i];
    ojson helpers = ojson::array();
    for (const auto& h : n.helpers) helpers.push_back(helper_json(h));
    ojson o = {{"node", i + 1}, {"status", status_name(n.status)}, {"level", n.level}, {"helpers", helpers}};
    if (with_times) o["completion"] = n.completion ? ojson(format_time(*n.completion)) : ojson(nullptr);
    nodes.push_back(o);
  }
  return {{"nodes", nodes}, {"failed", rep.failed_count()}};
}

void print_report_table(const RecoveryReport& rep, bool with_times) {
  fmt::print("{:>4}  {:<16} {:>5}  {:<10} {}\n", "node", "status", "level", with_times ? "completion" : "", "helpers");
  for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
    const NodeOutcome& n = rep.nodes[i];
    std::string helpers;
    for (const auto& h : n.helpers)
      helpers += fmt::format("{}{}@{}{}", helpers.empty() ? "" : " ", h.kind, h.via, set_text(h.needs));
    const std::string status = status_text(n.status);
    const std::string pad(16 - std::min<std::size_t>(16, std::string(status_name(n.status)).size()), ' ');
    const std::string when = with_times ? (n.completion ? format_time(*n.completion) : "inf") : "";
    fmt::print("{:>4}  {}{} {:>5}  {:<10} {}\n", i + 1, status, pad, n.level, when, helpers);
  }
  fmt::print("failed: {}\n", rep.failed_count());
}

std::string trace_text(const RecoveryReport& rep) {
  std::string out;
  for (const auto& e : rep.trace) out += fmt::format("{} {} {} {}\n", format_time(e.time), e.node, e.event, e.detail);
  return out;
}

// Per-node counts "2:5,4:5".
std::map<NodeId, std::size_t> parse_counts(const std::string& text) {
  std::map<NodeId, std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::parameter, "per-node count \"" + item + "\" is not node:count");
    try {
      std::size_t used = 0;
      const int node = std::stoi(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("node");
      const std::string cnt = item.substr(colon + 1);
      const unsigned long count = std::stoul(cnt, &used);
      if (used != cnt.size()) throw std::invalid_argument("count");
      out[node] = count;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::parameter, "per-node count \"" + item + "\" is not node:count");
    }
  }
  return out;
}

CodewordSet load_codewords(const CodeInstance& code, const std::string& path) {
  return unpack_symbols(*code.field(), read_file(path), codeword_lengths(code));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology-aware hierarchical erasure codes for decentralized storage networks"};
  app.require_subcommand(1);
  app.fallthrough();
  bool human = false;
  std::uint64_t seed = 0;
  app.add_flag("--human", human, "Print tables instead of JSON");
  app.add_option("--seed", seed, "Seed for all randomness (xoshiro256**)");

  std::string topology_path, code_path, out_path, messages_path, codewords_path, pattern_path, per_node, trace_path,
      messages_out, pattern_out, budget = "exhaustive";
  bool multi_level = false, random_messages = false;
  std::optional<int> node_opt, level_opt;
  std::vector<int> helpers;
  unsigned jobs = 1;

  auto* build = app.add_subcommand("build", "Build a code instance from a configuration");
  build->add_option("--topology", topology_path, "Configuration JSON")->required()->check(CLI::ExistingFile);
  build->add_flag("--multi-level", multi_level, "Use the cycle-based multi-level construction");
  build->add_option("--out", out_path, "Code container to write")->required();

  auto* hier = app.add_subcommand("hierarchy", "Show erasure-correction hierarchies");
  hier->add_option("--code", code_path, "Code container")->required()->check(CLI::ExistingFile);
  hier->add_option("--node", node_opt, "Restrict to one node");
  hier->add_option("--level", level_opt, "Cooperation level for --helpers");
  hier->add_option("--helpers", helpers, "Booster set W for a lambda query, e.g. 4,6")->delimiter(',');

  auto* compat = app.add_subcommand("check-compat", "Check a cycle configuration for compatibility");
  compat->add_option("--topology", topology_path, "Configuration JSON")->required()->check(CLI::ExistingFile);

  auto* enc = app.add_subcommand("encode", "Encode messages");
  enc->add_option("--code", code_path, "Code container")->required()->check(CLI::ExistingFile);
  auto* msg_opt = enc->add_option("--messages", messages_path, "Message file")->check(CLI::ExistingFile);
  enc->add_flag("--random", random_messages, "Draw messages from the seed")->excludes(msg_opt);
  enc->add_option("--messages-out", messages_out, "Write the encoded messages here");
  enc->add_option("--out", out_path, "Codeword file to write")->required();

  auto* cor = app.add_subcommand("corrupt", "Erase codeword coordinates");
  cor->add_option("--code", code_path, "Code container")->required()->check(CLI::ExistingFile);
  cor->add_option("--codewords", codewords_path, "Codeword file")->required()->check(CLI::ExistingFile);
  auto* pat_opt = cor->add_option("--pattern", pattern_path, "Erasure pattern JSON")->check(CLI::ExistingFile);
  auto* cnt_opt = cor->add_option("--per-node", per_node, "Random erasure counts, e.g. 2:5,4:5");
  pat_opt->excludes(cnt_opt);
  cor->add_option("--out", out_path, "Corrupted codeword file")->required();
  cor->add_option("--pattern-out", pattern_out, "Write the applied pattern here");

  auto* dec = app.add_subcommand("decode", "Hierarchical decoding");
  auto* sim = app.add_subcommand("simulate", "Latency-aware recovery simulation");
  for (auto* sc : {dec, sim}) {
    sc->add_option("--code", code_path, "Code container")->required()->check(CLI::ExistingFile);
    sc->add_option("--codewords", codewords_path, "Received codeword file")->required()->check(CLI::ExistingFile);
    sc->add_option("--pattern", pattern_path, "Erasure pattern JSON")->required()->check(CLI::ExistingFile);
    sc->add_option("--trace", trace_path, "Write the event trace here");
    sc->add_option("--messages-out", messages_out, "Write recovered messages (zeros for failed nodes)");
  }

  auto* val = app.add_subcommand("validate", "Sweep erasure patterns against the oracle");
  val->add_option("--code", code_path, "Code container")->required()->check(CLI::ExistingFile);
  val->add_option("--budget", budget, "exhaustive | sample:N, with :node=I :level=L :max-erasures=E");
  val->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return exit_invalid;
  }

  try {
    if (build->parsed()) {
      const Config cfg = load_config_file(topology_path);
      const auto kind = multi_level ? ConstructionKind::multi_level : ConstructionKind::single_level;
      const CodeInstance code = build_code(cfg, kind);
      write_file(out_path, save_container(code, cfg));
      const EccHierarchy h(code);
      if (human) {
        fmt::print("construction {}  GF(2^{}) modulus 0x{:X}  G {}x{}\n", static_cast<int>(kind), code.field()->theta(),
                   code.field()->modulus(), code.total_k(), code.total_n());
        print_hierarchy_table(code, h, std::nullopt);
      } else {
        ojson j = {{"construction", static_cast<int>(kind)},
                   {"theta", code.field()->theta()},
                   {"modulus", fmt::format("0x{:X}", code.field()->modulus())},
                   {"nodes", code.size()},
                   {"generator", {code.total_k(), code.total_n()}}};
        j["hierarchy"] = hierarchy_json(code, h, std::nullopt);
        print_json(j);
      }
      return exit_ok;
    }

    if (compat->parsed()) {
      const Config cfg = load_config_file(topology_path);
      const CooperationGraph g(cfg.topology, cfg.cycles);
      const CompatibilityReport rep = check_compatible(g);
      if (human) {
        fmt::print("{}\n", rep.compatible() ? paint("compatible", "32") : paint("incompatible", "31"));
        for (const auto& v : rep.violations)
          fmt::print("condition {} node {} level {}: {}\n", v.condition, v.node, v.level, v.detail);
      } else {
        print_json(compat_json(rep));
      }
      if (!rep.compatible()) {
        emit_error(std::string(error_code_name(ErrorCode::incompatible_graph)),
                   std::to_string(rep.violations.size()) + " compatibility violation(s)");
        return exit_invalid;
      }
      return exit_ok;
    }

    const LoadedCode loaded = load_container(read_file(code_path));
    const CodeInstance& code = loaded.code;
    const FieldContext& field = *code.field();

    if (hier->parsed()) {
      const EccHierarchy h(code);
      if (node_opt && !code.topology().contains(*node_opt))
        throw Error(ErrorCode::unknown_node, "unknown node " + std::to_string(*node_opt));
      if (hier->count("--helpers") || level_opt) {
        if (!node_opt || !level_opt) throw Error(ErrorCode::parameter, "a lambda query needs --node and --level");
        const NodeSet W(helpers.begin(), helpers.end());
        const int lam = h.lambda(*node_opt, *level_opt, W);
        if (human)
          fmt::print("lambda_{{{},{};{}}} = {}\n", *node_opt, *level_opt, set_text(W), lam);
        else
          print_json({{"node", *node_opt}, {"level", *level_opt}, {"W", W}, {"lambda", lam}});
        return exit_ok;
      }
      if (human)
        print_hierarchy_table(code, h, node_opt);
      else
        print_json(hierarchy_json(code, h, node_opt));
      return exit_ok;
    }

    if (enc->parsed()) {
      MessageSet m;
      if (random_messages || messages_path.empty()) {
        Rng rng(seed);
        for (auto len : message_lengths(code)) {
          Message v(len);
          for (auto& s : v) s = static_cast<Symbol>(rng.below(field.q()));
          m.push_back(std::move(v));
        }
      } else {
        m = unpack_symbols(field, read_file(messages_path), message_lengths(code));
      }
      const CodewordSet cw = encode(code, m);
      write_file(out_path, pack_symbols(field, cw));
      if (!messages_out.empty()) write_file(messages_out, pack_symbols(field, m));
      if (human)
        fmt::print("encoded {} nodes, {} symbols\n", code.size(), code.total_n());
      else
        print_json({{"nodes", code.size()}, {"symbols", code.total_n()}});
      return exit_ok;
    }

    if (cor->parsed()) {
      CodewordSet cw = load_codewords(code, codewords_path);
      ErasurePattern pat = ErasurePattern::none(code);
      if (!pattern_path.empty()) {
        pat = pattern_from_json(code, read_file(pattern_path));
      } else if (!per_node.empty()) {
        Rng rng(seed);
        for (const auto& [node, count] : parse_counts(per_node)) {
          if (!code.topology().contains(node)) throw Error(ErrorCode::unknown_node, "unknown node " + std::to_string(node));
          const std::size_t n = code.topology().node(node).n();
          if (count > n)
            throw Error(ErrorCode::domain, "node " + std::to_string(node) + " has only " + std::to_string(n) + " coordinates");
          for (std::size_t c : rng.subset(n, count)) pat.erase(node, c + 1);
        }
      } else {
        throw Error(ErrorCode::parameter, "corrupt needs --pattern or --per-node");
      }
      for (std::size_t i = 0; i < cw.size(); ++i)
        for (std::size_t c = 0; c < cw[i].size(); ++c)
          if (pat.erased[i][c]) cw[i][c] = 0;
      write_file(out_path, pack_symbols(field, cw));
      const std::string pj = pattern_to_json(pat);
      if (!pattern_out.empty()) write_file(pattern_out, pj + "\n");
      if (human) {
        for (int i = 1; i <= code.size(); ++i)
          if (pat.count(i)) fmt::print("node {}: {} erased\n", i, pat.count(i));
      } else {
        std::cout << pj << "\n";
      }
      return exit_ok;
    }

    if (dec->parsed() || sim->parsed()) {
      const CodewordSet cw = load_codewords(code, codewords_path);
      const ErasurePattern pat = pattern_from_json(code, read_file(pattern_path));
      const bool timed = sim->parsed();
      const RecoveryReport rep = timed ? simulate_recovery(code, cw, pat) : hierarchical_decode(code, cw, pat);
      if (!trace_path.empty()) write_file(trace_path, trace_text(rep));
      if (!messages_out.empty()) {
        MessageSet m;
        for (int i = 1; i <= code.size(); ++i)
          m.push_back(rep.recovered(i) ? rep.node(i).message : Message(code.topology().node(i).k, 0));
        write_file(messages_out, pack_symbols(field, m));
      }
      if (human)
        print_report_table(rep, timed);
      else
        print_json(report_json(rep, timed));
      return rep.failed_count() ? exit_failed_nodes : exit_ok;
    }

    if (val->parsed()) {
      const ValidationReport rep = sweep_validate(code, parse_budget(budget), seed, jobs);
      if (human) {
        fmt::print("{:>4} {:>5} {:<12} {:>3} {:>6} {:>5} {:>8} {:>8} {:>6} {:>6} {}\n", "node", "level", "W", "e",
                   "lambda", "probe", "tested", "passed", "failed", "oracle", "sampled");
        for (const auto& s : rep.strata)
          fmt::print("{:>4} {:>5} {:<12} {:>3} {:>6} {:>5} {:>8} {:>8} {:>6} {:>6} {}\n", s.node, s.level,
                     set_text(s.W), s.erasures, s.lambda, s.probe ? "yes" : "", s.tested, s.passed, s.failed,
                     s.oracle_determined, s.sampled ? "yes" : "");
        fmt::print("guaranteed failures: {}  soundness violations: {}\n", rep.guaranteed_failures(),
                   rep.soundness_violations());
      } else {
        ojson strata = ojson::array();
        for (const auto& s : rep.strata)
          strata.push_back({{"node", s.node},
                            {"level", s.level},
                            {"W", s.W},
                            {"erasures", s.erasures},
                            {"lambda", s.lambda},
                            {"probe", s.probe},
                            {"sampled", s.sampled},
                            {"tested", s.tested},
                            {"passed", s.passed},
                            {"failed", s.failed},
                            {"oracle_determined", s.oracle_determined},
                            {"soundness_violations", s.soundness_violations}});
        print_json({{"strata", strata},
                    {"guaranteed_failures", rep.guaranteed_failures()},
                    {"soundness_violations", rep.soundness_violations()}});
      }
      return rep.guaranteed_failures() || rep.soundness_violations() ? exit_failed_nodes : exit_ok;
    }
  } catch (const Error& e) {
    emit_error(std::string(error_code_name(e.code())), e.what());
    return exit_invalid;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return exit_invalid;
  }
  return exit_ok;
}
