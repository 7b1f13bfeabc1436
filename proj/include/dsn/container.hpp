#pragma once

#include <string>

#include "dsn/codegen.hpp"
#include "dsn/config.hpp"

namespace dsn {

/// Builds the code described by a config. The field comes from the config when given,
/// otherwise the smallest one that fits.
CodeInstance build_code(const Config& cfg, ConstructionKind kind);

struct LoadedCode {
  Config config;  // theta and modulus always filled in
  CodeInstance code;
};

/// Binary container: header (magic "DSNC", version, theta, modulus, p, kind), node parameter
/// table, canonical config JSON, element assignments and row-major block payloads.
/// All integers little-endian.
std::string save_container(const CodeInstance& code, const Config& cfg);
/// Rebuilds from the embedded config and checks every stored element and block against it.
LoadedCode load_container(const std::string& bytes);

void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

}  // namespace dsn
