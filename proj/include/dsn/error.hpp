#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsn {

enum class ErrorCode {
  context_mismatch,
  division_by_zero,
  capacity,
  not_irreducible,
  distinctness,
  dimension,
  schema,
  coop_not_subset,
  delta_not_below_r,
  empty_coop,
  unknown_node,
  self_loop,
  bad_latency,
  duplicate_edge,
  unreachable,
  malformed_cycle,
  level_too_small,
  position_conflict,
  missing_gamma,
  incompatible_graph,
  field_too_small,
  negative_local_capability,
  padding_overflow,
  parameter,
  domain,
  inconsistent,
  io,
  format,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries a stable machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dsn
