#pragma once

#include <stdexcept>
#include <string>

namespace sbpp {

enum class ErrorCode {
  ok = 0,
  invalid_argument = 1,
  dimension_mismatch = 2,
  not_spd = 3,
  ill_conditioned = 4,
  constraint_violation = 5,
  io_error = 6,
  config_error = 7,
  internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace sbpp
