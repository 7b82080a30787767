#pragma once

#include <stdexcept>
#include <string>

namespace aps {

// Error categories surfaced as CLI exit codes.
enum class errc {
  parse,
  precondition,
  dimension,
  resource,
  internal,
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw error(kind, msg); }

inline void require(bool cond, errc kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace aps
