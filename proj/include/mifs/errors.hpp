#pragma once

#include <stdexcept>
#include <string>

namespace mifs {

// Error categories map 1:1 onto CLI exit codes.
enum class ErrCode {
  usage = 2,     // bad invocation / arguments
  instance = 3,  // invalid instance, map or matrix data
  guard = 4,     // resource caps, resolution guards, empty-set guards
  internal = 5,  // broken invariant; always a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrCode code_;
};

struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(ErrCode::usage, msg) {}
};

struct InstanceError : Error {
  explicit InstanceError(const std::string& msg) : Error(ErrCode::instance, msg) {}
};

struct GuardError : Error {
  explicit GuardError(const std::string& msg) : Error(ErrCode::guard, msg) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& msg) : Error(ErrCode::internal, msg) {}
};

}  // namespace mifs
