#ifndef NLSW_ERRORS_HPP
#define NLSW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlsw {

enum class ErrorCode {
  InvalidArgument,
  GridMismatch,
  ReprMismatch,
  SolveDegenerate,
  NonFinite,
  SingularStageSystem,
  Io,
  Unsupported,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace nlsw

#endif
