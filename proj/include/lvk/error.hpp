#pragma once

#include <stdexcept>
#include <string>

namespace lvk {

enum class ErrorCode {
  MalformedToken = 1,
  LabelArity,
  RoleClash,
  UnknownLabel,
  IllegalMove,
  NotACutPoint,
  InvalidStructure,
  InvalidTraversal,
  NonIntegralGenus,
  InvalidBudget,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace lvk
