#include "lvk/error.hpp"

namespace lvk {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedToken: return "MalformedToken";
    case ErrorCode::LabelArity: return "LabelArity";
    case ErrorCode::RoleClash: return "RoleClash";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::NotACutPoint: return "NotACutPoint";
    case ErrorCode::InvalidStructure: return "InvalidStructure";
    case ErrorCode::InvalidTraversal: return "InvalidTraversal";
    case ErrorCode::NonIntegralGenus: return "NonIntegralGenus";
    case ErrorCode::InvalidBudget: return "InvalidBudget";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace lvk
