#include "absolve/error.hpp"

namespace absolve {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::pole: return "pole";
    case ErrorCode::domain: return "domain error";
    case ErrorCode::sector: return "sector violation";
    case ErrorCode::existence: return "no bound state";
    case ErrorCode::convergence: return "convergence failure";
    case ErrorCode::resolution: return "insufficient resolution";
    case ErrorCode::io: return "I/O error";
  }
  return "unknown error";
}

}  // namespace absolve
