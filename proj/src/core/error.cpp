#include "rslab/error.hpp"

namespace rslab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Argument: return "argument error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Data: return "data error";
    case ErrorKind::Resource: return "resource error";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Pole: return "pole error";
  }
  return "error";
}

}  // namespace rslab
