#include "xmasjump/errors.hpp"

namespace xmasjump {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::MissingFixing: return "MissingFixing";
    case ErrorKind::IncompleteWindow: return "IncompleteWindow";
    case ErrorKind::DegenerateDesign: return "DegenerateDesign";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::TooFewRows: return "TooFewRows";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateDate: return "DuplicateDate";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace xmasjump
