#include "txinfer/diagnostics.hpp"

namespace txinfer {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorKind::UnknownImport: return "UnknownImport";
    case ErrorKind::DuplicateClass: return "DuplicateClass";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::UnknownMember: return "UnknownMember";
    case ErrorKind::UnknownType: return "UnknownType";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::Untypable: return "Untypable";
    case ErrorKind::DescriptorCollision: return "DescriptorCollision";
    case ErrorKind::Config: return "Config";
  }
  return "Error";
}

bool is_front_end_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnsupportedFeature:
    case ErrorKind::UnknownImport:
    case ErrorKind::DuplicateClass:
    case ErrorKind::Config:
      return true;
    default:
      return false;
  }
}

CompileError::CompileError(ErrorKind kind, std::string message, SourcePos pos)
    : std::runtime_error(message), kind_(kind), message_(std::move(message)), pos_(pos) {}

std::string CompileError::format(std::string_view file) const {
  std::string out(file);
  if (pos_.known()) {
    out += ":" + std::to_string(pos_.line) + ":" + std::to_string(pos_.column);
  }
  out += ": error[";
  out += error_kind_name(kind_);
  out += "]: ";
  out += message_;
  return out;
}

}  // namespace txinfer
