#pragma once

#include <stdexcept>
#include <string>

namespace sbforge {

enum class Errc {
  NotPrime,
  DivisibilityFails,
  Unsupported,
  Singular,
  InternalSearchExhausted,
  NotInNormalizer,
  BoundExceeded,
  BudgetExceeded,
  NotRegular,
  ClosureMismatch,
  NoCanonicalForm,
  NotAGroup,
  BadConfig,
  BadFile,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::DivisibilityFails: return "DivisibilityFails";
    case Errc::Unsupported: return "Unsupported";
    case Errc::Singular: return "Singular";
    case Errc::InternalSearchExhausted: return "InternalSearchExhausted";
    case Errc::NotInNormalizer: return "NotInNormalizer";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotRegular: return "NotRegular";
    case Errc::ClosureMismatch: return "ClosureMismatch";
    case Errc::NoCanonicalForm: return "NoCanonicalForm";
    case Errc::NotAGroup: return "NotAGroup";
    case Errc::BadConfig: return "BadConfig";
    case Errc::BadFile: return "BadFile";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace sbforge
