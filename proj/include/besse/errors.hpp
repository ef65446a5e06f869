// Error type shared by all besse_lab modules.

#ifndef BESSE_ERRORS_HPP_
#define BESSE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace besse {

enum class Errc {
  ParseError,
  InvalidSignature,
  AlreadyOrientable,
  NotBesse,
  ClosureOverflow,
  UnrecognizedGroup,
  InvalidLabel,
  NotCoprime,
  NotEmbeddable,
  Incompatible,
  InconsistentFlags,
  ProfileOutOfRange,
  PoleSingular,
  StepFailure,
  QuadratureFailure,
  NotPositive,
  NotEven,
  InvalidArgument,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidSignature: return "InvalidSignature";
    case Errc::AlreadyOrientable: return "AlreadyOrientable";
    case Errc::NotBesse: return "NotBesse";
    case Errc::ClosureOverflow: return "ClosureOverflow";
    case Errc::UnrecognizedGroup: return "UnrecognizedGroup";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotEmbeddable: return "NotEmbeddable";
    case Errc::Incompatible: return "Incompatible";
    case Errc::InconsistentFlags: return "InconsistentFlags";
    case Errc::ProfileOutOfRange: return "ProfileOutOfRange";
    case Errc::PoleSingular: return "PoleSingular";
    case Errc::StepFailure: return "StepFailure";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::NotPositive: return "NotPositive";
    case Errc::NotEven: return "NotEven";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const noexcept { return code_; }
private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

} // namespace besse

#endif
