#pragma once

#include <stdexcept>
#include <string>

namespace coiso {

enum class ErrorCode {
    ChartMismatch,
    UnknownCoordinate,
    DimensionMismatch,
    InvalidArgument,
    NotVertical,
    CapExceeded,
    Degenerate,
    NonAffine,
    DomainViolation,
    NotClosed,
    JetOrderTooSmall,
    KernelCheck,
    WrongDegree,
    Parse,
    Io,
};

const char *to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace coiso
