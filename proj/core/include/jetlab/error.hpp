#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jetlab {

enum class ErrorCode {
  InvalidArgument,
  NoNeighbor,
  EmptyMask,
  MaskMismatch,
  DepthTooLarge,
  ResolutionTooCoarse,
  PointOutsideRegion,
  ProbeOutsideMask,
  UnsupportedDomain,
  CoverGap,
  NotAnExtension,
  ReplayMismatch,
  Io,
  Parse,
};

std::string_view toString(ErrorCode code) noexcept;

// All library failures surface as jetlab::Error; code() identifies the
// contract violation named in the operation's error list.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(toString(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jetlab
