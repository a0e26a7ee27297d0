#pragma once

#include <stdexcept>
#include <string>

namespace mcsa {

// Failure categories surfaced by the library. The CLI maps any of these to
// exit code 1 with the message on stderr.
enum class Errc {
  EmptySignal,
  NonFiniteSample,
  BandOutOfRange,
  EmptyBand,
  FundamentalNotFound,
  FundamentalMagnitudeZero,
  BinTooNarrow,
  DimensionTooSmall,
  OrderOutOfRange,
  EmptyGrid,
  LengthMismatch,
  SampleRateMismatch,
  ZeroReferenceNorm,
  EvenNws,
  EvenK,
  InvalidParams,
  NyquistViolation,
  ParseError,
  UnknownPreset,
  IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace mcsa
