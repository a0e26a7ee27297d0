#include "mcsa/errors.hpp"

namespace mcsa {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::EmptySignal: return "EmptySignal";
    case Errc::NonFiniteSample: return "NonFiniteSample";
    case Errc::BandOutOfRange: return "BandOutOfRange";
    case Errc::EmptyBand: return "EmptyBand";
    case Errc::FundamentalNotFound: return "FundamentalNotFound";
    case Errc::FundamentalMagnitudeZero: return "FundamentalMagnitudeZero";
    case Errc::BinTooNarrow: return "BinTooNarrow";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::OrderOutOfRange: return "OrderOutOfRange";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::SampleRateMismatch: return "SampleRateMismatch";
    case Errc::ZeroReferenceNorm: return "ZeroReferenceNorm";
    case Errc::EvenNws: return "EvenNws";
    case Errc::EvenK: return "EvenK";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::NyquistViolation: return "NyquistViolation";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace mcsa
