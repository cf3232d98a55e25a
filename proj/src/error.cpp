#include "mubchan/error.hpp"

namespace mubchan {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPSD: return "NotPSD";
    case Errc::NotDensity: return "NotDensity";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BadDimension: return "BadDimension";
    case Errc::IncompleteFamily: return "IncompleteFamily";
    case Errc::NotCP: return "NotCP";
    case Errc::ParamOutOfRange: return "ParamOutOfRange";
    case Errc::BadWeights: return "BadWeights";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::NotDiagonal: return "NotDiagonal";
    case Errc::BadP: return "BadP";
    case Errc::BadParams: return "BadParams";
    case Errc::Usage: return "UsageError";
  }
  return "Error";
}

}  // namespace mubchan
