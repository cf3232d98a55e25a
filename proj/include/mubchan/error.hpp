#pragma once

#include <stdexcept>
#include <string>

namespace mubchan {

enum class Errc {
  NonSquare,
  NotHermitian,
  NotPSD,
  NotDensity,
  DimensionMismatch,
  BadDimension,
  IncompleteFamily,
  NotCP,
  ParamOutOfRange,
  BadWeights,
  WrongDimension,
  NotDiagonal,
  BadP,
  BadParams,
  Usage,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mubchan
