#ifndef MPV_ERROR_HPP
#define MPV_ERROR_HPP

#include <chrono>
#include <stdexcept>
#include <string>

namespace mpv {

enum class Errc {
  DivisionByZero,
  MixedFields,
  BadReduction,
  ZeroPolynomial,
  DuplicateName,
  BadArity,
  NotHomogeneous,
  MixedRings,
  InhomogeneousImages,
  ZeroVector,
  ZeroDivisorInput,
  ZeroIdealDivisor,
  UnitIdeal,
  NotMonomial,
  DegreeMismatch,
  EmptyVariety,
  UnsupportedClass,
  SamplingFailed,
  ZeroRepresentative,
  InhomogeneousForms,
  TargetMismatch,
  ShapeMismatch,
  NotComposable,
  RestrictionUndefined,
  NonIntegralDegree,
  NotBirational,
  NeedsFiniteField,
  ExponentOverflow,
  ParseError,
  Timeout,
  TypeError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::MixedFields: return "MixedFields";
    case Errc::BadReduction: return "BadReduction";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::BadArity: return "BadArity";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::MixedRings: return "MixedRings";
    case Errc::InhomogeneousImages: return "InhomogeneousImages";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::ZeroDivisorInput: return "ZeroDivisorInput";
    case Errc::ZeroIdealDivisor: return "ZeroIdealDivisor";
    case Errc::UnitIdeal: return "UnitIdeal";
    case Errc::NotMonomial: return "NotMonomial";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::EmptyVariety: return "EmptyVariety";
    case Errc::UnsupportedClass: return "UnsupportedClass";
    case Errc::SamplingFailed: return "SamplingFailed";
    case Errc::ZeroRepresentative: return "ZeroRepresentative";
    case Errc::InhomogeneousForms: return "InhomogeneousForms";
    case Errc::TargetMismatch: return "TargetMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotComposable: return "NotComposable";
    case Errc::RestrictionUndefined: return "RestrictionUndefined";
    case Errc::NonIntegralDegree: return "NonIntegralDegree";
    case Errc::NotBirational: return "NotBirational";
    case Errc::NeedsFiniteField: return "NeedsFiniteField";
    case Errc::ExponentOverflow: return "ExponentOverflow";
    case Errc::ParseError: return "ParseError";
    case Errc::Timeout: return "Timeout";
    case Errc::TypeError: return "TypeError";
  }
  return "Error";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Cooperative per-thread deadline, polled by the long-running loops.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  static void set(double seconds) {
    slot() = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(seconds));
    armed() = true;
  }
  static void clear() { armed() = false; }
  static void check() {
    if (armed() && Clock::now() > slot()) {
      armed() = false;
      throw Error(Errc::Timeout, "statement exceeded its time budget");
    }
  }

 private:
  static Clock::time_point& slot() {
    thread_local Clock::time_point t{};
    return t;
  }
  static bool& armed() {
    thread_local bool a = false;
    return a;
  }
};

}  // namespace mpv

#endif  // MPV_ERROR_HPP
