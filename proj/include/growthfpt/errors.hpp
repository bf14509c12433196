#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace growthfpt {

/// Failure categories reported by every module of the library.
enum class Errc {
  InvalidParams,
  DomainError,
  OrderError,
  NonPositiveState,
  NoConvergence,
  GridError,
  StartOnBoundary,
  StartOutsideBand,
  SeriesDivergence,
  BandCrossing,
  ConfigError,
  EmptySample,
  ParseError,
  ValidationError,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::DomainError: return "DomainError";
    case Errc::OrderError: return "OrderError";
    case Errc::NonPositiveState: return "NonPositiveState";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::GridError: return "GridError";
    case Errc::StartOnBoundary: return "StartOnBoundary";
    case Errc::StartOutsideBand: return "StartOutsideBand";
    case Errc::SeriesDivergence: return "SeriesDivergence";
    case Errc::BandCrossing: return "BandCrossing";
    case Errc::ConfigError: return "ConfigError";
    case Errc::EmptySample: return "EmptySample";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, Errc code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace growthfpt
