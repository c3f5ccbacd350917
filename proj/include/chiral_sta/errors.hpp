#pragma once

#include <stdexcept>
#include <string>

namespace chiral_sta {

// Base class for all library errors. Carries a stable kind tag so callers
// (CLI exit codes, sweep status markers) can dispatch without string matching.
class SimError : public std::runtime_error {
 public:
  enum class Kind {
    Validation,          // bad parameters / inconsistent scenario
    ScheduleUndefined,   // mixing angle undefined (both pulses zero)
    SingularSchedule,    // cot(beta) blow-up past the amplitude ceiling
    FrameUndefined,      // adiabatic frame at Omega = 0
    IntegrationDiverged, // norm / trace / positivity drift past tolerance
    Lookup,              // unknown registry or axis name
    Parse,               // scenario / sweep file rejected
  };

  SimError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

  const char* kind_name() const {
    switch (kind_) {
      case Kind::Validation: return "validation";
      case Kind::ScheduleUndefined: return "schedule-undefined";
      case Kind::SingularSchedule: return "singular-schedule";
      case Kind::FrameUndefined: return "frame-undefined";
      case Kind::IntegrationDiverged: return "integration-diverged";
      case Kind::Lookup: return "lookup";
      case Kind::Parse: return "parse";
    }
    return "unknown";
  }

 private:
  Kind kind_;
};

class ValidationError : public SimError {
 public:
  explicit ValidationError(std::string message)
      : SimError(Kind::Validation, std::move(message)) {}
};

class ScheduleError : public SimError {
 public:
  ScheduleError(Kind kind, std::string message, double t)
      : SimError(kind, std::move(message)), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

class FrameError : public SimError {
 public:
  FrameError(std::string message, double t)
      : SimError(Kind::FrameUndefined, std::move(message)), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

class IntegrationError : public SimError {
 public:
  IntegrationError(std::string message, double t)
      : SimError(Kind::IntegrationDiverged, std::move(message)), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

class LookupError : public SimError {
 public:
  explicit LookupError(std::string message)
      : SimError(Kind::Lookup, std::move(message)) {}
};

class ParseError : public SimError {
 public:
  explicit ParseError(std::string message)
      : SimError(Kind::Parse, std::move(message)) {}
};

}  // namespace chiral_sta
