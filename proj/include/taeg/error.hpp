#pragma once

#include <stdexcept>
#include <string>

namespace taeg {

// Coarse failure classes. The CLI maps them onto its exit codes.
enum class ErrorKind {
  Usage,  // bad parameters or configuration (exit 1)
  Io,     // unreadable or unwritable files (exit 2)
  Data,   // schema or invariant violations in inputs (exit 3)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define TAEG_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

TAEG_DEFINE_ERROR(IoError, Io)
TAEG_DEFINE_ERROR(SchemaError, Data)
TAEG_DEFINE_ERROR(InvariantError, Data)
TAEG_DEFINE_ERROR(MalformedRef, Data)
TAEG_DEFINE_ERROR(OverlapError, Data)
TAEG_DEFINE_ERROR(EmptyCorpus, Data)
TAEG_DEFINE_ERROR(EmptyTimeline, Data)
TAEG_DEFINE_ERROR(NoVersions, Data)
TAEG_DEFINE_ERROR(NegativeWeight, Data)
TAEG_DEFINE_ERROR(NonStochastic, Data)
TAEG_DEFINE_ERROR(MissingScore, Data)
TAEG_DEFINE_ERROR(KTooLarge, Data)
TAEG_DEFINE_ERROR(EmptyReference, Data)
TAEG_DEFINE_ERROR(ConfigError, Usage)

#undef TAEG_DEFINE_ERROR

}  // namespace taeg
