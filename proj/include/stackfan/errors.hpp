#pragma once
#include <stdexcept>
#include <string>

namespace stackfan {

// Error taxonomy shared by every module; the CLI maps each class onto an
// exit status (math_error -> 1, resource_limit -> 2, input_error -> 3).

// A well-formed input that the mathematics rejects: non-smooth fan where
// smoothness is required, no shelling order, infinite index, unsupported
// non-split extension, failed basis verification, ...
struct math_error : std::runtime_error {
  explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

// A configurable budget (Groebner reduction steps) was exhausted.  The
// engine never silently truncates; it throws this instead.
struct resource_limit : std::runtime_error {
  explicit resource_limit(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input documents: syntax errors (with line/column) and schema
// violations (naming the offending field).
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stackfan
