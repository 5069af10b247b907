#pragma once

#include <stdexcept>
#include <string>

namespace fuzzybm {

using InvalidArgument = std::invalid_argument;

// Requested operation is outside what the representation can compute exactly
// (e.g. exact Hausdorff in d >= 3, enumeration on bodies without vertices).
class Unsupported : public std::logic_error {
 public:
  explicit Unsupported(const std::string& what) : std::logic_error(what) {}
};

// Enumeration or allocation would exceed a configured cap.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fuzzybm
