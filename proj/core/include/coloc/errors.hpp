#pragma once

#include <stdexcept>
#include <string>

namespace coloc {

// Raised when a trellis cannot be built, e.g. a frame ends up with no
// usable box after dead ends are removed.
struct TrellisError : std::runtime_error {
  explicit TrellisError(const std::string& what) : std::runtime_error(what) {}
};

struct InstanceIoError : std::runtime_error {
  explicit InstanceIoError(const std::string& what) : std::runtime_error(what) {}
};

// The file announces a format version this reader does not understand.
struct InstanceVersionError : InstanceIoError {
  explicit InstanceVersionError(const std::string& what) : InstanceIoError(what) {}
};

// The file is structurally broken: missing sections, bad counts, unparsable
// numbers, truncation.
struct InstanceFormatError : InstanceIoError {
  explicit InstanceFormatError(const std::string& what) : InstanceIoError(what) {}
};

// The content checksum recorded in the file does not match the bytes read.
struct InstanceChecksumError : InstanceIoError {
  explicit InstanceChecksumError(const std::string& what) : InstanceIoError(what) {}
};

}  // namespace coloc
