#pragma once

#include <stdexcept>
#include <string>

namespace vpk {

// Messages start with the error kind so callers (and the CLI) can match on it.
class Error : public std::runtime_error {
 public:
  Error(const std::string& kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(kind) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define VPK_DEFINE_ERROR(Name)                                       \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

VPK_DEFINE_ERROR(ShapeMismatch);
VPK_DEFINE_ERROR(NonPositiveDepth);
VPK_DEFINE_ERROR(DegenerateInput);
VPK_DEFINE_ERROR(DegenerateConfiguration);
VPK_DEFINE_ERROR(ZeroLengthPart);
VPK_DEFINE_ERROR(ConfigError);
VPK_DEFINE_ERROR(NonFiniteLoss);
VPK_DEFINE_ERROR(IoError);

#undef VPK_DEFINE_ERROR

}  // namespace vpk
