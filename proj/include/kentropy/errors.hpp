#pragma once

#include <stdexcept>
#include <string>

namespace kentropy {

// Error taxonomy shared by the library and the CLI exit-code mapping.
// Generic precondition violations use std::invalid_argument; internal
// postcondition failures use std::logic_error.

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ChannelError : std::runtime_error {
  explicit ChannelError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TypicalityFloorError : std::runtime_error {
  explicit TypicalityFloorError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TauMinError : std::runtime_error {
  explicit TauMinError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kentropy
