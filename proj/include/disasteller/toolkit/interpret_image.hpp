#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "disasteller/gateway/backend.hpp"

namespace disasteller::toolkit {

struct InterpretOptions {
  std::string model_id;
  double temperature = 0.7;
  int max_output_tokens = 1024;
  std::string stage = "tool:interpret_image";
};

/// System prompt of the image interpretation tool.
extern const char* const kInterpretSystemPrompt;

/// One completion with the image attached to the instruction; returns the
/// model text verbatim. Throws UndecodableImage before any call when the
/// bytes are not a PNG/JPEG; gateway errors propagate.
std::string interpret_image(gateway::ModelBackend& backend,
                            std::span<const std::uint8_t> image,
                            const std::string& instruction,
                            const InterpretOptions& options = {});

}  // namespace disasteller::toolkit
