#include "disasteller/toolkit/interpret_image.hpp"

#include <stdexcept>

#include "disasteller/core/text.hpp"

namespace disasteller::toolkit {

const char* const kInterpretSystemPrompt =
    "You are an image interpretation tool supporting post-disaster assessment. "
    "Describe only what is visible in the attached image: building types and "
    "materials, structural damage, collapse, fire, debris, and the condition of "
    "roads and bridges. Be concise and factual; do not speculate beyond the image.";

std::string interpret_image(gateway::ModelBackend& backend,
                            std::span<const std::uint8_t> image,
                            const std::string& instruction,
                            const InterpretOptions& options) {
  auto part = gateway::make_image_part(image);
  if (core::trim(instruction).empty()) {
    throw std::invalid_argument("interpret_image needs a non-empty instruction");
  }
  gateway::ModelRequest req;
  req.stage = options.stage;
  req.model_id = options.model_id;
  req.temperature = options.temperature;
  req.max_output_tokens = options.max_output_tokens;
  req.messages.push_back(gateway::Message::system(kInterpretSystemPrompt));
  auto user = gateway::Message::user(instruction);
  user.parts.emplace_back(std::move(part));
  req.messages.push_back(std::move(user));
  return backend.complete(req).text;
}

}  // namespace disasteller::toolkit
