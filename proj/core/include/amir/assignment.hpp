#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace amir {

/// Label used in reports and files for a document without a topic.
inline constexpr std::string_view kUnknownTopic = "Unknown";

/// Top-two topic assignment of one document. An absent label means Unknown.
struct TopicAssignment {
  std::string doc_id;
  std::optional<std::string> primary;
  std::optional<std::string> secondary;
  double primary_prob = 0.0;
  double secondary_prob = 0.0;

  bool known() const noexcept { return primary.has_value(); }
  bool has_pair() const noexcept { return primary.has_value() && secondary.has_value(); }

  friend bool operator==(const TopicAssignment&, const TopicAssignment&) = default;
};

inline std::string label_or_unknown(const std::optional<std::string>& label) {
  return label ? *label : std::string(kUnknownTopic);
}

}  // namespace amir
