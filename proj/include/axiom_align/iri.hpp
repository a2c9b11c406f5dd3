#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace axiom_align {

/// Absolute identifier of an ontology entity. Never empty, never contains
/// whitespace; the constructor throws ModelError otherwise.
class Iri {
 public:
  explicit Iri(std::string full);

  const std::string& full() const noexcept { return full_; }

  /// Local name: the text after the last '#' or '/'. Falls back to the whole
  /// IRI when there is no separator or nothing follows it.
  std::string_view fragment() const noexcept;

  auto operator<=>(const Iri&) const = default;
  bool operator==(const Iri&) const = default;

 private:
  std::string full_;
};

enum class EntityKind { Class, ObjectProperty, DataProperty };

std::string_view to_string(EntityKind kind) noexcept;

/// Identifies which of the two input ontologies an entity or axiom came from.
enum class Side { First, Second };

}  // namespace axiom_align

template <>
struct std::hash<axiom_align::Iri> {
  std::size_t operator()(const axiom_align::Iri& iri) const noexcept {
    return std::hash<std::string>{}(iri.full());
  }
};
