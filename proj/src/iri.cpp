#include "axiom_align/iri.hpp"

#include <algorithm>
#include <cctype>

#include "axiom_align/error.hpp"

namespace axiom_align {

Iri::Iri(std::string full) : full_(std::move(full)) {
  if (full_.empty()) throw ModelError("IRI must not be empty");
  if (std::any_of(full_.begin(), full_.end(),
                  [](unsigned char ch) { return std::isspace(ch) != 0; })) {
    throw ModelError("IRI contains whitespace: '" + full_ + "'");
  }
}

std::string_view Iri::fragment() const noexcept {
  std::string_view view = full_;
  auto cut = view.find_last_of("#/");
  if (cut == std::string_view::npos || cut + 1 == view.size()) return view;
  return view.substr(cut + 1);
}

std::string_view to_string(EntityKind kind) noexcept {
  switch (kind) {
    case EntityKind::Class: return "class";
    case EntityKind::ObjectProperty: return "object-property";
    case EntityKind::DataProperty: return "data-property";
  }
  return "unknown";
}

}  // namespace axiom_align
