#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "axiom_align/iri.hpp"

namespace axiom_align {

/// Recursive description-logic class expression.
///
/// The shape depends on kind():
///   Named        iri() is the class
///   ObjectSome   iri() is the property, operands()[0] the filler
///   ObjectAll    iri() is the property, operands()[0] the filler
///   DataSome     iri() is the property, datatype() the filler
///   Union        operands() has at least two entries
///   Intersection operands() has at least two entries
///   Complement   operands()[0] is the complemented expression
///
/// Instances are built through the static factories, which enforce these
/// shapes. Expressions are values: copying duplicates the tree.
class ClassExpression {
 public:
  enum class Kind { Named, ObjectSome, ObjectAll, DataSome, Union, Intersection, Complement };

  static ClassExpression named(Iri cls);
  static ClassExpression object_some(Iri property, ClassExpression filler);
  static ClassExpression object_all(Iri property, ClassExpression filler);
  static ClassExpression data_some(Iri property, Iri datatype);
  static ClassExpression union_of(std::vector<ClassExpression> operands);
  static ClassExpression intersection_of(std::vector<ClassExpression> operands);
  static ClassExpression complement_of(ClassExpression operand);

  Kind kind() const noexcept { return kind_; }
  bool is_named() const noexcept { return kind_ == Kind::Named; }

  /// Class IRI for Named, property IRI for the restrictions. Throws
  /// std::logic_error for the boolean constructors.
  const Iri& iri() const;
  const Iri& datatype() const;
  std::span<const ClassExpression> operands() const noexcept { return operands_; }
  const ClassExpression& filler() const;

  /// Same expression with Union/Intersection operands sorted recursively, so
  /// that expressions differing only in operand order compare equal.
  ClassExpression canonical() const;

  std::size_t depth() const noexcept;

  friend bool operator==(const ClassExpression& a, const ClassExpression& b);
  friend std::strong_ordering operator<=>(const ClassExpression& a, const ClassExpression& b);

 private:
  ClassExpression(Kind kind, std::optional<Iri> iri, std::optional<Iri> datatype,
                  std::vector<ClassExpression> operands);

  Kind kind_;
  std::optional<Iri> iri_;
  std::optional<Iri> datatype_;
  std::vector<ClassExpression> operands_;
};

/// Functional-syntax rendering with full IRIs in angle brackets, used in logs
/// and diagnostics.
std::string to_string(const ClassExpression& ce);

}  // namespace axiom_align
