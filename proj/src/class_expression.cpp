#include "axiom_align/class_expression.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "axiom_align/error.hpp"

namespace axiom_align {

ClassExpression::ClassExpression(Kind kind, std::optional<Iri> iri, std::optional<Iri> datatype,
                                 std::vector<ClassExpression> operands)
    : kind_(kind), iri_(std::move(iri)), datatype_(std::move(datatype)),
      operands_(std::move(operands)) {}

ClassExpression ClassExpression::named(Iri cls) {
  return ClassExpression(Kind::Named, std::move(cls), std::nullopt, {});
}

ClassExpression ClassExpression::object_some(Iri property, ClassExpression filler) {
  std::vector<ClassExpression> ops;
  ops.push_back(std::move(filler));
  return ClassExpression(Kind::ObjectSome, std::move(property), std::nullopt, std::move(ops));
}

ClassExpression ClassExpression::object_all(Iri property, ClassExpression filler) {
  std::vector<ClassExpression> ops;
  ops.push_back(std::move(filler));
  return ClassExpression(Kind::ObjectAll, std::move(property), std::nullopt, std::move(ops));
}

ClassExpression ClassExpression::data_some(Iri property, Iri datatype) {
  return ClassExpression(Kind::DataSome, std::move(property), std::move(datatype), {});
}

ClassExpression ClassExpression::union_of(std::vector<ClassExpression> operands) {
  if (operands.size() < 2) throw ModelError("ObjectUnionOf needs at least two operands");
  return ClassExpression(Kind::Union, std::nullopt, std::nullopt, std::move(operands));
}

ClassExpression ClassExpression::intersection_of(std::vector<ClassExpression> operands) {
  if (operands.size() < 2) throw ModelError("ObjectIntersectionOf needs at least two operands");
  return ClassExpression(Kind::Intersection, std::nullopt, std::nullopt, std::move(operands));
}

ClassExpression ClassExpression::complement_of(ClassExpression operand) {
  std::vector<ClassExpression> ops;
  ops.push_back(std::move(operand));
  return ClassExpression(Kind::Complement, std::nullopt, std::nullopt, std::move(ops));
}

const Iri& ClassExpression::iri() const {
  if (!iri_) throw std::logic_error("class expression has no IRI");
  return *iri_;
}

const Iri& ClassExpression::datatype() const {
  if (!datatype_) throw std::logic_error("class expression has no datatype");
  return *datatype_;
}

const ClassExpression& ClassExpression::filler() const {
  if (kind_ != Kind::ObjectSome && kind_ != Kind::ObjectAll && kind_ != Kind::Complement) {
    throw std::logic_error("class expression has no single filler");
  }
  return operands_.front();
}

ClassExpression ClassExpression::canonical() const {
  std::vector<ClassExpression> ops;
  ops.reserve(operands_.size());
  for (const auto& op : operands_) ops.push_back(op.canonical());
  if (kind_ == Kind::Union || kind_ == Kind::Intersection) std::sort(ops.begin(), ops.end());
  return ClassExpression(kind_, iri_, datatype_, std::move(ops));
}

std::size_t ClassExpression::depth() const noexcept {
  std::size_t deepest = 0;
  for (const auto& op : operands_) deepest = std::max(deepest, op.depth());
  return deepest + 1;
}

bool operator==(const ClassExpression& a, const ClassExpression& b) {
  return a.kind_ == b.kind_ && a.iri_ == b.iri_ && a.datatype_ == b.datatype_ &&
         a.operands_ == b.operands_;
}

std::strong_ordering operator<=>(const ClassExpression& a, const ClassExpression& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.iri_ <=> b.iri_; c != 0) return c;
  if (auto c = a.datatype_ <=> b.datatype_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.operands_.begin(), a.operands_.end(),
                                                b.operands_.begin(), b.operands_.end());
}

namespace {

void render(const ClassExpression& ce, std::string& out) {
  auto ref = [&out](const Iri& iri) {
    out += '<';
    out += iri.full();
    out += '>';
  };
  auto list = [&](const char* head) {
    out += head;
    out += '(';
    bool first = true;
    for (const auto& op : ce.operands()) {
      if (!first) out += ' ';
      first = false;
      render(op, out);
    }
    out += ')';
  };
  switch (ce.kind()) {
    case ClassExpression::Kind::Named:
      ref(ce.iri());
      break;
    case ClassExpression::Kind::ObjectSome:
    case ClassExpression::Kind::ObjectAll:
      out += ce.kind() == ClassExpression::Kind::ObjectSome ? "ObjectSomeValuesFrom("
                                                             : "ObjectAllValuesFrom(";
      ref(ce.iri());
      out += ' ';
      render(ce.filler(), out);
      out += ')';
      break;
    case ClassExpression::Kind::DataSome:
      out += "DataSomeValuesFrom(";
      ref(ce.iri());
      out += ' ';
      ref(ce.datatype());
      out += ')';
      break;
    case ClassExpression::Kind::Union: list("ObjectUnionOf"); break;
    case ClassExpression::Kind::Intersection: list("ObjectIntersectionOf"); break;
    case ClassExpression::Kind::Complement: list("ObjectComplementOf"); break;
  }
}

}  // namespace

std::string to_string(const ClassExpression& ce) {
  std::string out;
  render(ce, out);
  return out;
}

}  // namespace axiom_align
