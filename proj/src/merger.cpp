#include "axiom_align/merger.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "axiom_align/error.hpp"
#include "overloaded.hpp"

namespace axiom_align {

using detail::Overloaded;

const Iri& EntityMap::canonical(Side side, const Iri& iri) const {
  const auto& m = side == Side::First ? first : second;
  auto it = m.find(iri);
  return it == m.end() ? iri : it->second;
}

std::string_view to_string(ConflictAction action) noexcept {
  return action == ConflictAction::DroppedAxiom ? "dropped-axiom" : "rewritten-axiom";
}

namespace {

using Rename = std::function<const Iri&(const Iri&)>;

ClassExpression translate(const ClassExpression& ce, const Rename& rename) {
  using K = ClassExpression::Kind;
  auto operands = [&] {
    std::vector<ClassExpression> out;
    for (const auto& op : ce.operands()) out.push_back(translate(op, rename));
    return out;
  };
  switch (ce.kind()) {
    case K::Named:
      return ClassExpression::named(rename(ce.iri()));
    case K::ObjectSome:
      return ClassExpression::object_some(rename(ce.iri()), translate(ce.filler(), rename));
    case K::ObjectAll:
      return ClassExpression::object_all(rename(ce.iri()), translate(ce.filler(), rename));
    case K::DataSome:
      return ClassExpression::data_some(rename(ce.iri()), ce.datatype());
    case K::Union:
      return ClassExpression::union_of(operands());
    case K::Intersection:
      return ClassExpression::intersection_of(operands());
    case K::Complement:
      return ClassExpression::complement_of(translate(ce.operands()[0], rename));
  }
  throw std::logic_error("unhandled class expression kind");
}

Axiom translate(const Axiom& axiom, const Rename& rename) {
  return std::visit(
      Overloaded{
          [&](const SubClassOf& a) -> Axiom {
            return SubClassOf{translate(a.sub, rename), translate(a.sup, rename)};
          },
          [&](const EquivalentClasses& a) -> Axiom {
            return EquivalentClasses{translate(a.first, rename), translate(a.second, rename)};
          },
          [&](const DisjointClasses& a) -> Axiom {
            DisjointClasses out;
            for (const auto& m : a.members) out.members.push_back(rename(m));
            return out;
          },
          [&](const ObjectPropertyDomain& a) -> Axiom {
            return ObjectPropertyDomain{rename(a.property), translate(a.domain, rename)};
          },
          [&](const ObjectPropertyRange& a) -> Axiom {
            return ObjectPropertyRange{rename(a.property), translate(a.range, rename)};
          },
          [&](const DataPropertyDomain& a) -> Axiom {
            return DataPropertyDomain{rename(a.property), translate(a.domain, rename)};
          },
          [&](const DataPropertyRange& a) -> Axiom {
            return DataPropertyRange{rename(a.property), a.datatype};
          },
          [&](const Label& a) -> Axiom { return Label{rename(a.subject), a.text}; },
      },
      axiom);
}

int kind_rank(EntityKind k) { return static_cast<int>(k); }

}  // namespace

EntityMap canonicalize(const Alignment& alignment, const Ontology& o1, const Ontology& o2) {
  if (!is_one_to_one(alignment)) throw MergeError("alignment is not one-to-one");
  EntityMap map;
  std::set<Iri> taken;
  std::set<std::string> taken_names;
  auto claim = [&](const Iri& iri) {
    taken.insert(iri);
    taken_names.insert(std::string(iri.fragment()));
  };
  for (const auto* set : {&o1.classes(), &o1.object_properties(), &o1.data_properties()}) {
    for (const auto& e : *set) {
      map.first.emplace(e, e);
      claim(e);
    }
  }
  for (const auto& c : alignment) {
    auto k1 = o1.kind_of(c.source);
    if (!k1) throw UnknownEntityError(c.source.full());
    auto k2 = o2.kind_of(c.target);
    if (!k2) throw UnknownEntityError(c.target.full());
    if (*k1 != *k2) {
      throw MergeError("cannot unify " + std::string(to_string(*k1)) + " " + c.source.full() +
                       " with " + std::string(to_string(*k2)) + " " + c.target.full());
    }
    map.second.emplace(c.target, c.source);
  }

  std::vector<std::pair<int, Iri>> fresh;
  for (const auto* set : {&o2.classes(), &o2.object_properties(), &o2.data_properties()}) {
    for (const auto& e : *set) {
      if (!map.second.contains(e)) fresh.emplace_back(kind_rank(*o2.kind_of(e)), e);
    }
  }
  std::sort(fresh.begin(), fresh.end());
  const std::string ns = default_namespace(o1.iri());
  for (const auto& [_, e] : fresh) {
    std::string base(e.fragment());
    if (base.empty() || base == e.full()) base = "entity";
    std::string name = base;
    for (int n = 2; taken.contains(Iri(ns + name)) || taken_names.contains(name); ++n) {
      name = base + "_" + std::to_string(n);
    }
    Iri iri(ns + name);
    claim(iri);
    map.second.emplace(e, std::move(iri));
  }
  return map;
}

namespace {

struct Record {
  Axiom axiom;
  bool from_first = false;
  bool from_second = false;
  std::vector<DisjointRef> sources;
};

std::string class_list(const std::vector<Iri>& classes) {
  std::string out;
  for (const auto& c : classes) out += (out.empty() ? "" : " ") + ("<" + c.full() + ">");
  return out;
}

// Ancestors-or-self of every class, from the named hierarchy only; the
// disjointness rewrites below never change it.
std::unordered_map<Iri, std::set<Iri>> ancestry(const Ontology& shape) {
  std::unordered_map<Iri, std::set<Iri>> out;
  for (const auto& c : shape.classes()) {
    auto anc = superclass_closure(shape, c);
    anc.insert(c);
    out.emplace(c, std::move(anc));
  }
  return out;
}

class ClashResolver {
 public:
  ClashResolver(const Ontology& shape, std::vector<Record>& records)
      : classes_(shape.classes()), ancestors_(ancestry(shape)), records_(records) {}

  std::vector<ConflictEntry> run() {
    std::vector<ConflictEntry> log;
    while (true) {
      auto unsat = unsatisfiable();
      if (unsat.empty()) break;
      const Iri& c = unsat.front();
      std::size_t k = witness(c);
      auto& members = std::get<DisjointClasses>(records_[k].axiom).members;

      const auto& anc = ancestors_.at(c);
      std::optional<Iri> pick;
      std::vector<Iri> pick_cured;
      std::vector<Iri> candidates;
      for (const auto& m : members) {
        if (anc.contains(m)) candidates.push_back(m);
      }
      std::sort(candidates.begin(), candidates.end());
      for (const auto& m : candidates) {
        auto cured = cured_by_removing(k, m, unsat);
        if (!pick || cured.size() > pick_cured.size()) {
          pick = m;
          pick_cured = std::move(cured);
        }
      }

      ConflictEntry entry{ConflictAction::DroppedAxiom, records_[k].axiom, std::nullopt, pick_cured,
                          "", records_[k].sources};
      members.erase(std::find(members.begin(), members.end(), *pick));
      std::string why = "removing <" + pick->full() + "> cures " + class_list(pick_cured);
      if (members.size() < 2) {
        entry.action = ConflictAction::DroppedAxiom;
        entry.justification = "fewer than two members would remain; " + why;
        records_.erase(records_.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        entry.action = ConflictAction::RewrittenAxiom;
        entry.replacement = records_[k].axiom;
        entry.justification = why;
        auto key = canonical(records_[k].axiom);
        for (std::size_t j = 0; j < records_.size(); ++j) {
          if (j == k || canonical(records_[j].axiom) != key) continue;
          // The rewrite coincides with an axiom already present.
          auto& keep = records_[j];
          keep.from_first |= records_[k].from_first;
          keep.from_second |= records_[k].from_second;
          keep.sources.insert(keep.sources.end(), records_[k].sources.begin(), records_[k].sources.end());
          records_.erase(records_.begin() + static_cast<std::ptrdiff_t>(k));
          entry.justification += "; result already present";
          break;
        }
      }
      log.push_back(std::move(entry));
    }
    return log;
  }

 private:
  bool unsat_under(const Iri& c, std::size_t skip_record, const Iri* skip_member) const {
    const auto& anc = ancestors_.at(c);
    for (std::size_t k = 0; k < records_.size(); ++k) {
      const auto* d = std::get_if<DisjointClasses>(&records_[k].axiom);
      if (!d) continue;
      int hits = 0;
      for (const auto& m : d->members) {
        if (k == skip_record && skip_member && m == *skip_member) continue;
        if (anc.contains(m) && ++hits >= 2) return true;
      }
    }
    return false;
  }

  std::vector<Iri> unsatisfiable() const {
    std::vector<Iri> out;
    for (const auto& c : classes_) {
      if (unsat_under(c, records_.size(), nullptr)) out.push_back(c);
    }
    return out;
  }

  std::size_t witness(const Iri& c) const {
    std::optional<std::size_t> fallback;
    const auto& anc = ancestors_.at(c);
    for (std::size_t k = 0; k < records_.size(); ++k) {
      const auto* d = std::get_if<DisjointClasses>(&records_[k].axiom);
      if (!d) continue;
      auto hits = std::count_if(d->members.begin(), d->members.end(),
                                [&](const Iri& m) { return anc.contains(m); });
      if (hits < 2) continue;
      if (records_[k].from_first != records_[k].from_second) return k;
      if (!fallback) fallback = k;
    }
    return *fallback;
  }

  std::vector<Iri> cured_by_removing(std::size_t k, const Iri& m, const std::vector<Iri>& unsat) const {
    std::vector<Iri> out;
    for (const auto& u : unsat) {
      if (!unsat_under(u, k, &m)) out.push_back(u);
    }
    return out;
  }

  const std::set<Iri>& classes_;
  std::unordered_map<Iri, std::set<Iri>> ancestors_;
  std::vector<Record>& records_;
};

std::vector<Axiom> axioms_of(const std::vector<Record>& records) {
  std::vector<Axiom> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.axiom);
  return out;
}

}  // namespace

ResolveResult resolve_clashes(const Ontology& merged) {
  std::vector<Record> records;
  for (const auto& a : merged.axioms()) records.push_back(Record{a, false, false, {}});
  ClashResolver resolver(merged, records);
  auto log = resolver.run();
  Ontology out(merged.iri(), merged.classes(), merged.object_properties(), merged.data_properties(),
               axioms_of(records));
  return ResolveResult{std::move(out), std::move(log)};
}

MergeResult merge(const Ontology& o1, const Ontology& o2, const ValidatedAlignment& alignment) {
  if (alignment.first_ontology() != o1.iri() || alignment.second_ontology() != o2.iri()) {
    throw MergeError("alignment was validated against " + alignment.first_ontology().full() +
                     " and " + alignment.second_ontology().full() + ", not " + o1.iri().full() +
                     " and " + o2.iri().full());
  }
  Alignment unified = alignment.correspondences();
  unified.insert(unified.end(), alignment.implied().begin(), alignment.implied().end());
  EntityMap map = canonicalize(unified, o1, o2);

  std::vector<Record> records;
  std::map<Axiom, std::size_t> seen;
  auto add = [&](Axiom axiom, Side side, std::optional<DisjointRef> ref) {
    auto key = canonical(axiom);
    auto [it, fresh] = seen.emplace(key, records.size());
    if (fresh) records.push_back(Record{std::move(axiom), false, false, {}});
    auto& r = records[it->second];
    (side == Side::First ? r.from_first : r.from_second) = true;
    if (ref) r.sources.push_back(*ref);
  };
  std::size_t disjoint_index = 0;
  for (const auto& a : o1.axioms()) {
    std::optional<DisjointRef> ref;
    if (std::holds_alternative<DisjointClasses>(a)) ref = DisjointRef{Side::First, disjoint_index++};
    add(a, Side::First, ref);
  }
  disjoint_index = 0;
  Rename rename = [&](const Iri& iri) -> const Iri& { return map.canonical(Side::Second, iri); };
  for (const auto& a : o2.axioms()) {
    std::optional<DisjointRef> ref;
    if (std::holds_alternative<DisjointClasses>(a)) ref = DisjointRef{Side::Second, disjoint_index++};
    add(translate(a, rename), Side::Second, ref);
  }

  std::set<Iri> classes = o1.classes();
  std::set<Iri> objects = o1.object_properties();
  std::set<Iri> datas = o1.data_properties();
  for (const auto& [src, dst] : map.second) {
    switch (*o2.kind_of(src)) {
      case EntityKind::Class:
        classes.insert(dst);
        break;
      case EntityKind::ObjectProperty:
        objects.insert(dst);
        break;
      case EntityKind::DataProperty:
        datas.insert(dst);
        break;
    }
  }

  Ontology shape(o1.iri(), classes, objects, datas, axioms_of(records));
  ClashResolver resolver(shape, records);
  auto log = resolver.run();

  MergeResult result{Ontology(o1.iri(), std::move(classes), std::move(objects), std::move(datas),
                              axioms_of(records)),
                     std::move(map), std::move(log), {}};
  result.quality = verify_merged(result, o1, o2, alignment);
  return result;
}

namespace {

std::vector<std::pair<DisjointRef, Axiom>> source_disjoint_axioms(const Ontology& o1,
                                                                  const Ontology& o2,
                                                                  const EntityMap& map) {
  std::vector<std::pair<DisjointRef, Axiom>> out;
  for (Side side : {Side::First, Side::Second}) {
    const Ontology& o = side == Side::First ? o1 : o2;
    Rename rename = [&](const Iri& iri) -> const Iri& { return map.canonical(side, iri); };
    std::size_t index = 0;
    for (const auto& a : o.axioms()) {
      if (!std::holds_alternative<DisjointClasses>(a)) continue;
      out.emplace_back(DisjointRef{side, index++}, canonical(translate(a, rename)));
    }
  }
  return out;
}

std::vector<std::size_t> log_entries_for(const std::vector<ConflictEntry>& log, const DisjointRef& ref) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (std::find(log[i].sources.begin(), log[i].sources.end(), ref) != log[i].sources.end()) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

QualityReport verify_merged(const MergeResult& result, const Ontology& o1, const Ontology& o2,
                            const ValidatedAlignment& alignment) {
  QualityReport q;
  const Ontology& m = result.merged;
  for (const auto& c : m.classes()) {
    if (is_unsatisfiable_structural(m, c)) q.unsatisfiable.push_back(c);
  }
  q.coherent = q.unsatisfiable.empty();

  for (Side side : {Side::First, Side::Second}) {
    const Ontology& o = side == Side::First ? o1 : o2;
    const auto& domain = side == Side::First ? result.entity_map.first : result.entity_map.second;
    for (const auto* set : {&o.classes(), &o.object_properties(), &o.data_properties()}) {
      for (const auto& e : *set) {
        auto it = domain.find(e);
        if (it == domain.end()) {
          q.incompleteness_findings.push_back({"entity " + e.full() + " has no canonical IRI", {}});
        } else if (!m.declares(it->second)) {
          q.incompleteness_findings.push_back(
              {"canonical IRI " + it->second.full() + " is not declared in the merged ontology", {}});
        }
      }
    }
  }
  for (const auto& c : alignment.correspondences()) {
    if (result.entity_map.canonical(Side::Second, c.target) != c.source) {
      q.incompleteness_findings.push_back(
          {"correspondence " + c.source.full() + " = " + c.target.full() + " was not unified", {}});
    }
  }

  std::set<Axiom> present;
  for (const auto& a : m.axioms()) present.insert(canonical(a));
  for (const auto& [ref, axiom] : source_disjoint_axioms(o1, o2, result.entity_map)) {
    if (present.contains(axiom)) continue;
    auto entries = log_entries_for(result.conflict_log, ref);
    std::string msg = std::string(ref.side == Side::First ? "first" : "second") +
                      " ontology disjointness axiom #" + std::to_string(ref.index + 1) + " " +
                      to_string(axiom) +
                      (entries.empty() ? " is missing from the merged ontology"
                                       : " was rewritten or dropped during clash resolution");
    q.incompleteness_findings.push_back({std::move(msg), std::move(entries)});
  }

  std::map<Axiom, std::size_t> counts;
  for (const auto& a : m.axioms()) ++counts[canonical(a)];
  for (const auto& [axiom, n] : counts) {
    if (n > 1) {
      q.redundancy_findings.push_back(
          {to_string(axiom) + " occurs " + std::to_string(n) + " times", {}});
    }
  }
  return q;
}

DisjointnessAccount account_disjointness(const MergeResult& result, const Ontology& o1,
                                         const Ontology& o2) {
  DisjointnessAccount acc;
  std::set<Axiom> present;
  for (const auto& a : result.merged.axioms()) present.insert(canonical(a));
  for (const auto& [ref, axiom] : source_disjoint_axioms(o1, o2, result.entity_map)) {
    ++acc.source_axioms;
    if (present.contains(axiom)) {
      ++acc.preserved;
    } else if (!log_entries_for(result.conflict_log, ref).empty()) {
      ++acc.logged;
    }
  }
  return acc;
}

std::string format_conflict_log(const std::vector<ConflictEntry>& log) {
  std::string out;
  for (const auto& e : log) {
    out += std::string(to_string(e.action)) + " " + to_string(e.axiom);
    if (e.replacement) out += " => " + to_string(*e.replacement);
    out += " " + e.justification + "\n";
  }
  return out;
}

std::string format_quality(const QualityReport& q) {
  std::string out = std::string("coherent ") + (q.coherent ? "yes" : "no") + "\n";
  out += "unsatisfiable " + std::to_string(q.unsatisfiable.size()) + "\n";
  for (const auto& c : q.unsatisfiable) out += "  " + c.full() + "\n";
  out += "incompleteness " + std::to_string(q.incompleteness_findings.size()) + "\n";
  for (const auto& f : q.incompleteness_findings) {
    out += "  " + f.message;
    if (!f.log_entries.empty()) {
      out += " (log entries";
      for (auto i : f.log_entries) out += " " + std::to_string(i + 1);
      out += ")";
    }
    out += "\n";
  }
  out += "redundancy " + std::to_string(q.redundancy_findings.size()) + "\n";
  for (const auto& f : q.redundancy_findings) out += "  " + f.message + "\n";
  return out;
}

std::string format_entity_map(const EntityMap& map) {
  std::string out;
  for (const auto& [src, dst] : map.first) out += src.full() + "\t" + dst.full() + "\n";
  for (const auto& [src, dst] : map.second) out += src.full() + "\t" + dst.full() + "\n";
  return out;
}

}  // namespace axiom_align
