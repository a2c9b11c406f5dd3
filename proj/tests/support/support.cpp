#include "support.hpp"

#include <algorithm>
#include <map>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "axiom_align/owl_parser.hpp"
#include "cli.hpp"

namespace axiom_align::testing {

namespace fs = std::filesystem;

fs::path fixture_path(const std::string& name) { return fs::path(AXIOM_ALIGN_FIXTURE_DIR) / name; }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Ontology load_fixture(const std::string& name) {
  return parse_ontology(read_text(fixture_path(name))).ontology;
}

std::vector<std::string> fixture_ontologies() {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(AXIOM_ALIGN_FIXTURE_DIR)) {
    if (entry.path().extension() == ".ofn") names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

const std::vector<FixturePair>& fixture_pairs() {
  static const std::vector<FixturePair> pairs = {
      {"crs_dr.ofn", "cmt.ofn"},           {"phd_a.ofn", "phd_b.ofn"},
      {"clash_a.ofn", "clash_b.ofn"},      {"defective_a.ofn", "defective_b.ofn"},
      {"misplaced_a.ofn", "misplaced_b.ofn"}, {"constructs.ofn", "constructs.ofn"},
  };
  return pairs;
}

namespace {

const std::vector<std::string> kStems = {
    "Person", "Author",  "Paper",   "Review",  "Event",    "Session", "Topic",  "Chair",
    "Member", "Program", "Article", "Meeting", "Document", "Student", "Reviewer", "Track"};

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

}  // namespace

ClassExpression random_expression(std::mt19937& rng, const std::vector<Iri>& classes,
                                  const std::vector<Iri>& object_properties,
                                  const std::vector<Iri>& data_properties, int depth) {
  const Iri xsd_string("http://www.w3.org/2001/XMLSchema#string");
  int choice = depth <= 0 ? 0 : std::uniform_int_distribution<int>(0, 6)(rng);
  switch (choice) {
    case 1:
      if (!object_properties.empty()) {
        return ClassExpression::object_some(
            pick(rng, object_properties),
            random_expression(rng, classes, object_properties, data_properties, depth - 1));
      }
      break;
    case 2:
      if (!object_properties.empty()) {
        return ClassExpression::object_all(
            pick(rng, object_properties),
            random_expression(rng, classes, object_properties, data_properties, depth - 1));
      }
      break;
    case 3:
      if (!data_properties.empty()) {
        return ClassExpression::data_some(pick(rng, data_properties), xsd_string);
      }
      break;
    case 4:
    case 5: {
      std::vector<ClassExpression> ops;
      int n = std::uniform_int_distribution<int>(2, 3)(rng);
      for (int i = 0; i < n; ++i) {
        ops.push_back(random_expression(rng, classes, object_properties, data_properties, depth - 1));
      }
      return choice == 4 ? ClassExpression::union_of(std::move(ops))
                         : ClassExpression::intersection_of(std::move(ops));
    }
    case 6:
      return ClassExpression::complement_of(
          random_expression(rng, classes, object_properties, data_properties, depth - 1));
    default:
      break;
  }
  return ClassExpression::named(pick(rng, classes));
}

Ontology random_ontology(std::mt19937& rng, const RandomSpec& spec) {
  std::vector<Iri> classes, ops, dps;
  std::set<std::string> used;
  auto fresh = [&](const std::string& stem) {
    std::string name = stem;
    for (int k = 2; used.contains(name); ++k) name = stem + std::to_string(k);
    used.insert(name);
    return Iri(spec.ns + name);
  };
  for (std::size_t i = 0; i < spec.classes; ++i) classes.push_back(fresh(pick(rng, kStems)));
  for (std::size_t i = 0; i < spec.object_properties; ++i) ops.push_back(fresh("has" + pick(rng, kStems)));
  for (std::size_t i = 0; i < spec.data_properties; ++i) dps.push_back(fresh("name" + pick(rng, kStems)));

  std::vector<Axiom> axioms;
  std::set<Axiom> seen;
  std::discrete_distribution<int> kind({6.0, 1.5, spec.disjoint_weight, 1.0, 1.0, 0.5, 0.5,
                                        spec.labels ? 1.0 : 0.0});
  std::size_t target = std::uniform_int_distribution<std::size_t>(0, spec.max_axioms)(rng);
  const Iri xsd_string("http://www.w3.org/2001/XMLSchema#string");
  for (std::size_t attempts = 0; axioms.size() < target && attempts < target * 10; ++attempts) {
    std::optional<Axiom> a;
    auto ce = [&](int depth) { return random_expression(rng, classes, ops, dps, depth); };
    switch (kind(rng)) {
      case 0:
        a = SubClassOf{ClassExpression::named(pick(rng, classes)), ce(2)};
        break;
      case 1:
        a = EquivalentClasses{ClassExpression::named(pick(rng, classes)), ce(1)};
        break;
      case 2: {
        std::set<Iri> members;
        std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
        for (std::size_t i = 0; i < n * 2 && members.size() < n; ++i) members.insert(pick(rng, classes));
        if (members.size() >= 2) a = DisjointClasses{{members.begin(), members.end()}};
        break;
      }
      case 3:
        if (!ops.empty()) a = ObjectPropertyDomain{pick(rng, ops), ce(1)};
        break;
      case 4:
        if (!ops.empty()) a = ObjectPropertyRange{pick(rng, ops), ce(1)};
        break;
      case 5:
        if (!dps.empty()) a = DataPropertyDomain{pick(rng, dps), ce(0)};
        break;
      case 6:
        if (!dps.empty()) a = DataPropertyRange{pick(rng, dps), xsd_string};
        break;
      case 7: {
        static const std::vector<std::string> texts = {"a label", "with \"quotes\"", "back\\slash",
                                                       "Program Committee", "review paper"};
        a = Label{pick(rng, classes), pick(rng, texts)};
        break;
      }
      default:
        break;
    }
    if (a && seen.insert(*a).second) axioms.push_back(std::move(*a));
  }
  std::string onto = spec.ns.substr(0, spec.ns.size() - 1);
  return Ontology(Iri(onto), {classes.begin(), classes.end()}, {ops.begin(), ops.end()},
                  {dps.begin(), dps.end()}, std::move(axioms));
}

namespace {

ClassExpression rename_ce(const ClassExpression& ce, const Renamer& f) {
  using K = ClassExpression::Kind;
  std::vector<ClassExpression> ops;
  for (const auto& op : ce.operands()) ops.push_back(rename_ce(op, f));
  switch (ce.kind()) {
    case K::Named: return ClassExpression::named(f(ce.iri()));
    case K::ObjectSome: return ClassExpression::object_some(f(ce.iri()), ops[0]);
    case K::ObjectAll: return ClassExpression::object_all(f(ce.iri()), ops[0]);
    case K::DataSome: return ClassExpression::data_some(f(ce.iri()), ce.datatype());
    case K::Union: return ClassExpression::union_of(ops);
    case K::Intersection: return ClassExpression::intersection_of(ops);
    case K::Complement: return ClassExpression::complement_of(ops[0]);
  }
  return ce;
}

}  // namespace

Axiom rename_axiom(const Axiom& axiom, const Renamer& f) {
  return std::visit(
      [&](const auto& x) -> Axiom {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SubClassOf>) {
          return SubClassOf{rename_ce(x.sub, f), rename_ce(x.sup, f)};
        } else if constexpr (std::is_same_v<T, EquivalentClasses>) {
          return EquivalentClasses{rename_ce(x.first, f), rename_ce(x.second, f)};
        } else if constexpr (std::is_same_v<T, DisjointClasses>) {
          DisjointClasses d;
          for (const auto& m : x.members) d.members.push_back(f(m));
          return d;
        } else if constexpr (std::is_same_v<T, ObjectPropertyDomain>) {
          return ObjectPropertyDomain{f(x.property), rename_ce(x.domain, f)};
        } else if constexpr (std::is_same_v<T, ObjectPropertyRange>) {
          return ObjectPropertyRange{f(x.property), rename_ce(x.range, f)};
        } else if constexpr (std::is_same_v<T, DataPropertyDomain>) {
          return DataPropertyDomain{f(x.property), rename_ce(x.domain, f)};
        } else if constexpr (std::is_same_v<T, DataPropertyRange>) {
          return DataPropertyRange{f(x.property), x.datatype};
        } else {
          return Label{f(x.subject), x.text};
        }
      },
      axiom);
}

Ontology renamespace(const Ontology& o, const std::string& ns, const std::string& ontology_iri) {
  Renamer f = [&](const Iri& iri) {
    if (iri.full().starts_with("http://www.w3.org/")) return iri;
    return Iri(ns + std::string(iri.fragment()));
  };
  auto move_set = [&](const std::set<Iri>& xs) {
    std::set<Iri> out;
    for (const auto& x : xs) out.insert(f(x));
    return out;
  };
  std::vector<Axiom> axioms;
  for (const auto& a : o.axioms()) axioms.push_back(rename_axiom(a, f));
  return Ontology(Iri(ontology_iri), move_set(o.classes()), move_set(o.object_properties()),
                  move_set(o.data_properties()), std::move(axioms));
}

Alignment identity_alignment(const Ontology& o, const Ontology& copy) {
  Alignment out;
  auto add = [&](const std::set<Iri>& xs, const std::set<Iri>& ys, EntityKind kind) {
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        if (x.fragment() == y.fragment()) out.push_back(Correspondence{x, y, Relation::Equivalence, 1.0, kind});
      }
    }
  };
  add(o.classes(), copy.classes(), EntityKind::Class);
  add(o.object_properties(), copy.object_properties(), EntityKind::ObjectProperty);
  add(o.data_properties(), copy.data_properties(), EntityKind::DataProperty);
  return out;
}

const std::vector<std::string>& word_list() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> out;
    std::istringstream in(read_text(fixture_path("words.txt")));
    for (std::string w; in >> w;) {
      if (!w.starts_with("#")) out.push_back(w);
    }
    return out;
  }();
  return words;
}

// Independent partitioning: roots and membership computed by plain
// depth-first search over the parsed subsumption axioms.
std::map<std::string, std::set<Iri>> oracle_partitions(const Ontology& o) {
  std::map<Iri, std::set<Iri>> up;
  for (const auto& a : o.axioms()) {
    if (auto s = std::get_if<SubClassOf>(&a); s && s->sub.is_named() && s->sup.is_named()) {
      up[s->sub.iri()].insert(s->sup.iri());
    }
    if (auto e = std::get_if<EquivalentClasses>(&a); e && e->first.is_named() && e->second.is_named()) {
      up[e->first.iri()].insert(e->second.iri());
      up[e->second.iri()].insert(e->first.iri());
    }
  }
  auto ancestors = [&](const Iri& c) {
    std::set<Iri> seen;
    std::vector<Iri> stack{c};
    while (!stack.empty()) {
      Iri x = stack.back();
      stack.pop_back();
      for (const auto& y : up[x]) {
        if (seen.insert(y).second) stack.push_back(y);
      }
    }
    seen.erase(c);
    return seen;
  };
  std::set<Iri> in_disjoint;
  for (const auto& a : o.axioms()) {
    if (auto d = std::get_if<DisjointClasses>(&a)) in_disjoint.insert(d->members.begin(), d->members.end());
  }
  std::set<Iri> roots;
  for (const auto& m : in_disjoint) {
    bool covered = false;
    for (const auto& anc : ancestors(m)) covered = covered || in_disjoint.contains(anc);
    if (!covered) roots.insert(m);
  }
  std::map<std::string, std::set<Iri>> out;
  out["RESIDUAL"];
  for (const auto& r : roots) out[std::string(r.fragment())];
  for (const auto& c : o.classes()) {
    auto anc = ancestors(c);
    anc.insert(c);
    std::vector<Iri> hits;
    for (const auto& r : roots) {
      if (anc.contains(r)) hits.push_back(r);
    }
    out[hits.size() == 1 ? std::string(hits[0].fragment()) : "RESIDUAL"].insert(c);
  }
  return out;
}

// Σ|P|·|Q| over the given pairs plus the fallback-pool cross term.
std::size_t sigma_count(const std::map<std::string, std::set<Iri>>& p1,
                        const std::map<std::string, std::set<Iri>>& p2,
                        const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::size_t total = 0, pool1 = 0, pool2 = 0;
  std::set<std::string> used1, used2;
  for (const auto& [a, b] : pairs) {
    total += p1.at(a).size() * p2.at(b).size();
    used1.insert(a);
    used2.insert(b);
  }
  for (const auto& [k, v] : p1) pool1 += used1.contains(k) ? 0 : v.size();
  for (const auto& [k, v] : p2) pool2 += used2.contains(k) ? 0 : v.size();
  return total + pool1 * pool2;
}

std::pair<Ontology, Ontology> synthetic_pair(std::uint32_t seed, std::size_t classes,
                                             std::size_t partitions) {
  static const std::vector<std::string> domains = {"Person", "Document", "Event",  "Program",
                                                   "Decision", "Venue", "Topic", "Payment",
                                                   "Device", "Region", "Species", "Material"};
  static const std::vector<std::string> words = {
      "Paper", "Review", "Track", "Chair", "Member", "Author", "Session", "Draft", "Invite",
      "Grant", "Slot", "Room", "Poster", "Demo", "Keynote", "Panel", "Report", "Budget",
      "Vote", "Ticket", "Badge", "Lunch", "Award", "Board", "Notice", "Survey", "Record",
      "Filter", "Sensor", "Module", "Border", "Basin", "Canopy", "Fiber", "Alloy", "Resin"};
  if (partitions > domains.size()) throw std::invalid_argument("too many partitions");
  std::mt19937 rng(seed);
  const Iri xsd_string("http://www.w3.org/2001/XMLSchema#string");

  struct Node {
    std::string name;
    std::size_t parent;  // index into nodes, or npos for roots
    std::size_t root;
  };
  std::vector<Node> nodes;
  for (std::size_t r = 0; r < partitions; ++r) nodes.push_back({domains[r], std::string::npos, r});
  std::set<std::string> used(domains.begin(), domains.end());
  while (nodes.size() < classes) {
    std::size_t parent = std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(rng);
    std::string name = words[rng() % words.size()] + words[rng() % words.size()] +
                       domains[nodes[parent].root];
    for (int k = 2; used.contains(name); ++k) name = name.substr(0, name.find_last_not_of("0123456789") + 1) + std::to_string(k);
    used.insert(name);
    nodes.push_back({name, parent, nodes[parent].root});
  }

  auto build = [&](const std::string& ns, const std::vector<std::string>& names) {
    std::set<Iri> cls;
    std::vector<Axiom> axioms;
    std::vector<Iri> roots;
    Iri has_name(ns + "hasName");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      Iri c(ns + names[i]);
      cls.insert(c);
      if (nodes[i].parent == std::string::npos) {
        roots.push_back(c);
        axioms.push_back(SubClassOf{ClassExpression::named(c), ClassExpression::data_some(has_name, xsd_string)});
      } else {
        axioms.push_back(SubClassOf{ClassExpression::named(c), ClassExpression::named(Iri(ns + names[nodes[i].parent]))});
      }
    }
    axioms.push_back(DisjointClasses{roots});
    return Ontology(Iri(ns.substr(0, ns.size() - 1)), std::move(cls), {}, {has_name}, std::move(axioms));
  };

  std::vector<std::string> first, second;
  for (const auto& n : nodes) first.push_back(n.name);
  second = first;
  for (std::size_t i = partitions; i < second.size(); ++i) {
    auto roll = rng() % 20;
    if (roll == 0) {
      second[i] = "Renamed" + std::to_string(i) + "Thing";  // no counterpart
    } else if (roll == 1) {
      second[i] = second[i] + "s";  // plural form, same lemma
    }
  }
  return {build("http://synthetic.example.org/first#", first),
          build("http://synthetic.example.org/second#", second)};
}

CliRun run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> argv{"axiom-align"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  CliRun run;
  run.code = cli::dispatch(argv, out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

fs::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  fs::path dir = fs::temp_directory_path() /
                 ("axiom_align_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace axiom_align::testing
