#include <doctest.h>

#include <map>

#include "axiom_align/error.hpp"
#include "axiom_align/owl_parser.hpp"
#include "axiom_align/validator.hpp"
#include "support.hpp"

using namespace axiom_align;

namespace {

Ontology parse(const std::string& body, const std::string& ns) {
  return parse_ontology("Prefix(:=<" + ns + "#>)\nOntology(<" + ns + ">\n" + body + "\n)\n").ontology;
}

Correspondence corr(const std::string& s, const std::string& t, double c) {
  return Correspondence{Iri(s), Iri(t), Relation::Equivalence, c, EntityKind::Class};
}

// Graph over "1|iri" / "2|iri" names built straight from the axioms.
struct GraphOracle {
  std::map<std::string, std::set<std::string>> full, source;
  std::vector<std::pair<std::string, std::vector<std::string>>> disjoint;  // side tag, members

  GraphOracle(const Ontology& o1, const Ontology& o2, const Alignment& a) {
    add(o1, "1|");
    add(o2, "2|");
    for (const auto& c : a) {
      if (!o1.is_class(c.source)) continue;
      full["1|" + c.source.full()].insert("2|" + c.target.full());
      full["2|" + c.target.full()].insert("1|" + c.source.full());
    }
  }

  void add(const Ontology& o, const std::string& tag) {
    for (const auto& c : o.classes()) {
      full[tag + c.full()];
      source[tag + c.full()];
    }
    for (const auto& ax : o.axioms()) {
      if (auto s = std::get_if<SubClassOf>(&ax); s && s->sub.is_named() && s->sup.is_named()) {
        link(tag + s->sub.iri().full(), tag + s->sup.iri().full());
      } else if (auto e = std::get_if<EquivalentClasses>(&ax); e && e->first.is_named() && e->second.is_named()) {
        link(tag + e->first.iri().full(), tag + e->second.iri().full());
        link(tag + e->second.iri().full(), tag + e->first.iri().full());
      } else if (auto d = std::get_if<DisjointClasses>(&ax)) {
        std::vector<std::string> ms;
        for (const auto& m : d->members) ms.push_back(tag + m.full());
        disjoint.emplace_back(tag, ms);
      }
    }
  }

  void link(const std::string& a, const std::string& b) {
    full[a].insert(b);
    source[a].insert(b);
  }

  static bool reach(const std::map<std::string, std::set<std::string>>& g, const std::string& from,
                    const std::string& to) {
    std::set<std::string> seen{from};
    std::vector<std::string> stack{from};
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      if (x == to) return true;
      for (const auto& y : g.at(x)) {
        if (seen.insert(y).second) stack.push_back(y);
      }
    }
    return false;
  }

  // Unsatisfiable nodes that no same-side source node explains.
  std::vector<std::string> mapping_caused() const {
    std::vector<std::string> out;
    for (const auto& [c, _] : full) {
      for (const auto& [tag, ms] : disjoint) {
        for (std::size_t i = 0; i < ms.size(); ++i) {
          for (std::size_t j = i + 1; j < ms.size(); ++j) {
            if (!reach(full, c, ms[i]) || !reach(full, c, ms[j])) continue;
            bool explained = false;
            for (const auto& [x, __] : source) {
              if (x.starts_with(tag) && reach(full, c, x) && reach(source, x, ms[i]) && reach(source, x, ms[j])) {
                explained = true;
              }
            }
            if (!explained) out.push_back(c);
          }
        }
      }
    }
    return out;
  }
};

std::string tagged(const MergedNode& n) { return (n.side == Side::First ? "1|" : "2|") + n.iri.full(); }

Alignment random_alignment(std::mt19937& rng, const Ontology& a, const Ontology& b) {
  std::vector<Iri> xs(a.classes().begin(), a.classes().end()), ys(b.classes().begin(), b.classes().end());
  std::shuffle(ys.begin(), ys.end(), rng);
  Alignment out;
  for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
    if (rng() % 3 == 0) continue;
    out.push_back({xs[i], ys[i], Relation::Equivalence, double(50 + rng() % 51) / 100.0, EntityKind::Class});
  }
  return out;
}

}  // namespace

TEST_CASE("virtual merge reachability matches the graph oracle") {
  std::mt19937 rng(71);
  for (int round = 0; round < 80; ++round) {
    Ontology a = testing::random_ontology(rng);
    testing::RandomSpec spec;
    spec.ns = "http://b.example.org/onto#";
    Ontology b = testing::random_ontology(rng, spec);
    Alignment al = random_alignment(rng, a, b);
    VirtualMerge vm(a, b, al);
    GraphOracle g(a, b, al);
    for (std::size_t i = 0; i < vm.node_count(); ++i) {
      for (std::size_t j = 0; j < vm.node_count(); ++j) {
        CHECK(vm.reaches(i, j) == GraphOracle::reach(g.full, tagged(vm.node(i)), tagged(vm.node(j))));
        CHECK(vm.reaches_within_source(i, j) ==
              GraphOracle::reach(g.source, tagged(vm.node(i)), tagged(vm.node(j))));
      }
    }
  }
}

TEST_CASE("empty alignment keeps the two closures apart") {
  Ontology o1 = testing::load_fixture("crs_dr.ofn");
  Ontology o2 = testing::load_fixture("cmt.ofn");
  VirtualMerge vm(o1, o2, {});
  for (const auto& c : o1.classes()) {
    std::set<MergedNode> expected;
    for (const auto& s : superclass_closure(o1, c)) expected.insert({Side::First, s});
    CHECK(vm.superclass_closure({Side::First, c}) == expected);
  }
}

TEST_CASE("a correspondence exposes the partner's ancestors") {
  Ontology o1 = testing::load_fixture("crs_dr.ofn");
  Ontology o2 = testing::load_fixture("cmt.ofn");
  VirtualMerge vm(o1, o2, {corr("http://crs_dr#Person", "http://cmt#Person", 1.0)});
  auto up = vm.superclass_closure({Side::Second, Iri("http://cmt#Chairman")});
  CHECK(up.contains({Side::First, Iri("http://crs_dr#Person")}));
  auto down = vm.superclass_closure({Side::First, Iri("http://crs_dr#Author")});
  CHECK(down.contains({Side::Second, Iri("http://cmt#Person")}));
  CHECK_FALSE(down.contains({Side::Second, Iri("http://cmt#Author")}));
}

TEST_CASE("virtual merge rejects unknown or mismatched entities") {
  Ontology a = parse("Declaration(Class(:A))\nDeclaration(ObjectProperty(:p))", "http://a");
  Ontology b = parse("Declaration(Class(:B))", "http://b");
  CHECK_THROWS_AS(VirtualMerge(a, b, {corr("http://a#Z", "http://b#B", 1)}), UnknownEntityError);
  CHECK_THROWS_AS(VirtualMerge(a, b, {corr("http://a#A", "http://b#Z", 1)}), UnknownEntityError);
  CHECK_THROWS_AS(VirtualMerge(a, b, {corr("http://a#p", "http://b#B", 1)}), ModelError);
}

TEST_CASE("clash fixture implicates both correspondences") {
  Ontology o1 = testing::load_fixture("clash_a.ofn");
  Ontology o2 = testing::load_fixture("clash_b.ofn");
  Alignment al = parse_alignment(testing::read_text(testing::fixture_path("clash_alignment.tsv")));
  auto clashes = detect_disjointness_clashes(VirtualMerge(o1, o2, al));
  REQUIRE_FALSE(clashes.empty());
  bool paper_listed = false;
  for (const auto& c : clashes) {
    CHECK(c.implicated.size() == 2);
    paper_listed = paper_listed || c.cls == MergedNode{Side::Second, Iri("http://clash_b#Paper")};
  }
  CHECK(paper_listed);
}

TEST_CASE("validate repairs the clash fixture") {
  Ontology o1 = testing::load_fixture("clash_a.ofn");
  Ontology o2 = testing::load_fixture("clash_b.ofn");
  Alignment al = parse_alignment(testing::read_text(testing::fixture_path("clash_alignment.tsv")));
  auto report = validate(al, o1, o2);
  REQUIRE(report.rejected.size() == 1);
  CHECK(report.rejected[0].correspondence.source == Iri("http://clash_a#Document"));
  CHECK(report.rejected[0].reason == RejectionReason::DisjointnessClash);
  REQUIRE(report.accepted.correspondences().size() == 1);
  CHECK(report.accepted.correspondences()[0].source == Iri("http://clash_a#Person"));
  CHECK(GraphOracle(o1, o2, report.accepted.correspondences()).mapping_caused().empty());
  CHECK(format_rejections(report) ==
        "#source\ttarget\tconfidence\treason\n"
        "http://clash_a#Document\thttp://clash_b#Paper\t0.850\tdisjointness-clash\n");
}

TEST_CASE("source defects are reported but never repaired") {
  Ontology o1 = testing::load_fixture("defective_a.ofn");
  Ontology o2 = testing::load_fixture("defective_b.ofn");
  Alignment al = testing::identity_alignment(o1, o2);
  auto clashes = detect_disjointness_clashes(VirtualMerge(o1, o2, al));
  CHECK_FALSE(clashes.empty());
  for (const auto& c : clashes) CHECK(c.source_defect());
  auto report = validate(al, o1, o2);
  CHECK(report.rejected.empty());
  CHECK(report.accepted.correspondences() == al);
  CHECK_FALSE(report.warnings.empty());
  for (const auto& w : report.warnings) CHECK(w.starts_with("source defect"));
}

TEST_CASE("coherent alignments pass untouched") {
  Ontology o1 = testing::load_fixture("crs_dr.ofn");
  Ontology o2 = testing::load_fixture("cmt.ofn");
  Alignment al = {corr("http://crs_dr#Person", "http://cmt#Person", 1.0),
                  corr("http://crs_dr#Event", "http://cmt#Conference", 0.965),
                  corr("http://crs_dr#Paper", "http://cmt#Paper", 1.0)};
  CHECK(detect_disjointness_clashes(VirtualMerge(o1, o2, al)).empty());
  auto report = validate(al, o1, o2);
  CHECK(report.rejected.empty());
  CHECK(report.warnings.empty());
  CHECK(report.accepted.correspondences() == al);
  CHECK(report.accepted.first_ontology() == o1.iri());
  CHECK(report.accepted.second_ontology() == o2.iri());
}

TEST_CASE("validation properties on random alignments") {
  std::mt19937 rng(72);
  int repaired = 0;
  for (int round = 0; round < 150; ++round) {
    testing::RandomSpec spec;
    spec.disjoint_weight = 2.0;
    Ontology a = testing::random_ontology(rng, spec);
    spec.ns = "http://b.example.org/onto#";
    Ontology b = testing::random_ontology(rng, spec);
    Alignment al = random_alignment(rng, a, b);
    auto report = validate(al, a, b);
    const auto& acc = report.accepted.correspondences();

    // Termination bound, conservativity and no loss.
    CHECK(report.rejected.size() <= al.size());
    CHECK(acc.size() + report.rejected.size() == al.size());
    for (const auto& c : acc) CHECK(std::find(al.begin(), al.end(), c) != al.end());
    for (const auto& r : report.rejected) {
      CHECK(std::find(al.begin(), al.end(), r.correspondence) != al.end());
    }
    repaired += report.rejected.empty() ? 0 : 1;

    // Post-coherence, checked against the independent graph.
    CHECK(GraphOracle(a, b, acc).mapping_caused().empty());
    for (const auto& clash : detect_disjointness_clashes(VirtualMerge(a, b, acc))) {
      CHECK(clash.source_defect());
    }

    // Idempotence.
    auto again = validate(acc, a, b);
    CHECK(again.rejected.empty());
    CHECK(again.accepted.correspondences() == acc);
  }
  CHECK(repaired > 10);
}

TEST_CASE("repair removes the weakest implicated correspondence first") {
  Ontology o1 = parse("Declaration(Class(:P))\nDeclaration(Class(:D))\nDisjointClasses(:P :D)", "http://a");
  Ontology o2 = parse("Declaration(Class(:X))\nDeclaration(Class(:Y))\nSubClassOf(:Y :X)", "http://b");
  for (auto [cp, cd] : {std::pair{0.9, 0.85}, std::pair{0.85, 0.9}, std::pair{0.9, 0.9}}) {
    Alignment al = {corr("http://a#P", "http://b#X", cp), corr("http://a#D", "http://b#Y", cd)};
    auto report = validate(al, o1, o2);
    REQUIRE(report.rejected.size() == 1);
    // Equal confidences fall back to (source, target) order: D < P.
    const char* expected = cp < cd ? "http://a#P" : "http://a#D";
    CHECK(report.rejected[0].correspondence.source == Iri(expected));
  }
}

TEST_CASE("circularity detection") {
  Ontology o1 = parse("Declaration(Class(:A))\nDeclaration(Class(:B))\nSubClassOf(:A :B)", "http://a");
  Ontology o2 = parse("Declaration(Class(:X))\nDeclaration(Class(:Y))\nSubClassOf(:Y :X)", "http://b");
  Alignment al = {corr("http://a#A", "http://b#X", 0.9), corr("http://a#B", "http://b#Y", 0.8)};
  auto cycles = detect_circularity(VirtualMerge(o1, o2, al));
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].size() == 4);

  CHECK(detect_circularity(VirtualMerge(o1, o2, {al[0]})).empty());

  auto lenient = validate(al, o1, o2);
  CHECK(lenient.rejected.empty());
  REQUIRE(lenient.warnings.size() == 1);
  CHECK(lenient.warnings[0].starts_with("cycle:"));

  auto strict = validate(al, o1, o2, {true});
  REQUIRE(strict.rejected.size() == 1);
  CHECK(strict.rejected[0].reason == RejectionReason::Circularity);
  CHECK(strict.rejected[0].correspondence.source == Iri("http://a#B"));
  CHECK(validate(strict.accepted.correspondences(), o1, o2, {true}).rejected.empty());
}

TEST_CASE("root-to-root mappings on trees form no cycles") {
  Ontology o1 = testing::load_fixture("crs_dr.ofn");
  Ontology o2 = testing::load_fixture("cmt.ofn");
  Alignment al = {corr("http://crs_dr#Person", "http://cmt#Person", 1.0),
                  corr("http://crs_dr#Document", "http://cmt#Document", 1.0)};
  CHECK(detect_circularity(VirtualMerge(o1, o2, al)).empty());
}

TEST_CASE("redundancy detection") {
  Ontology o1 = parse("Declaration(Class(:A))\nDeclaration(Class(:Aeq))\nDeclaration(Class(:C))\n"
                      "EquivalentClasses(:A :Aeq)",
                      "http://a");
  Ontology o2 = parse("Declaration(Class(:X))\nDeclaration(Class(:Y))", "http://b");
  Alignment dup = {corr("http://a#A", "http://b#X", 0.9), corr("http://a#A", "http://b#X", 0.8)};
  auto r1 = detect_redundancy(dup, o1, o2);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].confidence == 0.8);

  Alignment eq = {corr("http://a#Aeq", "http://b#X", 0.7), corr("http://a#A", "http://b#X", 0.9)};
  auto r2 = detect_redundancy(eq, o1, o2);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].source == Iri("http://a#Aeq"));

  Alignment clean = {corr("http://a#A", "http://b#X", 0.9), corr("http://a#C", "http://b#Y", 0.9)};
  CHECK(detect_redundancy(clean, o1, o2).empty());

  auto report = validate(eq, o1, o2);
  REQUIRE(report.rejected.size() == 1);
  CHECK(report.rejected[0].reason == RejectionReason::Redundancy);
  CHECK(report.accepted.implied().empty());  // X is already taken
}

TEST_CASE("redundant rows between otherwise unmapped entities stay implied") {
  Ontology o1 = parse("Declaration(Class(:A))\nDeclaration(Class(:Aeq))\nEquivalentClasses(:A :Aeq)",
                      "http://a");
  Ontology o2 = parse("Declaration(Class(:X))\nDeclaration(Class(:Xeq))\nEquivalentClasses(:X :Xeq)",
                      "http://b");
  Alignment al = {corr("http://a#A", "http://b#X", 0.9), corr("http://a#Aeq", "http://b#Xeq", 0.8)};
  auto report = validate(al, o1, o2);
  REQUIRE(report.accepted.correspondences().size() == 1);
  REQUIRE(report.accepted.implied().size() == 1);
  CHECK(report.accepted.implied()[0].source == Iri("http://a#Aeq"));

  // without the backing row nothing is implied
  Ontology lone = parse("Declaration(Class(:X))\nDeclaration(Class(:Xeq))", "http://b");
  auto unbacked = validate(al, o1, lone);
  CHECK(unbacked.rejected.empty());
  CHECK(unbacked.accepted.implied().empty());
}

TEST_CASE("report formatting") {
  Ontology o1 = testing::load_fixture("clash_a.ofn");
  Ontology o2 = testing::load_fixture("clash_b.ofn");
  Alignment al = parse_alignment(testing::read_text(testing::fixture_path("clash_alignment.tsv")));
  auto text = format_report(validate(al, o1, o2));
  CHECK(text.starts_with("accepted 1 correspondences\nrejected 1\n"));
  CHECK(text.find("disjointness-clash") != std::string::npos);
}
