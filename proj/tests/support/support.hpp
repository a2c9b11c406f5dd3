#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <random>
#include <string>
#include <vector>

#include "axiom_align/ontology.hpp"
#include "axiom_align/validator.hpp"

namespace axiom_align::testing {

std::filesystem::path fixture_path(const std::string& name);
std::string read_text(const std::filesystem::path& path);
Ontology load_fixture(const std::string& name);

// Every .ofn file under the fixture directory, sorted by name.
std::vector<std::string> fixture_ontologies();

struct FixturePair {
  std::string first;
  std::string second;
};
const std::vector<FixturePair>& fixture_pairs();

struct RandomSpec {
  std::size_t classes = 8;
  std::size_t object_properties = 2;
  std::size_t data_properties = 1;
  std::size_t max_axioms = 50;
  double disjoint_weight = 1.0;  // relative frequency of DisjointClasses
  bool labels = true;
  std::string ns = "http://random.example.org/onto#";
};

Ontology random_ontology(std::mt19937& rng, const RandomSpec& spec = {});
ClassExpression random_expression(std::mt19937& rng, const std::vector<Iri>& classes,
                                  const std::vector<Iri>& object_properties,
                                  const std::vector<Iri>& data_properties, int depth);

using Renamer = std::function<Iri(const Iri&)>;
Axiom rename_axiom(const Axiom& axiom, const Renamer& rename);

// Same entities and axioms, moved to another namespace.
Ontology renamespace(const Ontology& o, const std::string& ns, const std::string& ontology_iri);

// Alignment mapping every entity of o onto the same-fragment entity of the copy.
Alignment identity_alignment(const Ontology& o, const Ontology& copy);

// A deliberately small English word list used for lemmatizer properties.
const std::vector<std::string>& word_list();

// Partitions computed without the library: partition name -> members.
std::map<std::string, std::set<Iri>> oracle_partitions(const Ontology& o);

// Sum of |P|*|Q| over the named pairings plus the fallback-pool cross term.
std::size_t sigma_count(const std::map<std::string, std::set<Iri>>& p1,
                        const std::map<std::string, std::set<Iri>>& p2,
                        const std::vector<std::pair<std::string, std::string>>& pairs);

// Two related ontologies with `partitions` disjoint top-level domains each.
// The second is a renamed copy in which a few classes are reworded.
std::pair<Ontology, Ontology> synthetic_pair(std::uint32_t seed, std::size_t classes,
                                             std::size_t partitions);

// Runs the CLI in-process. Returns the exit code.
struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};
CliRun run_cli(const std::vector<std::string>& args);

std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace axiom_align::testing
