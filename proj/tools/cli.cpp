#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "axiom_align/error.hpp"
#include "axiom_align/eval.hpp"
#include "axiom_align/matcher.hpp"
#include "axiom_align/merger.hpp"
#include "axiom_align/owl_parser.hpp"
#include "axiom_align/validator.hpp"

namespace axiom_align::cli {

namespace {

namespace fs = std::filesystem;

struct MatchOptions {
  std::string first;
  std::string second;
  std::string alignment_out;
  std::string rejected_out;
  std::string lexicon;
  std::string weights;
  double threshold = MatcherConfig{}.threshold;
  double boost = MatcherConfig{}.boost;
  unsigned threads = 0;
  bool no_partition = false;
  bool stats = false;
  bool strict_cycles = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

Ontology load_ontology(const std::string& path, std::ostream& err) {
  std::string text = read_file(path);
  try {
    auto parsed = parse_ontology(text);
    for (const auto& w : parsed.warnings) {
      err << path << ":" << w.line << ":" << w.column << ": warning: " << w.message << "\n";
    }
    return std::move(parsed.ontology);
  } catch (const ParseError& e) {
    const auto& d = e.diagnostic();
    throw ParseError(ParseDiagnostic{d.line, d.column, path + ": " + d.message, d.severity});
  }
}

Alignment load_alignment(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_alignment(text);
  } catch (const FormatError& e) {
    throw IoError(path + ": " + e.what());
  }
}

Lexicon load_lexicon(const std::string& flag) {
  if (!flag.empty()) return Lexicon::load(flag);
  if (const char* env = std::getenv("AXIOM_ALIGN_LEXICON"); env && *env) return Lexicon::load(env);
  return Lexicon::builtin();
}

MatcherConfig make_config(const MatchOptions& o) {
  MatcherConfig cfg;
  cfg.threshold = o.threshold;
  cfg.boost = o.boost;
  cfg.partitioning = !o.no_partition;
  cfg.threads = o.threads;
  if (!o.weights.empty()) {
    auto comma = o.weights.find(',');
    if (comma == std::string::npos) throw ConfigError("--weights expects w_base,w_axm");
    try {
      std::size_t used = 0;
      cfg.w_base = std::stod(o.weights.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing");
      std::string rest = o.weights.substr(comma + 1);
      cfg.w_axm = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw ConfigError("--weights expects two numbers, got '" + o.weights + "'");
    }
  }
  cfg.validate();
  return cfg;
}

void add_match_flags(CLI::App* cmd, MatchOptions& o) {
  cmd->add_option("first", o.first, "first ontology (.ofn)")->required();
  cmd->add_option("second", o.second, "second ontology (.ofn)")->required();
  cmd->add_flag("--no-partition", o.no_partition, "compare every class pair");
  cmd->add_option("--threshold", o.threshold, "acceptance threshold");
  cmd->add_option("--weights", o.weights, "w_base,w_axm (must sum to 1)");
  cmd->add_option("--boost", o.boost, "inheritance boost");
  cmd->add_option("--lexicon", o.lexicon, "synonym lexicon file");
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
  cmd->add_flag("--stats", o.stats, "print comparison statistics to stderr");
  cmd->add_flag("--strict-cycles", o.strict_cycles, "reject correspondences that close cycles");
  cmd->add_option("--rejected", o.rejected_out, "write rejected correspondences (TSV)");
}

std::string format_stats(const MatchResult& r) {
  const auto& plan = r.plan;
  std::string out;
  out += "exhaustive_comparisons " + std::to_string(plan.exhaustive_count) + "\n";
  out += "planned_comparisons " + std::to_string(plan.planned_count) + "\n";
  out += "executed_comparisons " + std::to_string(plan.executed_count) + "\n";
  out += "property_comparisons " + std::to_string(r.property_comparisons) + "\n";
  auto table = [&](const char* title, const std::vector<Partition>& parts) {
    out += std::string(title) + "\n";
    for (const auto& p : parts) out += "  " + p.name() + " " + std::to_string(p.members.size()) + "\n";
  };
  table("partitions first", plan.first_partitions);
  table("partitions second", plan.second_partitions);
  out += "pairings\n";
  for (const auto& p : plan.pairings) {
    out += "  " + plan.first_partitions[p.first].name() + " " +
           plan.second_partitions[p.second].name() + " " + format_confidence(p.similarity) + "\n";
  }
  return out;
}

struct Pipeline {
  Ontology o1;
  Ontology o2;
  MatchResult match;
  ValidationReport report;
};

Pipeline run_pipeline(const MatchOptions& opts, std::ostream& err) {
  MatcherConfig cfg = make_config(opts);
  Lexicon lexicon = load_lexicon(opts.lexicon);
  Ontology o1 = load_ontology(opts.first, err);
  Ontology o2 = load_ontology(opts.second, err);
  MatchResult match = match_ontologies(o1, o2, cfg, lexicon);
  ValidationReport report = validate(match.alignment, o1, o2, {opts.strict_cycles});
  if (opts.stats) err << format_stats(match);
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  if (!opts.rejected_out.empty()) write_file(opts.rejected_out, format_rejections(report));
  return Pipeline{std::move(o1), std::move(o2), std::move(match), std::move(report)};
}

std::string sibling_path(const std::string& path, const char* extension) {
  return fs::path(path).replace_extension(extension).string();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Align and merge OWL ontologies", args.empty() ? "axiom-align" : args[0]};
  app.require_subcommand(1);

  MatchOptions match_opts;
  auto* match_cmd = app.add_subcommand("match", "align two ontologies");
  add_match_flags(match_cmd, match_opts);
  match_cmd->add_option("-a,--alignment", match_opts.alignment_out, "alignment output (default: stdout)");

  MatchOptions merge_opts;
  std::string merged_out;
  auto* merge_cmd = app.add_subcommand("merge", "align, validate and merge two ontologies");
  add_match_flags(merge_cmd, merge_opts);
  merge_cmd->add_option("-o,--output", merged_out, "merged ontology (.ofn)")->required();
  merge_cmd->add_option("-a,--alignment", merge_opts.alignment_out,
                        "alignment output (default: next to the merged ontology)");

  std::string candidate, reference;
  auto* eval_cmd = app.add_subcommand("eval", "score an alignment against a reference");
  eval_cmd->add_option("-a,--alignment", candidate, "candidate alignment (.tsv)")->required();
  eval_cmd->add_option("-r,--reference", reference, "reference alignment (.tsv)")->required();

  MatchOptions stats_opts;
  auto* stats_cmd = app.add_subcommand("partition-stats", "show partitions and comparison counts");
  add_match_flags(stats_cmd, stats_opts);

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (match_cmd->parsed()) {
      auto p = run_pipeline(match_opts, err);
      std::string tsv = serialize_alignment(p.report.accepted.correspondences());
      if (match_opts.alignment_out.empty()) {
        out << tsv;
      } else {
        write_file(match_opts.alignment_out, tsv);
      }
    } else if (merge_cmd->parsed()) {
      auto p = run_pipeline(merge_opts, err);
      MergeResult merged = merge(p.o1, p.o2, p.report.accepted);
      std::string tsv_path =
          merge_opts.alignment_out.empty() ? sibling_path(merged_out, ".tsv") : merge_opts.alignment_out;
      std::string log = "# validation\n" + format_report(p.report) + "# conflicts\n" +
                        format_conflict_log(merged.conflict_log) + "# quality\n" +
                        format_quality(merged.quality) + "# entity map\n" +
                        format_entity_map(merged.entity_map);
      write_file(merged_out, serialize_ontology(merged.merged));
      write_file(tsv_path, serialize_alignment(p.report.accepted.correspondences()));
      write_file(sibling_path(merged_out, ".log"), log);
      if (!merged.quality.coherent) {
        err << "error: merged ontology is incoherent\n";
        return kFailure;
      }
    } else if (eval_cmd->parsed()) {
      auto cand = load_alignment(candidate);
      auto ref = load_alignment(reference);
      auto scores = evaluate(cand, ref);
      out << format_scores(scores) << "\n";
      out << "tp=" << scores.tp << " fp=" << scores.fp << " fn=" << scores.fn << "\n";
    } else if (stats_cmd->parsed()) {
      MatcherConfig cfg = make_config(stats_opts);
      Lexicon lexicon = load_lexicon(stats_opts.lexicon);
      Ontology o1 = load_ontology(stats_opts.first, err);
      Ontology o2 = load_ontology(stats_opts.second, err);
      out << format_stats(match_ontologies(o1, o2, cfg, lexicon));
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace axiom_align::cli
