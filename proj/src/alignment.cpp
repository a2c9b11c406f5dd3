#include "axiom_align/alignment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "axiom_align/owl_parser.hpp"

namespace axiom_align {

namespace {

long long milli(double confidence) { return std::llround(confidence * 1000.0); }

std::string format_milli(long long value) {
  std::string frac = std::to_string(value % 1000);
  return std::to_string(value / 1000) + "." + std::string(3 - frac.size(), '0') + frac;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

Iri absolute_iri(std::string_view field, std::size_t line, const char* column) {
  if (field.find(':') == std::string_view::npos) {
    throw FormatError(line, std::string(column) + " is not an absolute IRI: '" +
                                std::string(field) + "'");
  }
  try {
    return Iri(std::string(field));
  } catch (const ModelError& e) {
    throw FormatError(line, e.what());
  }
}

}  // namespace

std::string format_confidence(double confidence) { return format_milli(milli(confidence)); }

bool is_one_to_one(const Alignment& alignment) {
  std::set<Iri> sources, targets;
  for (const auto& c : alignment) {
    if (!sources.insert(c.source).second || !targets.insert(c.target).second) return false;
  }
  return true;
}

bool tsv_order(const Correspondence& a, const Correspondence& b) {
  auto ma = milli(a.confidence), mb = milli(b.confidence);
  if (ma != mb) return ma > mb;
  if (a.source != b.source) return a.source < b.source;
  return a.target < b.target;
}

Alignment parse_alignment(std::string_view text) {
  Alignment out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    start = end == std::string_view::npos ? text.size() : end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto fields = split_tabs(line);
    if (fields.size() != 4) {
      throw FormatError(line_no, "expected 4 tab-separated fields, found " +
                                     std::to_string(fields.size()));
    }
    Iri source = absolute_iri(fields[0], line_no, "source");
    Iri target = absolute_iri(fields[1], line_no, "target");
    if (fields[2] != "=") {
      throw FormatError(line_no, "unsupported relation '" + std::string(fields[2]) + "'");
    }
    double confidence = 0.0;
    auto conf = fields[3];
    auto [ptr, ec] = std::from_chars(conf.data(), conf.data() + conf.size(), confidence,
                                     std::chars_format::fixed);
    if (ec != std::errc() || ptr != conf.data() + conf.size() || conf.empty()) {
      throw FormatError(line_no, "malformed confidence '" + std::string(conf) + "'");
    }
    if (!(confidence >= 0.0 && confidence <= 1.0)) {
      throw FormatError(line_no, "confidence out of range [0,1]: " + std::string(conf));
    }
    out.push_back(Correspondence{std::move(source), std::move(target), Relation::Equivalence,
                                 confidence, std::nullopt});
  }
  return out;
}

std::string serialize_alignment(const Alignment& alignment) {
  std::vector<const Correspondence*> rows;
  rows.reserve(alignment.size());
  for (const auto& c : alignment) rows.push_back(&c);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Correspondence* a, const Correspondence* b) { return tsv_order(*a, *b); });
  std::string out = "#source\ttarget\trelation\tconfidence\n";
  for (const auto* c : rows) {
    out += c->source.full() + "\t" + c->target.full() + "\t=\t" + format_confidence(c->confidence) +
           "\n";
  }
  return out;
}

}  // namespace axiom_align
