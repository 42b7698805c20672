#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "newslens/date.hpp"

namespace newslens::synth {

/// Deterministic synthetic news archive: recurring stories (a person, a
/// place, a few key phrases) peaking around their own month, mixed with
/// background prose.
struct CorpusOptions {
  std::size_t docs = 1000;
  std::size_t tokens_per_doc = 200;  // approximate
  std::size_t stories = 200;
  std::size_t surnames = 1200;  // vocabulary scale
  int first_year = 1987;
  int years = 20;
  std::uint64_t seed = 1;
};

struct RawDocument {
  std::string id;
  Date date;
  std::string title;
  std::string text;
};

std::vector<RawDocument> generate_corpus(const CorpusOptions& options);
void write_jsonl(const std::vector<RawDocument>& docs, std::ostream& out);

struct BenchQuery {
  std::string q;
  std::string f;  // empty: no facet
  std::string start;  // empty: corpus start
  std::string end;
  std::uint64_t seed = 0;
};

/// Query mix for the latency benchmark. Timespans, when present, are
/// month-aligned.
std::vector<BenchQuery> generate_queries(const CorpusOptions& options, std::size_t count, std::uint64_t seed);
void write_queries(const std::vector<BenchQuery>& queries, std::ostream& out);
/// Reads JSONL query objects; a line not starting with '{' is a bare q.
std::vector<BenchQuery> read_queries(std::istream& in);

}  // namespace newslens::synth
