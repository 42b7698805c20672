#include <algorithm>
#include <chrono>
#include <cmath>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>

#include <fmt/core.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "newslens/error.hpp"
#include "newslens/index.hpp"
#include "newslens/service.hpp"
#include "newslens/synth.hpp"

namespace {

using namespace newslens;

struct Options {
  std::string corpus;
  std::string index_dir;
  std::string out;
  std::string config;
  std::string host;
  int port = -1;
  std::string ui_dir;
  std::string q;
  std::string f;
  std::string from;
  std::string to;
  std::optional<std::uint64_t> seed;
  std::int64_t subjects_page = 0;
  std::int64_t summary_page = 0;
  bool json = false;
  std::string queries;
  std::size_t synth_docs = 10000;
  std::size_t synth_tokens = 200;
  std::size_t synth_queries = 200;
  std::uint64_t synth_seed = 1;
  std::string queries_out;
};

ServiceConfig load_config(const Options& o) {
  ServiceConfig c = o.config.empty() ? ServiceConfig{} : ServiceConfig::load(o.config);
  if (o.port >= 0) c.port = o.port;
  if (!o.host.empty()) c.host = o.host;
  c.validate();
  return c;
}

std::string corpus_name_of(const std::string& dir) {
  auto name = std::filesystem::path(dir).lexically_normal().filename().string();
  if (name.empty()) name = std::filesystem::path(dir).lexically_normal().parent_path().filename().string();
  return name;
}

Engine open_engine(const Options& o) {
  auto bundle = std::make_shared<const IndexBundle>(load_index(o.index_dir));
  return Engine(std::move(bundle), load_config(o), corpus_name_of(o.index_dir));
}

int run_index(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  auto docs = parse_corpus_file(o.corpus);
  if (docs.empty()) throw InvalidArgument("corpus '" + o.corpus + "' contains no documents");
  const IndexBundle bundle = build_index(std::move(docs));
  save_index(bundle, o.out);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fmt::print("indexed {} documents, {} terms, {} phrases ({} .. {}) into {} in {:.1f}s\n", bundle.doc_count(),
             bundle.term_count(), bundle.phrase_count(), bundle.corpus_span().start.to_string(),
             bundle.corpus_span().end.to_string(), o.out, secs);
  return 0;
}

HttpServer* g_server = nullptr;

int run_serve(const Options& o) {
  const Engine engine = open_engine(o);
  std::optional<std::filesystem::path> ui;
  if (!o.ui_dir.empty()) ui = o.ui_dir;
  HttpServer server(engine, ui);
  const int port = server.bind(engine.config().host, engine.config().port);
  spdlog::info("serving '{}' ({} documents) on http://{}:{}", engine.corpus_name(), engine.bundle().doc_count(),
               engine.config().host, port);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  server.listen();
  g_server = nullptr;
  return 0;
}

std::string clip(std::string_view s, std::size_t n) {
  if (s.size() <= n) return std::string(s);
  std::size_t cut = n;
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  return std::string(s.substr(0, cut)) + "...";
}

int run_query(const Options& o) {
  const Engine engine = open_engine(o);
  StateRequest req;
  req.q = o.q;
  if (!o.f.empty()) req.f = o.f;
  if (!o.from.empty()) req.start = Date::parse_or_throw(o.from, "--from");
  if (!o.to.empty()) req.end = Date::parse_or_throw(o.to, "--to");
  req.seed = o.seed;
  req.subjects_page = o.subjects_page;
  req.summary_page = o.summary_page;
  const StateResponse r = engine.state(req);
  if (o.json) {
    std::cout << to_json(r).dump(2) << '\n';
    return 0;
  }
  fmt::print("query      : {}\n", r.selection.query);
  fmt::print("facet      : {}\n", r.selection.facet.value_or("-"));
  fmt::print("timespan   : {} .. {}\n", r.selection.timespan->start.to_string(), r.selection.timespan->end.to_string());
  fmt::print("total_docs : {}\n", r.total_docs);
  fmt::print("seed       : {}\n\n", r.seed);
  fmt::print("subjects (page {}, {} total)\n", r.subjects.page, r.subjects.total);
  fmt::print("  {:>3}  {:>8}  {:>6}  {:>6}  {}\n", "#", "score", "qf", "df", "phrase");
  std::size_t rank = r.subjects.page * r.subjects.page_size;
  for (const auto& s : r.subjects.items) {
    fmt::print("  {:>3}  {:>8.4f}  {:>6}  {:>6}  {}\n", ++rank, s.score(), s.qf, s.df, s.phrase);
  }
  fmt::print("\nsummary (page {}, {} total)\n", r.summary.page, r.summary.total);
  for (const auto& c : r.summary.items) {
    fmt::print("  [{}] {}  {}#{}  {}\n", c.tier, c.date.to_string(), c.doc_id, c.sentence_index, clip(c.text, 100));
  }
  return 0;
}

double percentile(std::vector<double> sorted_ms, double p) {
  if (sorted_ms.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted_ms.size())));
  return sorted_ms[std::clamp<std::size_t>(rank, 1, sorted_ms.size()) - 1];
}

bool month_aligned(const DateRange& r) {
  return r.start.day == 1 && r.end == YearMonth::of(r.end).last_day();
}

int run_bench(const Options& o) {
  const Engine engine = open_engine(o);
  std::ifstream in(o.queries);
  if (!in) throw NotFound("cannot open query file '" + o.queries + "'");
  const auto queries = synth::read_queries(in);
  if (queries.empty()) throw InvalidArgument("query file '" + o.queries + "' is empty");

  std::vector<double> ms;
  std::size_t errors = 0;
  std::size_t inconsistent = 0;
  for (const auto& bq : queries) {
    Params params{{"q", bq.q}, {"seed", std::to_string(bq.seed)}};
    if (!bq.f.empty()) params.emplace("f", bq.f);
    if (!bq.start.empty()) params.emplace("start", bq.start);
    if (!bq.end.empty()) params.emplace("end", bq.end);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const StateResponse r = engine.state(StateRequest::from_params(params));
      const std::string body = to_json(r).dump();
      ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
      const TimeSeries& series = r.timeseries_qf ? *r.timeseries_qf : r.timeseries_q;
      const std::uint64_t binned = r.timespan ? series.sum_over(*r.timespan) : 0;
      const bool exact = !r.timespan || month_aligned(*r.timespan);
      if (r.total_docs != r.pool_size || (exact ? binned != r.total_docs : binned < r.total_docs)) ++inconsistent;
    } catch (const Error& e) {
      ++errors;
      spdlog::warn("query '{}' failed: {}", bq.q, e.what());
    }
  }
  std::vector<double> sorted = ms;
  std::sort(sorted.begin(), sorted.end());
  const double mean = sorted.empty() ? 0.0 : std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
  if (o.json) {
    nlohmann::json report{{"queries", queries.size()},      {"errors", errors},
                          {"p50_ms", percentile(sorted, 0.50)}, {"p99_ms", percentile(sorted, 0.99)},
                          {"max_ms", sorted.empty() ? 0.0 : sorted.back()}, {"mean_ms", mean},
                          {"inconsistent", inconsistent}};
    std::cout << report.dump(2) << '\n';
  } else {
    fmt::print("queries: {}\n", queries.size());
    fmt::print("errors: {}\n", errors);
    fmt::print("p50: {:.3f} ms\n", percentile(sorted, 0.50));
    fmt::print("p99: {:.3f} ms\n", percentile(sorted, 0.99));
    fmt::print("max: {:.3f} ms\n", sorted.empty() ? 0.0 : sorted.back());
    fmt::print("mean: {:.3f} ms\n", mean);
    fmt::print("inconsistent: {}\n", inconsistent);
  }
  return errors == 0 && inconsistent == 0 ? 0 : 1;
}

int run_synth(const Options& o) {
  synth::CorpusOptions opts;
  opts.docs = o.synth_docs;
  opts.tokens_per_doc = o.synth_tokens;
  opts.seed = o.synth_seed;
  {
    std::ofstream out(o.out);
    if (!out) throw Error("cannot write '" + o.out + "'");
    synth::write_jsonl(synth::generate_corpus(opts), out);
  }
  if (!o.queries_out.empty()) {
    std::ofstream out(o.queries_out);
    if (!out) throw Error("cannot write '" + o.queries_out + "'");
    synth::write_queries(synth::generate_queries(opts, o.synth_queries, o.synth_seed + 1), out);
  }
  fmt::print("wrote {} synthetic documents to {}\n", opts.docs, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exploratory search over dated news archives"};
  app.require_subcommand(1);
  Options o;

  auto* index = app.add_subcommand("index", "Build and persist an index from a JSONL corpus");
  index->add_option("corpus", o.corpus, "Corpus JSONL file")->required();
  index->add_option("--out", o.out, "Index directory")->required();

  auto* serve = app.add_subcommand("serve", "Serve the JSON API over HTTP");
  serve->add_option("index", o.index_dir, "Index directory")->required();
  serve->add_option("--port", o.port, "Port (default from config, 8080)");
  serve->add_option("--host", o.host, "Bind address (default 127.0.0.1)");
  serve->add_option("--config", o.config, "INI config file");
  serve->add_option("--ui", o.ui_dir, "Directory of static UI files served at /");

  auto* query = app.add_subcommand("query", "Run one selection state and print the linked views");
  query->add_option("index", o.index_dir, "Index directory")->required();
  query->add_option("--q", o.q, "Query Q")->required();
  query->add_option("--f", o.f, "Subject F");
  query->add_option("--from", o.from, "Start of T (YYYY-MM-DD)");
  query->add_option("--to", o.to, "End of T (YYYY-MM-DD)");
  query->add_option("--seed", o.seed, "Summary sampling seed");
  query->add_option("--subjects-page", o.subjects_page, "Subjects page");
  query->add_option("--summary-page", o.summary_page, "Summary page");
  query->add_option("--config", o.config, "INI config file");
  query->add_flag("--json", o.json, "Print the JSON StateResponse");

  auto* bench = app.add_subcommand("bench", "Replay a query file and report latency percentiles");
  bench->add_option("index", o.index_dir, "Index directory")->required();
  bench->add_option("--queries", o.queries, "JSONL query file")->required();
  bench->add_option("--config", o.config, "INI config file");
  bench->add_flag("--json", o.json, "Print the report as JSON");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dated corpus (and bench queries)");
  synth_cmd->add_option("--out", o.out, "Corpus JSONL output")->required();
  synth_cmd->add_option("--docs", o.synth_docs, "Number of documents");
  synth_cmd->add_option("--tokens-per-doc", o.synth_tokens, "Approximate tokens per document");
  synth_cmd->add_option("--seed", o.synth_seed, "Generator seed");
  synth_cmd->add_option("--queries", o.queries_out, "Also write a benchmark query file");
  synth_cmd->add_option("--n-queries", o.synth_queries, "Number of benchmark queries");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*index) return run_index(o);
    if (*serve) return run_serve(o);
    if (*query) return run_query(o);
    if (*bench) return run_bench(o);
    if (*synth_cmd) return run_synth(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
