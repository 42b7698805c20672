#include "newslens/service.hpp"

#include <algorithm>
#include <charconv>
#include <random>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <spdlog/spdlog.h>

#include "httplib.h"
#include "newslens/error.hpp"

namespace newslens {

namespace {

using nlohmann::json;

std::optional<std::string> param(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

template <typename Int>
Int parse_int(const std::string& s, const std::string& key) {
  Int value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InvalidArgument("parameter '" + key + "' must be an integer");
  return value;
}

std::optional<Date> date_param(const Params& params, const std::string& key) {
  auto raw = param(params, key);
  if (!raw || raw->empty()) return std::nullopt;
  return Date::parse_or_throw(*raw, key);
}

std::int64_t page_param(const Params& params, const std::string& key) {
  auto raw = param(params, key);
  if (!raw || raw->empty()) return 0;
  const auto page = parse_int<std::int64_t>(*raw, key);
  if (page < 0) throw InvalidArgument("parameter '" + key + "' must be non-negative");
  return page;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  const std::uint64_t hi = rd();
  const std::uint64_t lo = rd();
  // Stay within 2^53 so JavaScript clients can echo it back exactly.
  return ((hi << 32) | lo) & ((std::uint64_t{1} << 53) - 1);
}

std::string_view kind_name(HighlightKind kind) { return kind == HighlightKind::Query ? "Q" : "F"; }

json highlights_json(const std::vector<Highlight>& highlights) {
  json out = json::array();
  for (const auto& h : highlights) {
    out.push_back({{"start", h.chars.begin}, {"end", h.chars.end}, {"kind", kind_name(h.kind)}});
  }
  return out;
}

std::optional<DateRange> requested_range(const IndexBundle& bundle, const std::optional<Date>& start,
                                         const std::optional<Date>& end) {
  if (!start && !end) return std::nullopt;
  return DateRange{start.value_or(bundle.corpus_span().start), end.value_or(bundle.corpus_span().end)};
}

template <typename T, typename ItemFn>
json page_json(const Page<T>& page, ItemFn&& item) {
  json items = json::array();
  for (const auto& x : page.items) items.push_back(item(x));
  return {{"page", page.page}, {"page_size", page.page_size}, {"total", page.total}, {"items", std::move(items)}};
}

}  // namespace

// ---- config -------------------------------------------------------------------

ServiceConfig ServiceConfig::load(const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ptree_error& e) {
    throw ParseError("cannot read config '" + path.string() + "': " + e.what());
  }
  // get(path, default) swallows conversion errors; read present keys strictly.
  const auto read = [&tree](const char* key, auto& out) {
    if (tree.get_child_optional(key)) out = tree.get<std::decay_t<decltype(out)>>(key);
  };
  ServiceConfig c;
  try {
    read("dedup.levenshtein_sim", c.dedup.levenshtein_sim);
    read("dedup.jaccard", c.dedup.jaccard);
    read("subjects.max", c.subjects_max);
    read("subjects.page_size", c.subjects_page_size);
    read("summary.page_size", c.summary_page_size);
    read("baseline.surround", c.baseline.surround);
    read("baseline.top", c.baseline.top);
    read("baseline.page_size", c.baseline_page_size);
    read("server.port", c.port);
    read("server.host", c.host);
    read("server.cors_origin", c.cors_origin);
  } catch (const boost::property_tree::ptree_error& e) {
    throw ParseError("bad value in config '" + path.string() + "': " + e.what());
  }
  c.validate();
  return c;
}

void ServiceConfig::validate() const {
  const auto unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!unit(dedup.levenshtein_sim) || !unit(dedup.jaccard)) {
    throw InvalidArgument("dedup thresholds must lie in (0, 1]");
  }
  if (subjects_max == 0 || subjects_page_size == 0 || summary_page_size == 0 || baseline_page_size == 0) {
    throw InvalidArgument("subject, summary and baseline sizes must be positive");
  }
  baseline.validate();
  if (port < 0 || port > 65535) throw InvalidArgument("server.port out of range");
}

StateRequest StateRequest::from_params(const Params& params) {
  StateRequest r;
  r.q = param(params, "q").value_or("");
  if (auto f = param(params, "f"); f && !f->empty()) r.f = std::move(f);
  r.start = date_param(params, "start");
  r.end = date_param(params, "end");
  r.subjects_page = page_param(params, "subjects_page");
  r.summary_page = page_param(params, "summary_page");
  if (auto seed = param(params, "seed"); seed && !seed->empty()) r.seed = parse_int<std::uint64_t>(*seed, "seed");
  r.corpus = param(params, "corpus");
  return r;
}

// ---- JSON -------------------------------------------------------------------

json to_json(const TimeSeries& series) {
  json bins = json::array();
  for (const auto& bin : series.bins()) bins.push_back({{"month", bin.month.to_string()}, {"count", bin.count}});
  return {{"bins", std::move(bins)}};
}

json to_json(const StateResponse& r) {
  json out;
  out["selection"] = {
      {"q", r.selection.query},
      {"f", r.selection.facet ? json(*r.selection.facet) : json(nullptr)},
      {"start", r.selection.timespan ? json(r.selection.timespan->start.to_string()) : json(nullptr)},
      {"end", r.selection.timespan ? json(r.selection.timespan->end.to_string()) : json(nullptr)},
  };
  out["timespan"] = r.timespan ? json{{"start", r.timespan->start.to_string()}, {"end", r.timespan->end.to_string()}}
                               : json(nullptr);
  out["total_docs"] = r.total_docs;
  out["seed"] = r.seed;
  out["timeseries_q"] = to_json(r.timeseries_q);
  out["timeseries_qf"] = r.timeseries_qf ? to_json(*r.timeseries_qf) : json(nullptr);
  out["subjects"] = page_json(r.subjects, [](const SubjectScore& s) {
    return json{{"phrase", s.phrase}, {"qf", s.qf}, {"df", s.df}, {"score", s.score()},
                {"sparkline", to_json(s.sparkline)}};
  });
  out["summary"] = page_json(r.summary, [](const SentenceCandidate& c) {
    return json{{"doc_id", c.doc_id},   {"sentence_index", c.sentence_index}, {"tier", c.tier},
                {"date", c.date.to_string()}, {"text", c.text}, {"highlights", highlights_json(c.highlights)}};
  });
  return out;
}

// ---- Engine -------------------------------------------------------------------

Engine::Engine(std::shared_ptr<const IndexBundle> bundle, ServiceConfig config, std::string corpus_name)
    : bundle_(std::move(bundle)), config_(std::move(config)), corpus_name_(std::move(corpus_name)) {
  config_.validate();
}

void Engine::check_corpus(const std::optional<std::string>& corpus) const {
  if (corpus && !corpus->empty() && *corpus != corpus_name_) {
    throw NotFound("unknown corpus '" + *corpus + "'");
  }
}

StateResponse Engine::state(const StateRequest& request) const {
  check_corpus(request.corpus);
  const IndexBundle& b = *bundle_;
  StateResponse r;
  r.selection = SelectionState{request.q, request.f, requested_range(b, request.start, request.end)};
  r.seed = request.seed.value_or(fresh_seed());

  const QueryTerms query = parse_query(b, r.selection.query);
  const auto facet = parse_facet(b, r.selection.facet);
  r.timespan = resolve_timespan(b, r.selection);
  if (!r.selection.timespan) r.selection.timespan = b.corpus_span();

  // D(Q) over the whole corpus drives the timeline and sparklines.
  const std::vector<DocNum> q_docs = match_query(b, query);
  r.timeseries_q = series_of(b, q_docs);
  std::vector<DocNum> qf_docs;
  if (facet) {
    for (DocNum d : q_docs) {
      if (contains_facet(b, d, *facet)) qf_docs.push_back(d);
    }
    r.timeseries_qf = series_of(b, qf_docs);
  }

  const auto clip = [&](const std::vector<DocNum>& docs) {
    if (!r.timespan) return std::vector<DocNum>{};
    const Span window = b.docs_in(*r.timespan);
    const auto lo = std::lower_bound(docs.begin(), docs.end(), window.begin);
    const auto hi = std::lower_bound(lo, docs.end(), window.end);
    return std::vector<DocNum>(lo, hi);
  };
  const std::vector<DocNum> qt_docs = clip(q_docs);

  // Subjects come from (Q, T) only.
  const auto ranked = score_subjects(b, qt_docs);
  auto kept = dedup_subjects(ranked, config_.dedup, config_.subjects_max);
  r.subjects = paginate(kept, request.subjects_page, config_.subjects_page_size);
  for (auto& s : r.subjects.items) s.sparkline = subject_sparkline(b, s.phrase, q_docs);

  DocumentSelection selection{r.selection, r.timespan, facet ? clip(qf_docs) : qt_docs};
  const SentencePool pool = build_sentence_pool(b, selection, query, facet);
  r.total_docs = selection.docs.size();
  r.pool_size = pool.candidates.size();
  const auto order = sample_order(pool, r.seed);
  const auto positions = paginate(order, request.summary_page, config_.summary_page_size);
  r.summary.total = positions.total;
  r.summary.page = positions.page;
  r.summary.page_size = positions.page_size;
  for (std::size_t i : positions.items) r.summary.items.push_back(pool.candidates[i]);
  return r;
}

json Engine::document(std::string_view id, const std::optional<std::string>& q,
                      const std::optional<std::string>& f) const {
  const IndexBundle& b = *bundle_;
  const auto d = b.find_doc(id);
  if (!d) throw NotFound("unknown document '" + std::string(id) + "'");
  const StoredDocument& doc = b.doc(*d);

  QueryTerms query;
  if (q && !q->empty()) {
    try {
      query = parse_query(b, *q);
    } catch (const InvalidArgument&) {
      // Punctuation-only q: nothing to highlight.
    }
  }
  const auto facet = parse_facet(b, f);

  json sentences = json::array();
  for (const auto& s : doc.sentences) {
    const StoredToken& first = doc.tokens[s.token_span.begin];
    const StoredToken& last = doc.tokens[s.token_span.end - 1];
    sentences.push_back({{"index", s.index},
                         {"start", s.char_span.begin},
                         {"end", s.char_span.end},
                         {"text", doc.text.substr(first.byte_begin, last.byte_end - first.byte_begin)}});
  }
  const Span all_tokens{0, static_cast<std::uint32_t>(doc.tokens.size())};
  return {{"id", doc.id},
          {"date", doc.date.to_string()},
          {"title", doc.title},
          {"text", doc.text},
          {"sentences", std::move(sentences)},
          {"highlights", highlights_json(find_highlights(b, *d, all_tokens, query, facet, 0))}};
}

json Engine::baseline(const std::string& q, const std::optional<Date>& start, const std::optional<Date>& end,
                      std::int64_t page) const {
  const IndexBundle& b = *bundle_;
  const QueryTerms query = parse_query(b, q);
  const auto range = requested_range(b, start, end);
  const auto ranked = rank_documents_baseline(b, q, range);
  const auto slice = paginate(ranked, page, config_.baseline_page_size);
  json results = json::array();
  for (const auto& rd : slice.items) {
    const StoredDocument& doc = b.doc(rd.doc);
    const Snippet snippet = make_snippet(b, rd.doc, query, config_.baseline);
    json fragments = json::array();
    for (const auto& frag : snippet.fragments) {
      json marks = json::array();
      for (const auto& h : frag.highlights) marks.push_back({{"start", h.begin}, {"end", h.end}});
      fragments.push_back({{"text", frag.text}, {"start", frag.chars.begin}, {"end", frag.chars.end},
                           {"highlights", std::move(marks)}});
    }
    results.push_back({{"doc_id", doc.id}, {"date", doc.date.to_string()}, {"title", doc.title},
                       {"score", rd.score}, {"snippet", snippet.render()}, {"fragments", std::move(fragments)}});
  }
  return {{"q", q},
          {"page", slice.page},
          {"page_size", slice.page_size},
          {"total", slice.total},
          {"results", std::move(results)}};
}

json Engine::handle_state(const Params& params) const { return to_json(state(StateRequest::from_params(params))); }

json Engine::handle_document(std::string_view id, const Params& params) const {
  check_corpus(param(params, "corpus"));
  return document(id, param(params, "q"), param(params, "f"));
}

json Engine::handle_baseline(const Params& params) const {
  check_corpus(param(params, "corpus"));
  return baseline(param(params, "q").value_or(""), date_param(params, "start"), date_param(params, "end"),
                  page_param(params, "page"));
}

// ---- HTTP ---------------------------------------------------------------------

struct HttpServer::Impl {
  const Engine& engine;
  httplib::Server server;

  explicit Impl(const Engine& e) : engine(e) {}

  template <typename Handler>
  void respond(httplib::Response& res, Handler&& handler) {
    int status = 200;
    json body;
    try {
      body = handler();
    } catch (const InvalidArgument& e) {
      status = 400;
      body = {{"error", e.what()}};
    } catch (const NotFound& e) {
      status = 404;
      body = {{"error", e.what()}};
    } catch (const std::exception& e) {
      status = 500;
      body = {{"error", e.what()}};
      spdlog::error("request failed: {}", e.what());
    }
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
  }
};

HttpServer::HttpServer(const Engine& engine, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(engine)) {
  auto& server = impl_->server;
  Impl* impl = impl_.get();
  const std::string origin = engine.config().cors_origin;
  server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Get("/api/health", [impl](const httplib::Request&, httplib::Response& res) {
    impl->respond(res, [&] {
      const auto& b = impl->engine.bundle();
      return json{{"corpus", impl->engine.corpus_name()},
                  {"n_docs", b.doc_count()},
                  {"corpus_span", {b.corpus_span().start.to_string(), b.corpus_span().end.to_string()}}};
    });
  });
  server.Get("/api/state", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->respond(res, [&] { return impl->engine.handle_state(req.params); });
  });
  server.Get(R"(/api/doc/(.+))", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->respond(res, [&] { return impl->engine.handle_document(req.matches[1].str(), req.params); });
  });
  server.Get("/api/baseline", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->respond(res, [&] { return impl->engine.handle_baseline(req.params); });
  });
  if (static_dir) {
    if (!server.set_mount_point("/", static_dir->string())) {
      throw NotFound("UI directory '" + static_dir->string() + "' does not exist");
    }
  }
  server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace newslens
