#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "newslens/baseline.hpp"
#include "newslens/facets.hpp"
#include "newslens/index.hpp"
#include "newslens/summarizer.hpp"
#include "newslens/timeseries.hpp"

namespace newslens {

/// Tunables, loadable from an INI-style file:
///
///   [dedup]     levenshtein_sim, jaccard
///   [subjects]  max, page_size
///   [summary]   page_size
///   [baseline]  surround, top, page_size
///   [server]    port, host, cors_origin
struct ServiceConfig {
  DedupConfig dedup;
  std::size_t subjects_max = 50;
  std::size_t subjects_page_size = 10;
  std::size_t summary_page_size = 10;
  BaselineConfig baseline;
  std::size_t baseline_page_size = 10;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string cors_origin = "*";

  static ServiceConfig load(const std::filesystem::path& path);
  void validate() const;
};

using Params = std::multimap<std::string, std::string>;

struct StateRequest {
  std::string q;
  std::optional<std::string> f;
  std::optional<Date> start;
  std::optional<Date> end;
  std::int64_t subjects_page = 0;
  std::int64_t summary_page = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> corpus;

  /// Parses HTTP query parameters; throws InvalidArgument on bad values.
  static StateRequest from_params(const Params& params);
};

/// Everything the linked views need, computed from one selection snapshot.
struct StateResponse {
  SelectionState selection;
  std::optional<DateRange> timespan;  // T after clipping; nullopt if outside the corpus
  TimeSeries timeseries_q;
  std::optional<TimeSeries> timeseries_qf;
  Page<SubjectScore> subjects;
  Page<SentenceCandidate> summary;
  std::size_t total_docs = 0;
  std::size_t pool_size = 0;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const TimeSeries& series);
nlohmann::json to_json(const StateResponse& response);

/// Query-path facade over an immutable bundle; safe for concurrent callers.
class Engine {
 public:
  Engine(std::shared_ptr<const IndexBundle> bundle, ServiceConfig config, std::string corpus_name);

  const IndexBundle& bundle() const { return *bundle_; }
  const ServiceConfig& config() const { return config_; }
  const std::string& corpus_name() const { return corpus_name_; }

  StateResponse state(const StateRequest& request) const;
  nlohmann::json document(std::string_view id, const std::optional<std::string>& q,
                          const std::optional<std::string>& f) const;
  nlohmann::json baseline(const std::string& q, const std::optional<Date>& start, const std::optional<Date>& end,
                          std::int64_t page) const;

  /// JSON handlers over raw query parameters (the HTTP surface without sockets).
  nlohmann::json handle_state(const Params& params) const;
  nlohmann::json handle_document(std::string_view id, const Params& params) const;
  nlohmann::json handle_baseline(const Params& params) const;

 private:
  void check_corpus(const std::optional<std::string>& corpus) const;

  std::shared_ptr<const IndexBundle> bundle_;
  ServiceConfig config_;
  std::string corpus_name_;
};

/// Binds the engine to HTTP. Routes: GET /api/state, GET /api/doc/{id},
/// GET /api/baseline, GET /api/health.
class HttpServer {
 public:
  explicit HttpServer(const Engine& engine, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace newslens
