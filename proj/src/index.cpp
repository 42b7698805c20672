#include "newslens/index.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <zlib.h>

#include "json.hpp"
#include "newslens/error.hpp"
#include "newslens/phrases.hpp"
#include "newslens/text.hpp"

namespace newslens {

namespace {

static_assert(std::endian::native == std::endian::little, "index files are written little-endian");

bool is_punct_surface(std::string_view s) {
  const auto cps = text::decode_utf8(s);
  return !cps.empty() && std::all_of(cps.begin(), cps.end(), [](const text::CodePoint& c) {
    return text::is_punct(c.value);
  });
}

template <typename Ids>
bool all_known(const Ids& ids) {
  return std::none_of(ids.begin(), ids.end(), [](TermId t) { return t == kUnknownTerm; });
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

// ---- binary segment files -------------------------------------------------

class Writer {
 public:
  template <typename T>
  void put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    const auto* p = reinterpret_cast<const char*>(&value);
    buf_.append(p, sizeof(T));
  }
  void put_string(std::string_view s) {
    put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }
  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(std::string_view bytes, std::string name) : bytes_(bytes), name_(std::move(name)) {}

  template <typename T>
  T get() {
    static_assert(std::is_trivially_copyable_v<T>);
    need(sizeof(T));
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }
  std::string get_string() {
    const auto n = get<std::uint32_t>();
    need(n);
    std::string s(bytes_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  /// Element count guarded against the bytes left, so a corrupt length
  /// cannot trigger a huge allocation.
  std::uint32_t get_count(std::size_t min_element_bytes) {
    const auto n = get<std::uint32_t>();
    if (static_cast<std::uint64_t>(n) * min_element_bytes > bytes_.size() - pos_) {
      throw ParseError("corrupt index file '" + name_ + "': bad element count");
    }
    return n;
  }
  void expect_end() const {
    if (pos_ != bytes_.size()) throw ParseError("corrupt index file '" + name_ + "': trailing bytes");
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw ParseError("corrupt index file '" + name_ + "': truncated");
  }

  std::string_view bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

void put_date(Writer& w, const Date& d) {
  w.put<std::int32_t>(d.year);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(d.month));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(d.day));
}

Date get_date(Reader& r, const std::string& name) {
  Date d;
  d.year = r.get<std::int32_t>();
  d.month = r.get<std::uint8_t>();
  d.day = r.get<std::uint8_t>();
  if (!Date::parse(d.to_string())) throw ParseError("corrupt index file '" + name + "': bad date");
  return d;
}

void put_postings(Writer& w, const std::vector<Posting>& postings) {
  w.put<std::uint32_t>(static_cast<std::uint32_t>(postings.size()));
  for (const auto& p : postings) {
    w.put<std::uint32_t>(p.doc);
    w.put<std::uint32_t>(p.count);
  }
}

std::vector<Posting> get_postings(Reader& r, std::size_t n_docs, const std::string& name) {
  std::vector<Posting> out(r.get_count(8));
  for (auto& p : out) {
    p.doc = r.get<std::uint32_t>();
    p.count = r.get<std::uint32_t>();
    if (p.doc >= n_docs) throw ParseError("corrupt index file '" + name + "': posting out of range");
  }
  return out;
}

constexpr std::uint32_t kSegmentMagic = 0x314B5452;  // "RTK1"

std::uint32_t crc_of(const std::string& bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; segments stay far below 4 GiB.
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("short write to '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("missing index file '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

// ---- IndexBundle -------------------------------------------------------------

std::optional<DocNum> IndexBundle::find_doc(std::string_view id) const {
  auto it = doc_lookup_.find(std::string(id));
  if (it == doc_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<TermId> IndexBundle::find_term(std::string_view normalized) const {
  auto it = term_lookup_.find(std::string(normalized));
  if (it == term_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<PhraseId> IndexBundle::find_phrase(std::string_view normalized) const {
  auto it = phrase_lookup_.find(std::string(normalized));
  if (it == phrase_lookup_.end()) return std::nullopt;
  return it->second;
}

Document IndexBundle::document(DocNum d) const {
  const StoredDocument& sd = docs_[d];
  Document doc{sd.id, sd.date, sd.title, sd.text, sd.sentences, {}};
  doc.tokens.reserve(sd.tokens.size());
  for (const auto& sentence : sd.sentences) {
    for (std::uint32_t i = sentence.token_span.begin; i < sentence.token_span.end; ++i) {
      const StoredToken& st = sd.tokens[i];
      Token t;
      t.surface = sd.text.substr(st.byte_begin, st.byte_end - st.byte_begin);
      t.normalized = terms_[st.term];
      t.pos = st.pos;
      t.char_offset = st.char_begin;
      t.byte_offset = st.byte_begin;
      t.sentence_index = sentence.index;
      doc.tokens.push_back(std::move(t));
    }
  }
  return doc;
}

Span IndexBundle::docs_in(const DateRange& range) const {
  const auto lo = std::partition_point(docs_.begin(), docs_.end(),
                                       [&](const StoredDocument& d) { return d.date < range.start; });
  const auto hi = std::partition_point(lo, docs_.end(),
                                       [&](const StoredDocument& d) { return d.date <= range.end; });
  return {static_cast<std::uint32_t>(lo - docs_.begin()), static_cast<std::uint32_t>(hi - docs_.begin())};
}

void IndexBundle::rebuild_lookups() {
  doc_lookup_.clear();
  term_lookup_.clear();
  phrase_lookup_.clear();
  doc_lookup_.reserve(docs_.size());
  for (DocNum d = 0; d < docs_.size(); ++d) doc_lookup_.emplace(docs_[d].id, d);
  term_lookup_.reserve(terms_.size());
  for (TermId t = 0; t < terms_.size(); ++t) term_lookup_.emplace(terms_[t], t);
  phrase_lookup_.reserve(phrases_.size());
  for (PhraseId p = 0; p < phrases_.size(); ++p) {
    auto& entry = phrases_[p];
    entry.df = static_cast<std::uint32_t>(entry.postings.size());
    entry.total = 0;
    for (const auto& posting : entry.postings) entry.total += posting.count;
    phrase_lookup_.emplace(entry.text, p);
  }
  span_ = DateRange{docs_.front().date, docs_.back().date};
}

// ---- query parsing -------------------------------------------------------

bool QueryTerms::resolvable() const { return all_known(ids); }
std::string QueryTerms::joined() const { return join(normalized); }
bool FacetTerms::resolvable() const { return all_known(ids); }
std::string FacetTerms::joined() const { return join(normalized); }

QueryTerms parse_query(const IndexBundle& bundle, std::string_view q) {
  QueryTerms out;
  for (const auto& token : tokenize(q)) {
    if (is_punct_surface(token.surface)) continue;
    if (std::find(out.normalized.begin(), out.normalized.end(), token.normalized) != out.normalized.end()) continue;
    out.normalized.push_back(token.normalized);
    out.ids.push_back(bundle.find_term(token.normalized).value_or(kUnknownTerm));
  }
  if (out.normalized.empty()) throw InvalidArgument("empty query");
  return out;
}

std::optional<FacetTerms> parse_facet(const IndexBundle& bundle, const std::optional<std::string>& f) {
  if (!f) return std::nullopt;
  auto tokens = tokenize(*f);
  while (!tokens.empty() && is_punct_surface(tokens.back().surface)) tokens.pop_back();
  if (tokens.empty()) return std::nullopt;
  FacetTerms out;
  for (const auto& token : tokens) {
    out.normalized.push_back(token.normalized);
    out.ids.push_back(bundle.find_term(token.normalized).value_or(kUnknownTerm));
  }
  return out;
}

std::optional<DateRange> resolve_timespan(const IndexBundle& bundle, const SelectionState& state) {
  const DateRange corpus = bundle.corpus_span();
  if (!state.timespan) return corpus;
  const DateRange& t = *state.timespan;
  if (t.end < t.start) {
    throw InvalidArgument("timespan start " + t.start.to_string() + " is after end " + t.end.to_string());
  }
  DateRange clipped{std::max(t.start, corpus.start), std::min(t.end, corpus.end)};
  if (clipped.end < clipped.start) return std::nullopt;
  return clipped;
}

std::vector<std::string> DocumentSelection::doc_ids(const IndexBundle& bundle) const {
  std::vector<std::string> out;
  out.reserve(docs.size());
  for (DocNum d : docs) out.push_back(bundle.doc(d).id);
  return out;
}

// ---- build -------------------------------------------------------------------

IndexBundle build_index(std::vector<Document> docs) {
  if (docs.empty()) throw InvalidArgument("cannot build an index from an empty corpus");
  {
    std::unordered_set<std::string> ids;
    for (const auto& d : docs) {
      if (!ids.insert(d.id).second) throw InvalidArgument("duplicate document id '" + d.id + "'");
      if (!d.tagged()) throw InvalidArgument("document '" + d.id + "' is not POS-tagged");
    }
  }
  std::sort(docs.begin(), docs.end(), [](const Document& a, const Document& b) {
    return a.date != b.date ? a.date < b.date : a.id < b.id;
  });

  IndexBundle b;
  b.docs_.reserve(docs.size());

  // Candidate phrases before the corpus-count threshold.
  std::unordered_map<std::string, std::uint32_t> candidate_ids;
  std::vector<std::string> candidate_text;
  std::vector<std::vector<TermId>> candidate_terms;
  std::vector<std::uint64_t> candidate_total;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> doc_candidates(docs.size());

  std::vector<TermId> doc_terms;
  std::vector<std::uint32_t> doc_phrase_ids;
  for (DocNum d = 0; d < docs.size(); ++d) {
    Document& doc = docs[d];
    StoredDocument sd;
    sd.id = doc.id;
    sd.date = doc.date;
    sd.title = doc.title;
    sd.sentences = doc.sentences;
    sd.tokens.reserve(doc.tokens.size());
    doc_terms.clear();
    for (const auto& t : doc.tokens) {
      auto [it, inserted] = b.term_lookup_.try_emplace(t.normalized, static_cast<TermId>(b.terms_.size()));
      if (inserted) {
        b.terms_.push_back(t.normalized);
        b.term_postings_.emplace_back();
      }
      sd.tokens.push_back(StoredToken{it->second, t.byte_offset, t.byte_end(), t.char_offset, t.char_end(), *t.pos});
      if (*t.pos != Pos::Punct) doc_terms.push_back(it->second);
    }
    std::sort(doc_terms.begin(), doc_terms.end());
    for (std::size_t i = 0; i < doc_terms.size();) {
      std::size_t j = i;
      while (j < doc_terms.size() && doc_terms[j] == doc_terms[i]) ++j;
      b.term_postings_[doc_terms[i]].push_back(Posting{d, static_cast<std::uint32_t>(j - i)});
      i = j;
    }

    doc_phrase_ids.clear();
    for (const auto& span : extract_noun_phrases(doc)) {
      auto [it, inserted] = candidate_ids.try_emplace(span.normalized, static_cast<std::uint32_t>(candidate_text.size()));
      if (inserted) {
        candidate_text.push_back(span.normalized);
        std::vector<TermId> terms;
        for (std::uint32_t k = span.token_span.begin; k < span.token_span.end; ++k) {
          terms.push_back(sd.tokens[k].term);
        }
        candidate_terms.push_back(std::move(terms));
        candidate_total.push_back(0);
      }
      ++candidate_total[it->second];
      doc_phrase_ids.push_back(it->second);
    }
    std::sort(doc_phrase_ids.begin(), doc_phrase_ids.end());
    for (std::size_t i = 0; i < doc_phrase_ids.size();) {
      std::size_t j = i;
      while (j < doc_phrase_ids.size() && doc_phrase_ids[j] == doc_phrase_ids[i]) ++j;
      doc_candidates[d].emplace_back(doc_phrase_ids[i], static_cast<std::uint32_t>(j - i));
      i = j;
    }
    sd.text = std::move(doc.text);
    b.docs_.push_back(std::move(sd));
  }

  // Keep phrases meeting the corpus-count threshold, numbered lexicographically.
  std::vector<std::uint32_t> kept;
  for (std::uint32_t c = 0; c < candidate_text.size(); ++c) {
    if (candidate_total[c] >= kMinPhraseCount) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [&](std::uint32_t x, std::uint32_t y) {
    return candidate_text[x] < candidate_text[y];
  });
  std::vector<PhraseId> remap(candidate_text.size(), std::numeric_limits<PhraseId>::max());
  b.phrases_.resize(kept.size());
  for (PhraseId p = 0; p < kept.size(); ++p) {
    remap[kept[p]] = p;
    b.phrases_[p].text = std::move(candidate_text[kept[p]]);
    b.phrases_[p].terms = std::move(candidate_terms[kept[p]]);
  }
  for (DocNum d = 0; d < b.docs_.size(); ++d) {
    auto& phrases = b.docs_[d].phrases;
    for (const auto& [candidate, count] : doc_candidates[d]) {
      const PhraseId p = remap[candidate];
      if (p == std::numeric_limits<PhraseId>::max()) continue;
      phrases.push_back(PhraseCount{p, count});
      b.phrases_[p].postings.push_back(Posting{d, count});
    }
    std::sort(phrases.begin(), phrases.end(), [](const PhraseCount& x, const PhraseCount& y) {
      return x.phrase < y.phrase;
    });
  }
  b.rebuild_lookups();
  return b;
}

// ---- matching -------------------------------------------------------------

std::vector<DocNum> match_query(const IndexBundle& bundle, const QueryTerms& query) {
  if (!query.resolvable()) return {};
  std::vector<TermId> order = query.ids;
  std::sort(order.begin(), order.end(), [&](TermId x, TermId y) {
    return bundle.term_postings(x).size() < bundle.term_postings(y).size();
  });
  std::vector<DocNum> result;
  for (const auto& p : bundle.term_postings(order.front())) result.push_back(p.doc);
  for (std::size_t k = 1; k < order.size() && !result.empty(); ++k) {
    const auto postings = bundle.term_postings(order[k]);
    std::vector<DocNum> next;
    auto it = postings.begin();
    for (DocNum d : result) {
      it = std::lower_bound(it, postings.end(), d, [](const Posting& p, DocNum v) { return p.doc < v; });
      if (it == postings.end()) break;
      if (it->doc == d) next.push_back(d);
    }
    result = std::move(next);
  }
  return result;
}

bool contains_sequence(std::span<const StoredToken> tokens, std::span<const TermId> sequence) {
  if (sequence.empty() || sequence.size() > tokens.size()) return false;
  const std::size_t last = tokens.size() - sequence.size();
  for (std::size_t i = 0; i <= last; ++i) {
    if (tokens[i].term != sequence[0]) continue;
    std::size_t k = 1;
    while (k < sequence.size() && tokens[i + k].term == sequence[k]) ++k;
    if (k == sequence.size()) return true;
  }
  return false;
}

bool contains_facet(const IndexBundle& bundle, DocNum d, const FacetTerms& facet) {
  if (!facet.resolvable()) return false;
  return contains_sequence(bundle.doc(d).tokens, facet.ids);
}

DocumentSelection match_documents(const IndexBundle& bundle, const SelectionState& state) {
  DocumentSelection out;
  out.state = state;
  const QueryTerms query = parse_query(bundle, state.query);
  out.timespan = resolve_timespan(bundle, state);
  if (!out.timespan) return out;
  const auto facet = parse_facet(bundle, state.facet);
  const Span window = bundle.docs_in(*out.timespan);
  for (DocNum d : match_query(bundle, query)) {
    if (d < window.begin || d >= window.end) continue;
    if (facet && !contains_facet(bundle, d, *facet)) continue;
    out.docs.push_back(d);
  }
  return out;
}

// ---- persistence -----------------------------------------------------------

void save_index(const IndexBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  Writer docs;
  docs.put(kSegmentMagic);
  docs.put<std::uint32_t>(static_cast<std::uint32_t>(bundle.docs_.size()));
  for (const auto& d : bundle.docs_) {
    docs.put_string(d.id);
    put_date(docs, d.date);
    docs.put_string(d.title);
    docs.put_string(d.text);
    docs.put<std::uint32_t>(static_cast<std::uint32_t>(d.tokens.size()));
    for (const auto& t : d.tokens) {
      docs.put(t.term);
      docs.put(t.byte_begin);
      docs.put(t.byte_end);
      docs.put(t.char_begin);
      docs.put(t.char_end);
      docs.put<std::uint8_t>(static_cast<std::uint8_t>(t.pos));
    }
    docs.put<std::uint32_t>(static_cast<std::uint32_t>(d.sentences.size()));
    for (const auto& s : d.sentences) {
      docs.put(s.index);
      docs.put(s.char_span.begin);
      docs.put(s.char_span.end);
      docs.put(s.token_span.begin);
      docs.put(s.token_span.end);
    }
    docs.put<std::uint32_t>(static_cast<std::uint32_t>(d.phrases.size()));
    for (const auto& p : d.phrases) {
      docs.put(p.phrase);
      docs.put(p.count);
    }
  }

  Writer terms;
  terms.put(kSegmentMagic);
  terms.put<std::uint32_t>(static_cast<std::uint32_t>(bundle.terms_.size()));
  for (TermId t = 0; t < bundle.terms_.size(); ++t) {
    terms.put_string(bundle.terms_[t]);
    put_postings(terms, bundle.term_postings_[t]);
  }

  Writer phrases;
  phrases.put(kSegmentMagic);
  phrases.put<std::uint32_t>(static_cast<std::uint32_t>(bundle.phrases_.size()));
  for (const auto& p : bundle.phrases_) {
    phrases.put_string(p.text);
    phrases.put<std::uint32_t>(static_cast<std::uint32_t>(p.terms.size()));
    for (TermId t : p.terms) phrases.put(t);
    put_postings(phrases, p.postings);
  }

  nlohmann::json manifest;
  manifest["format_version"] = kIndexFormatVersion;
  manifest["n_docs"] = bundle.docs_.size();
  manifest["n_terms"] = bundle.terms_.size();
  manifest["n_phrases"] = bundle.phrases_.size();
  manifest["corpus_span"] = {bundle.span_.start.to_string(), bundle.span_.end.to_string()};
  manifest["min_phrase_count"] = kMinPhraseCount;
  const std::pair<const char*, const Writer*> segments[] = {
      {"docs.bin", &docs}, {"terms.bin", &terms}, {"phrases.bin", &phrases}};
  for (const auto& [name, writer] : segments) {
    write_file(dir / name, writer->bytes());
    manifest["files"][name] = {{"bytes", writer->bytes().size()}, {"crc32", crc_of(writer->bytes())}};
  }
  // Manifest last: a directory without one is never mistaken for a complete index.
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

IndexBundle load_index(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path)) {
    throw NotFound("missing manifest.json in index directory '" + dir.string() + "'");
  }
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("corrupt manifest.json: ") + e.what());
  }
  std::map<std::string, std::string> segments;
  std::size_t n_docs = 0;
  std::size_t n_terms = 0;
  std::size_t n_phrases = 0;
  try {
    const int version = manifest.at("format_version").get<int>();
    if (version != kIndexFormatVersion) {
      throw VersionMismatch("index format version " + std::to_string(version) +
                            " is not supported by this reader (version " +
                            std::to_string(kIndexFormatVersion) + ")");
    }
    n_docs = manifest.at("n_docs").get<std::size_t>();
    n_terms = manifest.at("n_terms").get<std::size_t>();
    n_phrases = manifest.at("n_phrases").get<std::size_t>();
    for (const char* name : {"docs.bin", "terms.bin", "phrases.bin"}) {
      const auto& meta = manifest.at("files").at(name);
      std::string bytes = read_file(dir / name);
      if (bytes.size() != meta.at("bytes").get<std::size_t>() || crc_of(bytes) != meta.at("crc32").get<std::uint32_t>()) {
        throw ParseError(std::string("corrupt index file '") + name + "': size or checksum mismatch");
      }
      segments.emplace(name, std::move(bytes));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("corrupt manifest.json: ") + e.what());
  }

  IndexBundle b;
  {
    const std::string name = "docs.bin";
    Reader r(segments.at(name), name);
    if (r.get<std::uint32_t>() != kSegmentMagic) throw ParseError("corrupt index file 'docs.bin': bad magic");
    b.docs_.resize(r.get_count(16));
    for (auto& d : b.docs_) {
      d.id = r.get_string();
      d.date = get_date(r, name);
      d.title = r.get_string();
      d.text = r.get_string();
      d.tokens.resize(r.get_count(21));
      for (auto& t : d.tokens) {
        t.term = r.get<std::uint32_t>();
        t.byte_begin = r.get<std::uint32_t>();
        t.byte_end = r.get<std::uint32_t>();
        t.char_begin = r.get<std::uint32_t>();
        t.char_end = r.get<std::uint32_t>();
        const auto pos = r.get<std::uint8_t>();
        if (pos > static_cast<std::uint8_t>(Pos::Other) || t.term >= n_terms || t.byte_end > d.text.size() ||
            t.byte_begin > t.byte_end) {
          throw ParseError("corrupt index file 'docs.bin': bad token");
        }
        t.pos = static_cast<Pos>(pos);
      }
      d.sentences.resize(r.get_count(20));
      for (auto& s : d.sentences) {
        s.index = r.get<std::uint32_t>();
        s.char_span = {r.get<std::uint32_t>(), r.get<std::uint32_t>()};
        s.token_span = {r.get<std::uint32_t>(), r.get<std::uint32_t>()};
        if (s.token_span.end > d.tokens.size() || s.token_span.begin > s.token_span.end) {
          throw ParseError("corrupt index file 'docs.bin': bad sentence");
        }
      }
      d.phrases.resize(r.get_count(8));
      for (auto& p : d.phrases) {
        p.phrase = r.get<std::uint32_t>();
        p.count = r.get<std::uint32_t>();
        if (p.phrase >= n_phrases) throw ParseError("corrupt index file 'docs.bin': bad phrase id");
      }
    }
    r.expect_end();
  }
  {
    const std::string name = "terms.bin";
    Reader r(segments.at(name), name);
    if (r.get<std::uint32_t>() != kSegmentMagic) throw ParseError("corrupt index file 'terms.bin': bad magic");
    const auto n = r.get_count(8);
    b.terms_.resize(n);
    b.term_postings_.resize(n);
    for (TermId t = 0; t < n; ++t) {
      b.terms_[t] = r.get_string();
      b.term_postings_[t] = get_postings(r, b.docs_.size(), name);
    }
    r.expect_end();
  }
  {
    const std::string name = "phrases.bin";
    Reader r(segments.at(name), name);
    if (r.get<std::uint32_t>() != kSegmentMagic) throw ParseError("corrupt index file 'phrases.bin': bad magic");
    b.phrases_.resize(r.get_count(12));
    for (auto& p : b.phrases_) {
      p.text = r.get_string();
      p.terms.resize(r.get_count(4));
      for (auto& t : p.terms) {
        t = r.get<std::uint32_t>();
        if (t >= n_terms) throw ParseError("corrupt index file 'phrases.bin': bad term id");
      }
      p.postings = get_postings(r, b.docs_.size(), name);
    }
    r.expect_end();
  }
  if (b.docs_.size() != n_docs || b.terms_.size() != n_terms || b.phrases_.size() != n_phrases || b.docs_.empty()) {
    throw ParseError("index segments disagree with manifest counts");
  }
  b.rebuild_lookups();
  return b;
}

}  // namespace newslens
