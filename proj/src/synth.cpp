#include "newslens/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "newslens/error.hpp"
#include "newslens/random.hpp"

namespace newslens::synth {

namespace {

constexpr std::array<std::string_view, 24> kOnsets = {"b", "d", "f", "g", "h", "j", "k", "l", "m", "n", "p", "r",
                                                      "s", "t", "v", "z", "br", "dr", "kh", "sh", "st", "tr", "ch", "gr"};
constexpr std::array<std::string_view, 10> kVowels = {"a", "e", "i", "o", "u", "ai", "ou", "ia", "ei", "au"};
constexpr std::array<std::string_view, 8> kCodas = {"", "n", "r", "l", "s", "m", "d", "k"};

constexpr std::array<std::string_view, 14> kTitles = {
    "President", "General", "Minister", "King", "Senator", "Ambassador", "Colonel",
    "Governor", "Mayor", "Judge", "Prince", "Bishop", "Chairman", "Commander"};

constexpr std::array<std::string_view, 72> kNouns = {
    "government", "army", "election", "war", "peace", "talks", "treaty", "border", "militia", "rebels",
    "embassy", "parliament", "coup", "protest", "economy", "aid", "refugees", "police", "court", "party",
    "leader", "troops", "village", "capital", "region", "province", "crisis", "sanctions", "oil", "trade",
    "vote", "constitution", "security", "violence", "attack", "agreement", "negotiations", "opposition", "regime", "family",
    "son", "daughter", "father", "brother", "minister", "spokesman", "officials", "diplomats", "soldiers", "students",
    "workers", "farmers", "president", "ceasefire", "summit", "budget", "debt", "market", "newspaper", "radio",
    "station", "airport", "port", "bank", "prison", "hospital", "school", "church", "mosque", "palace",
    "council", "committee"};

constexpr std::array<std::string_view, 36> kAdjectives = {
    "political", "military", "economic", "national", "international", "foreign", "human", "civil", "former", "new",
    "old", "young", "eldest", "senior", "interim", "secret", "public", "private", "central", "regional",
    "official", "federal", "violent", "peaceful", "massive", "successful", "decisive", "democratic", "western", "northern",
    "southern", "eastern", "strong", "major", "top", "chief"};

constexpr std::array<std::string_view, 30> kVerbs = {
    "announced", "rejected", "signed", "visited", "criticized", "praised", "opened", "closed", "attacked", "defended",
    "supported", "opposed", "demanded", "accepted", "arrested", "released", "approved", "blocked", "ended", "started",
    "met", "said", "told", "became", "led", "won", "lost", "held", "left", "found"};

constexpr std::array<std::string_view, 12> kMonths = {"January", "February", "March",     "April",   "May",      "June",
                                                      "July",    "August",   "September", "October", "November", "December"};

constexpr std::array<std::string_view, 12> kOrgNouns = {"Assembly", "Council", "Party", "Front", "Union", "Movement",
                                                        "Alliance", "Commission", "Congress", "League", "Guard", "Bank"};

struct Story {
  std::string title;
  std::string first;
  std::string last;
  std::string place;
  std::string org;
  std::string key_phrase;   // adj noun
  std::string key_phrase2;  // noun noun
  int peak_month = 0;       // months from first_year-01
  double spread = 3.0;
};

class Generator {
 public:
  explicit Generator(const CorpusOptions& options) : opt_(options), rng_(options.seed) {
    for (std::size_t i = 0; i < std::max<std::size_t>(options.surnames, 8); ++i) surnames_.push_back(capitalized(word(2 + i % 2)));
    for (std::size_t i = 0; i < std::max<std::size_t>(options.surnames / 4, 8); ++i) firsts_.push_back(capitalized(word(2)));
    for (std::size_t i = 0; i < std::max<std::size_t>(options.surnames / 6, 8); ++i) places_.push_back(capitalized(word(3)));
    for (std::size_t i = 0; i < std::max<std::size_t>(options.stories, 1); ++i) stories_.push_back(make_story());
  }

  std::vector<RawDocument> corpus() {
    std::vector<RawDocument> docs;
    docs.reserve(opt_.docs);
    for (std::size_t i = 0; i < opt_.docs; ++i) docs.push_back(document(i));
    return docs;
  }

  const std::vector<Story>& stories() const { return stories_; }
  Xoshiro256& rng() { return rng_; }

  std::string_view pick_noun() { return pick(kNouns); }

 private:
  template <std::size_t N>
  std::string_view pick(const std::array<std::string_view, N>& items) {
    return items[rng_.below(N)];
  }
  const std::string& pick(const std::vector<std::string>& items) { return items[rng_.below(items.size())]; }

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  // Zipf-ish rank: small ranks far more likely.
  std::size_t skewed(std::size_t n) {
    const double u = uniform();
    return std::min(n - 1, static_cast<std::size_t>(std::pow(static_cast<double>(n), u)) - 1);
  }

  std::string word(int syllables) {
    std::string w;
    for (int s = 0; s < syllables; ++s) {
      w += pick(kOnsets);
      w += pick(kVowels);
    }
    w += pick(kCodas);
    return w;
  }

  static std::string capitalized(std::string w) {
    if (!w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
  }

  Story make_story() {
    Story s;
    s.title = std::string(pick(kTitles));
    s.first = pick(firsts_);
    s.last = pick(surnames_);
    s.place = pick(places_);
    s.org = pick(places_) + " " + std::string(pick(kOrgNouns));
    s.key_phrase = std::string(pick(kAdjectives)) + " " + std::string(pick(kNouns));
    s.key_phrase2 = std::string(pick(kNouns)) + " " + std::string(pick(kNouns));
    s.peak_month = static_cast<int>(rng_.below(static_cast<std::uint64_t>(opt_.years) * 12));
    s.spread = 1.0 + uniform() * 6.0;
    return s;
  }

  Date date_for(const Story& story) {
    const int months = opt_.years * 12;
    int m;
    if (uniform() < 0.25) {
      m = static_cast<int>(rng_.below(static_cast<std::uint64_t>(months)));
    } else {
      // Sum of uniforms approximates a bell around the peak.
      const double noise = (uniform() + uniform() + uniform() - 1.5) * 2.0 * story.spread;
      m = std::clamp(story.peak_month + static_cast<int>(std::lround(noise)), 0, months - 1);
    }
    const YearMonth ym = YearMonth::from_index(YearMonth{opt_.first_year, 1}.index() + m);
    const int day = 1 + static_cast<int>(rng_.below(static_cast<std::uint64_t>(ym.last_day().day)));
    return {ym.year, ym.month, day};
  }

  std::string person(const Story& s) {
    switch (rng_.below(3)) {
      case 0: return s.title + " " + s.last;
      case 1: return s.first + " " + s.last;
      default: return s.title + " " + s.first + " " + s.last;
    }
  }

  std::string noun_phrase(const Story& s, bool on_story) {
    if (on_story) {
      switch (rng_.below(4)) {
        case 0: return "the " + s.key_phrase;
        case 1: return "the " + s.key_phrase2;
        case 2: return "the " + s.org;
        default: return "the " + std::string(pick(kNouns)) + " of " + s.place;
      }
    }
    switch (rng_.below(3)) {
      case 0: return "the " + std::string(pick(kAdjectives)) + " " + std::string(pick(kNouns));
      case 1: return "the " + std::string(pick(kNouns));
      default: return "the " + std::string(pick(kNouns)) + " of " + pick(places_);
    }
  }

  std::string sentence(const Story& s) {
    const bool on = uniform() < 0.6;
    const Story& other = stories_[skewed(stories_.size())];
    const Story& who = on ? s : other;
    std::string out;
    switch (rng_.below(7)) {
      case 0:
        out = person(who) + " " + std::string(pick(kVerbs)) + " " + noun_phrase(who, on) + " in " + who.place + ".";
        break;
      case 1:
        out = "The " + std::string(pick(kNouns)) + " of " + who.place + " " + std::string(pick(kVerbs)) + " " +
              std::to_string(2 + rng_.below(90)) + " " + std::string(pick(kNouns)) + " on " +
              std::string(pick(kMonths)) + " " + std::to_string(1 + rng_.below(28)) + ", officials said.";
        break;
      case 2:
        out = who.last + " " + std::string(pick(kVerbs)) + " that " + noun_phrase(who, on) + " was " +
              std::string(pick(kAdjectives)) + ".";
        break;
      case 3:
        out = "In " + who.place + ", " + noun_phrase(who, on) + " " + std::string(pick(kVerbs)) + " the " + who.org +
              " and " + noun_phrase(who, on) + ".";
        break;
      case 4:
        out = who.first + " " + who.last + ", the " + std::string(pick(kAdjectives)) + " " +
              std::string(pick(kNouns)) + " of the " + who.org + ", " + std::string(pick(kVerbs)) + " " +
              noun_phrase(who, on) + ".";
        break;
      case 5:
        out = "\"We " + std::string(pick(kVerbs)) + " " + noun_phrase(who, on) + ",\" " + who.last + " said.";
        break;
      default:
        out = "The " + std::string(pick(kNouns)) + " " + std::string(pick(kVerbs)) + " after " + noun_phrase(who, on) +
              " " + std::string(pick(kVerbs)) + " " + noun_phrase(who, false) + ".";
        break;
    }
    return out;
  }

  RawDocument document(std::size_t i) {
    const Story& s = stories_[skewed(stories_.size())];
    RawDocument doc;
    char id[32];
    std::snprintf(id, sizeof(id), "doc-%06zu", i);
    doc.id = id;
    doc.date = date_for(s);
    doc.title = s.last + " and the " + s.key_phrase;
    std::size_t words = 0;
    while (words < opt_.tokens_per_doc) {
      std::string sent = sentence(s);
      words += static_cast<std::size_t>(std::count(sent.begin(), sent.end(), ' ')) + 2;
      if (!doc.text.empty()) doc.text.push_back(' ');
      doc.text += sent;
    }
    return doc;
  }

  CorpusOptions opt_;
  Xoshiro256 rng_;
  std::vector<std::string> surnames_;
  std::vector<std::string> firsts_;
  std::vector<std::string> places_;
  std::vector<Story> stories_;
};

}  // namespace

std::vector<RawDocument> generate_corpus(const CorpusOptions& options) {
  if (options.docs == 0) throw InvalidArgument("synthetic corpus needs at least one document");
  if (options.years < 1) throw InvalidArgument("synthetic corpus needs at least one year");
  return Generator(options).corpus();
}

void write_jsonl(const std::vector<RawDocument>& docs, std::ostream& out) {
  for (const auto& d : docs) {
    out << nlohmann::json{{"id", d.id}, {"date", d.date.to_string()}, {"title", d.title}, {"text", d.text}}.dump()
        << '\n';
  }
}

std::vector<BenchQuery> generate_queries(const CorpusOptions& options, std::size_t count, std::uint64_t seed) {
  Generator gen(options);  // same stories as the corpus
  Xoshiro256 rng(seed);
  const auto& stories = gen.stories();
  std::vector<BenchQuery> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Story& s = stories[rng.below(std::min<std::size_t>(stories.size(), 40))];
    BenchQuery q;
    switch (rng.below(5)) {
      case 0: q.q = s.last; break;
      case 1: q.q = s.first + " " + s.last; break;
      case 2: q.q = s.place; break;
      case 3: q.q = std::string(gen.pick_noun()); break;  // broad query
      default: q.q = s.key_phrase; break;
    }
    if (rng.below(5) < 2) {
      q.f = rng.below(2) == 0 ? s.title + " " + s.last : s.key_phrase2;
    }
    if (rng.below(2) == 0) {
      const int months = options.years * 12;
      const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(months)));
      const int len = 3 + static_cast<int>(rng.below(34));
      const int b = std::min(months - 1, a + len);
      const int base = YearMonth{options.first_year, 1}.index();
      q.start = YearMonth::from_index(base + a).first_day().to_string();
      q.end = YearMonth::from_index(base + b).last_day().to_string();
    }
    q.seed = i + 1;
    out.push_back(std::move(q));
  }
  return out;
}

void write_queries(const std::vector<BenchQuery>& queries, std::ostream& out) {
  for (const auto& q : queries) {
    nlohmann::json j{{"q", q.q}, {"seed", q.seed}};
    if (!q.f.empty()) j["f"] = q.f;
    if (!q.start.empty()) j["start"] = q.start;
    if (!q.end.empty()) j["end"] = q.end;
    out << j.dump() << '\n';
  }
}

std::vector<BenchQuery> read_queries(std::istream& in) {
  std::vector<BenchQuery> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] != '{') {
      out.push_back(BenchQuery{line.substr(first), "", "", "", line_no});
      continue;
    }
    try {
      const auto j = nlohmann::json::parse(line);
      BenchQuery q;
      q.q = j.at("q").get<std::string>();
      q.f = j.value("f", "");
      q.start = j.value("start", "");
      q.end = j.value("end", "");
      q.seed = j.value("seed", static_cast<std::uint64_t>(line_no));
      out.push_back(std::move(q));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("query file line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace newslens::synth
