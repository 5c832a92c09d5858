#include "faqkit/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

#include "faqkit/error.hpp"
#include "faqkit/text.hpp"

namespace faqkit::fixtures {

namespace fs = std::filesystem;

std::string pseudo_word(SplitMix64& rng, std::size_t syllables) {
  static constexpr std::string_view consonants = "bdfgklmnprstvz";
  static constexpr std::string_view vowels = "aeiou";
  std::string w;
  for (std::size_t i = 0; i < syllables; ++i) {
    w += consonants[rng.below(consonants.size())];
    w += vowels[rng.below(vowels.size())];
  }
  return w;
}

namespace {

// Draws pseudo-words never handed out before by this generator.
class WordSource {
 public:
  explicit WordSource(std::uint64_t seed) : rng_(seed) {}

  std::string fresh(std::size_t syllables) {
    for (;;) {
      std::string w = pseudo_word(rng_, syllables);
      if (used_.insert(w).second) return w;
    }
  }
  std::uint64_t number(std::uint64_t lo, std::uint64_t hi) { return lo + rng_.below(hi - lo + 1); }

 private:
  SplitMix64 rng_;
  std::set<std::string> used_;
};

std::string capitalize(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
  return s;
}

// ---- page families --------------------------------------------------------

struct Template {
  const char* question;
  const char* answer;
};

constexpr Template kHotelTemplate[] = {
    {"Does {H} have an airport shuttle?",
     "Yes. The shuttle leaves the main entrance every thirty minutes between six in the morning and eleven at "
     "night, and the ride to the airport terminal takes about forty minutes depending on traffic. Please book a "
     "seat at the front desk at least one day before departure."},
    {"What time is check-in and check-out?",
     "Check-in starts at three in the afternoon and check-out is at noon. Early arrival and late departure can be "
     "arranged for a small fee when rooms are available, so please contact the reception team in advance."},
    {"Is breakfast included in the room rate?",
     "Breakfast is included for all direct bookings and is served in the garden restaurant from seven until half "
     "past ten every day. Guests with dietary needs can ask the kitchen for gluten free or vegan options."},
    {"Are pets allowed at {H}?",
     "Small dogs and cats are welcome for an extra charge per night. Pets must stay on a leash in public areas and "
     "cannot be left alone in the room."},
    {"Is there parking at the hotel?",
     "A private underground garage is available for guests at a daily rate. Spaces are limited and cannot be "
     "reserved, so we recommend arriving early during the summer season."},
    {"Does the hotel offer free wifi?",
     "Wireless internet is free in every room and in all public spaces. A faster premium connection can be "
     "purchased at the front desk for guests who need to stream video or join long video calls."},
};

constexpr Template kHotelExtra = {"Can {H} store luggage after check-out?",
                                  "Yes, the concierge keeps bags safely for the whole day at no cost."};

constexpr Template kBikePage[] = {
    {"How do I unlock a bike?", "Scan the code on the handlebar with the app and the lock opens within seconds."},
    {"What happens if I get a flat tyre?",
     "Call the repair line printed on the frame and a mechanic will meet you with a spare wheel."},
    {"Can children ride?", "Riders under fourteen need a parent to sign the rental form at the shop counter."},
    {"Where can I return the bike?", "Any of our twelve docking stations across town accepts returns."},
    {"Do you sell gift cards?", "Gift cards for one, five or ten rides are sold online and in every shop."},
};

}  // namespace

std::vector<FaqPage> hotel_pages(std::uint64_t seed) {
  WordSource words(derive_seed(seed, 1));
  std::vector<FaqPage> pages;
  for (int h = 0; h < 10; ++h) {
    const std::string word = words.fresh(3);
    const std::string name = "Hotel " + capitalize(word);
    std::vector<FaqPair> pairs;
    for (const auto& t : kHotelTemplate)
      pairs.push_back({replace_all(t.question, "{H}", name), replace_all(t.answer, "{H}", name)});
    if (h == 3) pairs.push_back({replace_all(kHotelExtra.question, "{H}", name), kHotelExtra.answer});
    pages.push_back(make_page("https://www.hotel" + word + ".com/faq", "en", std::move(pairs)));
  }
  std::vector<FaqPair> bike;
  for (const auto& t : kBikePage) bike.push_back({t.question, t.answer});
  pages.push_back(make_page("https://www.greenspoke-cycles.com/help/faq", "en", std::move(bike)));
  return pages;
}

namespace {

const std::map<std::string, std::vector<Template>>& travel_templates() {
  static const std::map<std::string, std::vector<Template>> t = {
      {"en",
       {{"How much does a ticket to {P} cost?",
         "A ticket to {P} costs {N} dollars in low season and {M} dollars in summer."},
        {"Can I cancel my booking for {P}?", "Bookings for {P} can be cancelled free of charge up to {N} days before departure."},
        {"How long is the trip to {P}?", "The trip to {P} takes about {N} hours with one stop."},
        {"Is luggage included for {P}?", "One bag of {N} kilograms is included on every flight to {P}."},
        {"Do I need a visa for {P}?", "Travellers to {P} need a visa only for stays longer than {N} days."},
        {"When is the best time to visit {P}?", "Most visitors come to {P} in month {N} when the weather is mild."}}},
      {"fr",
       {{"Combien coûte un billet pour {P} ?",
         "Un billet pour {P} coûte {N} euros en basse saison et {M} euros en été."},
        {"Puis-je annuler ma réservation pour {P} ?",
         "Les réservations pour {P} sont annulables sans frais jusqu'à {N} jours avant le départ."},
        {"Combien de temps dure le voyage vers {P} ?", "Le voyage vers {P} dure environ {N} heures avec une escale."},
        {"Les bagages sont-ils inclus pour {P} ?", "Un bagage de {N} kilos est inclus sur chaque vol vers {P}."},
        {"Faut-il un visa pour {P} ?",
         "Les voyageurs pour {P} ont besoin d'un visa seulement pour un séjour de plus de {N} jours."},
        {"Quelle est la meilleure période pour visiter {P} ?",
         "La plupart des visiteurs viennent à {P} au mois {N} quand le temps est doux."}}},
      {"es",
       {{"¿Cuánto cuesta un billete a {P}?", "Un billete a {P} cuesta {N} euros en temporada baja y {M} euros en verano."},
        {"¿Puedo cancelar mi reserva para {P}?",
         "Las reservas para {P} se pueden cancelar sin coste hasta {N} días antes de la salida."},
        {"¿Cuánto dura el viaje a {P}?", "El viaje a {P} dura unas {N} horas con una escala."},
        {"¿Está incluido el equipaje para {P}?", "Una maleta de {N} kilos está incluida en cada vuelo a {P}."},
        {"¿Necesito un visado para {P}?", "Los viajeros a {P} solo necesitan un visado para estancias de más de {N} días."},
        {"¿Cuál es la mejor época para visitar {P}?",
         "La mayoría de los visitantes llegan a {P} en el mes {N} cuando el clima es suave."}}},
      {"de",
       {{"Wie viel kostet ein Ticket nach {P}?",
         "Ein Ticket nach {P} kostet {N} Euro in der Nebensaison und {M} Euro im Sommer."},
        {"Kann ich meine Buchung für {P} stornieren?",
         "Buchungen für {P} können bis {N} Tage vor der Abreise kostenlos storniert werden."},
        {"Wie lange dauert die Reise nach {P}?", "Die Reise nach {P} dauert etwa {N} Stunden mit einem Zwischenstopp."},
        {"Ist Gepäck für {P} inklusive?", "Ein Koffer mit {N} Kilogramm ist auf jedem Flug nach {P} inklusive."},
        {"Brauche ich ein Visum für {P}?", "Reisende nach {P} brauchen ein Visum nur für Aufenthalte von mehr als {N} Tagen."},
        {"Wann ist die beste Reisezeit für {P}?",
         "Die meisten Besucher kommen im Monat {N} nach {P}, wenn das Wetter mild ist."}}},
  };
  return t;
}

struct TravelSpec {
  const char* url;
  const char* language;
  std::size_t pairs;
};

constexpr TravelSpec kTravelPages[] = {
    {"https://www.travelbrand.com/faq", "en", 6},
    {"https://www.travelbrand.fr/faq", "fr", 6},
    {"https://www.travelbrand.es/faq", "es", 6},
    {"https://www.travelbrand.de/faq", "de", 6},
    {"https://help.tripnest.com/flights", "en", 8},
    {"https://help.tripnest.com/hotels", "en", 7},
    {"https://help.tripnest.com/cars", "en", 6},
    {"https://help.tripnest.com/trains", "en", 5},
    {"https://help.tripnest.com/cruises", "en", 4},
    {"https://www.tripnest.co.uk/faq", "en", 3},
    {"https://www.sunnyroutes.com/faq", "en", 4},
    {"https://www.voyages-soleil.fr/questions", "fr", 5},
    {"https://www.voyages-soleil.fr/aide", "fr", 4},
    {"https://www.gites-bretagne.fr/faq", "fr", 3},
    {"https://www.viajes-luna.es/preguntas", "es", 5},
    {"https://www.viajes-luna.es/ayuda", "es", 3},
    {"https://www.casa-rural.es/faq", "es", 3},
    {"https://www.reisen-stern.de/fragen", "de", 6},
    {"https://www.reisen-stern.de/hilfe", "de", 4},
    {"https://www.ferienhof.de/faq", "de", 3},
};

}  // namespace

std::vector<FaqPage> travel_pages(std::uint64_t seed) {
  WordSource words(derive_seed(seed, 2));
  std::map<std::string, std::size_t> offset;
  std::vector<FaqPage> pages;
  for (const auto& spec : kTravelPages) {
    const auto& templates = travel_templates().at(spec.language);
    std::size_t& start = offset[spec.language];
    std::vector<FaqPair> pairs;
    for (std::size_t k = 0; k < spec.pairs; ++k) {
      const Template& t = templates[(start + k) % templates.size()];
      const std::string place = capitalize(words.fresh(3));
      const std::string n = std::to_string(words.number(2, 90));
      const std::string m = std::to_string(words.number(100, 900));
      auto fill = [&](std::string s) {
        return replace_all(replace_all(replace_all(std::move(s), "{P}", place), "{N}", n), "{M}", m);
      };
      pairs.push_back({fill(t.question), fill(t.answer)});
    }
    start += 1;
    pages.push_back(make_page(spec.url, spec.language, std::move(pairs)));
  }
  return pages;
}

namespace {

constexpr Template kSeparableTemplates[] = {
    {"What is the {W} pass?", "The {W} pass opens the east gate."},
    {"Where does the {W} tour start?", "Every {W} tour starts beside the old harbour."},
    {"How heavy is a {W} crate?", "A full {W} crate weighs nine kilograms."},
    {"Who cleans the {W} room?", "Our night staff clean the {W} room."},
    {"When does {W} practice begin?", "{W} practice begins right after lunch."},
    {"Why was the {W} bridge closed?", "The {W} bridge closed for spring repairs."},
};

}  // namespace

std::vector<FaqPage> separable_pages(std::uint64_t seed, std::size_t pages, std::size_t pairs) {
  WordSource words(derive_seed(seed, 3));
  std::vector<FaqPage> out;
  for (std::size_t p = 0; p < pages; ++p) {
    const std::string domain = words.fresh(4);
    std::vector<FaqPair> items;
    for (std::size_t k = 0; k < pairs; ++k) {
      const Template& t = kSeparableTemplates[k % std::size(kSeparableTemplates)];
      std::string w = words.fresh(3);
      std::string q = replace_all(t.question, "{W}", w);
      std::string a = replace_all(t.answer, "{W}", w);
      if (a.starts_with(w)) a[0] = static_cast<char>(a[0] - 'a' + 'A');
      items.push_back({std::move(q), std::move(a)});
    }
    out.push_back(make_page("https://help." + domain + ".net/faq", "en", std::move(items)));
  }
  return out;
}

TfidfFixture tfidf_fixture() {
  return {{"Where did the cat sit?", "What did the dog do on the log?", "Which bird sang?"},
          {"The cat sat on the mat.", "The dog sat on the log.", "A bird sang a song."}};
}

// ---- html / warc assembly -------------------------------------------------

namespace {

std::string escape_html(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string json_text(const nlohmann::ordered_json& j) { return j.dump(-1, ' ', false); }

nlohmann::ordered_json question_entity(std::string_view question, std::string_view answer) {
  return {{"@type", "Question"},
          {"name", question},
          {"acceptedAnswer", {{"@type", "Answer"}, {"text", answer}}}};
}

std::string html_document(std::string_view language, std::string_view head_extra, std::string_view body) {
  std::string html = "<!DOCTYPE html>\n<html lang=\"";
  html += language;
  html += "\">\n<head>\n<meta charset=\"utf-8\">\n<title>Frequently asked questions</title>\n";
  html += head_extra;
  html += "</head>\n<body>\n";
  html += body;
  html += "</body>\n</html>\n";
  return html;
}

std::string ld_script(std::string_view json) {
  return "<script type=\"application/ld+json\">" + std::string(json) + "</script>\n";
}

}  // namespace

std::string faq_html(const FaqPage& page) {
  nlohmann::ordered_json entities = nlohmann::ordered_json::array();
  std::string body = "<h1>Frequently asked questions</h1>\n";
  for (const auto& p : page.pairs) {
    entities.push_back(question_entity(p.question, p.answer));
    body += "<h2>" + escape_html(p.question) + "</h2>\n<p>" + escape_html(p.answer) + "</p>\n";
  }
  const nlohmann::ordered_json doc{
      {"@context", "https://schema.org"}, {"@type", "FAQPage"}, {"mainEntity", entities}};
  return html_document(page.language, ld_script(json_text(doc)), body);
}

namespace {

struct ExpectedItem {
  std::string question;  // after cleaning
  std::string answer;
  std::string language;  // map entry
  std::optional<std::string> reject;
};

struct LanguageLine {
  std::string url;
  std::size_t index;
  std::string language;
};

// Expected outcome of streaming and extracting one archive, tracked while
// the records are written.
struct ArchiveExpectation {
  std::vector<std::string> record_types;
  std::size_t physical_records = 0;
  std::size_t skipped = 0;
  std::size_t html_documents = 0;
  std::size_t not_response = 0;
  std::size_t not_html = 0;
  std::size_t unsupported_encoding = 0;
  std::size_t duplicate_urls = 0;
  std::size_t ld_blocks = 0;
  std::size_t bad_json = 0;
  std::size_t questions = 0;
  std::map<std::string, std::size_t> rejected;
  std::size_t undetermined = 0;
  std::map<std::pair<std::string, std::string>, std::vector<FaqPair>> pages;
};

class ArchiveBuilder {
 public:
  ArchiveBuilder(const fs::path& path, bool gzip, std::vector<LanguageLine>* languages)
      : writer_(path, gzip), name_(path.filename().string()), languages_(languages) {}

  WarcRecordSpec spec(std::string type, std::optional<std::string> uri, std::string content_type,
                      std::string payload) {
    WarcRecordSpec s;
    s.warc_type = std::move(type);
    s.target_uri = std::move(uri);
    s.content_type = std::move(content_type);
    s.payload = std::move(payload);
    const auto h1 = text::hex64(text::fnv1a64(name_ + "#" + std::to_string(counter_)));
    const auto h2 = text::hex64(text::fnv1a64(std::to_string(counter_) + "#" + name_));
    ++counter_;
    s.record_id = h1.substr(0, 8) + "-" + h1.substr(8, 4) + "-" + h1.substr(12, 4) + "-" + h2.substr(0, 4) + "-" +
                  h2.substr(4, 12);
    return s;
  }

  void warcinfo() {
    write(spec("warcinfo", std::nullopt, "application/warc-fields",
               "software: faqkit-fixtures\r\nformat: WARC File Format 1.0\r\n"));
    ++expect.not_response;
  }

  void request(const std::string& url) {
    const auto host = url.substr(url.find("//") + 2, url.find('/', url.find("//") + 2) - url.find("//") - 2);
    write(spec("request", url, "application/http; msgtype=request",
               "GET " + url.substr(url.find('/', url.find("//") + 2)) + " HTTP/1.1\r\nHost: " + host + "\r\n\r\n"));
    ++expect.not_response;
  }

  void metadata(const std::string& url) {
    write(spec("metadata", url, "application/warc-fields", "fetchTimeMs: 120\r\n"));
    ++expect.not_response;
  }

  // An HTML response; `items` describe every Question entity in its markup
  // in document order, `ld_blocks`/`bad_json` its script blocks.
  void faq_response(const std::string& url, const std::string& http_payload, const std::vector<ExpectedItem>& items,
                    std::size_t ld_blocks, std::size_t bad_json = 0, bool duplicate = false) {
    write(spec("response", url, "application/http; msgtype=response", http_payload));
    ++expect.html_documents;
    if (duplicate) {
      ++expect.duplicate_urls;
      return;
    }
    expect.ld_blocks += ld_blocks;
    expect.bad_json += bad_json;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& it = items[i];
      ++expect.questions;
      languages_->push_back({url, i, it.language});
      if (it.reject) {
        ++expect.rejected[*it.reject];
      } else if (it.language == "und") {
        ++expect.undetermined;
      } else {
        expect.pages[{url, it.language}].push_back({it.question, it.answer});
      }
    }
  }

  void page_response(const FaqPage& page) {
    std::vector<ExpectedItem> items;
    for (const auto& p : page.pairs) items.push_back({p.question, p.answer, page.language, std::nullopt});
    faq_response(page.url, http_response("text/html; charset=utf-8", faq_html(page)), items, 1);
  }

  void other_response(const std::string& url, const std::string& http_payload, bool html,
                      bool unsupported_encoding = false) {
    write(spec("response", url, "application/http; msgtype=response", http_payload));
    if (unsupported_encoding) {
      ++expect.unsupported_encoding;
    } else if (html) {
      ++expect.html_documents;
    } else {
      ++expect.not_html;
    }
  }

  void write(const WarcRecordSpec& s, bool counts_as_record = true) {
    writer_.write(s);
    ++expect.physical_records;
    if (counts_as_record) expect.record_types.push_back(s.warc_type);
  }

  void truncated(const WarcRecordSpec& s) {
    writer_.write(s);
    ++expect.physical_records;
    ++expect.skipped;
  }

  ArchiveExpectation expect;

 private:
  WarcWriter writer_;
  std::string name_;
  std::vector<LanguageLine>* languages_;
  std::size_t counter_ = 0;
};

ordered_json expectation_json(const ArchiveExpectation& e) {
  ordered_json pages = ordered_json::array();
  std::size_t pairs = 0;
  for (const auto& [key, list] : e.pages) {
    ordered_json pj = ordered_json::array();
    for (const auto& p : list) pj.push_back({{"question", p.question}, {"answer", p.answer}});
    pairs += list.size();
    pages.push_back({{"url", key.first}, {"language", key.second}, {"pairs", pj}});
  }
  ordered_json rejected = ordered_json::object();
  for (const auto& [k, v] : e.rejected) rejected[k] = v;
  return {{"physical_records", e.physical_records},
          {"records", e.record_types.size()},
          {"skipped", e.skipped},
          {"record_types", e.record_types},
          {"html_documents", e.html_documents},
          {"not_response", e.not_response},
          {"not_html", e.not_html},
          {"unsupported_encoding", e.unsupported_encoding},
          {"duplicate_urls", e.duplicate_urls},
          {"ld_json_blocks", e.ld_blocks},
          {"bad_json_blocks", e.bad_json},
          {"questions", e.questions},
          {"rejected", rejected},
          {"undetermined", e.undetermined},
          {"page_count", e.pages.size()},
          {"pair_count", pairs},
          {"pages", pages}};
}

void write_text(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

void write_json(const fs::path& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

std::string chunked(std::string_view body, std::size_t chunk) {
  std::string out;
  char hex[32];
  for (std::size_t pos = 0; pos < body.size(); pos += chunk) {
    const std::size_t n = std::min(chunk, body.size() - pos);
    std::snprintf(hex, sizeof hex, "%zx", n);
    out += hex;
    out += "\r\n";
    out.append(body.substr(pos, n));
    out += "\r\n";
  }
  out += "0\r\n\r\n";
  return out;
}

// ---- the extraction fixture records ---------------------------------------

const std::string kKayakUrl = "https://www.harbor-kayaks.com/faq";
const std::string kBikeUrl = "https://www.lakeside-bikes.net/help";
const std::string kFerryUrl = "https://www.northwind-ferries.org/faq";
const std::string kCampUrl = "https://www.quietpines-camping.com/faq";
const std::string kDatesUrl = "https://www.tamr-market.ae/faq";
const std::string kTeaUrl = "https://www.copperleaf-tea.co.uk/faq";

void kayak_record(ArchiveBuilder& b) {
  const nlohmann::ordered_json doc{
      {"@context", "https://schema.org"},
      {"@type", "FAQPage"},
      {"mainEntity",
       {question_entity("Can I rent a kayak without a reservation?", "Yes.<br/>See &amp; read our policy."),
        question_entity("Do you provide life jackets?",
                        "<p>Every rental includes a life jacket and a <b>waterproof</b> bag.</p>"),
        question_entity("Opening hours", "Daily from 9 to 18.")}}};
  const std::string head = "<style>h1 { color: navy; }</style>\n<script>var visits = 1 < 2;</script>\n" +
                           ld_script(json_text(doc));
  const std::string html = html_document("en", head, "<h1>Kayak rental questions</h1>\n<!-- faq list -->\n");
  b.faq_response(kKayakUrl, http_response("text/html; charset=utf-8", html),
                 {{"Can I rent a kayak without a reservation?", "Yes. See & read our policy.", "en", std::nullopt},
                  {"Do you provide life jackets?", "Every rental includes a life jacket and a waterproof bag.", "en",
                   std::nullopt},
                  {"Opening hours", "Daily from 9 to 18.", "en", "no_question_mark"}},
                 1);
}

void graph_record(ArchiveBuilder& b) {
  const nlohmann::ordered_json doc{
      {"@context", "https://schema.org"},
      {"@graph",
       {{{"@type", "WebPage"}, {"name", "Help"}},
        {{"@type", {"FAQPage", "WebPage"}},
         {"mainEntity",
          {question_entity("How much does a day pass cost?", "A day pass costs 25 euros."),
           question_entity("Are helmets included?", "Helmets are included with every bike.")}}}}}};
  const std::string html = html_document("en", ld_script(json_text(doc)), "<h1>Help</h1>\n");
  b.faq_response(kBikeUrl, http_response("text/html", html),
                 {{"How much does a day pass cost?", "A day pass costs 25 euros.", "en", std::nullopt},
                  {"Are helmets included?", "Helmets are included with every bike.", "en", std::nullopt}},
                 1);
}

void chunked_record(ArchiveBuilder& b) {
  const nlohmann::ordered_json doc{
      {"@context", "https://schema.org"},
      {"@type", "FAQPage"},
      {"mainEntity",
       {question_entity("How early should I arrive?", "Please arrive 30 minutes before departure."),
        question_entity("Can I bring my car?", "Cars are allowed on the morning ferry only.")}}};
  const std::string html = html_document("en", ld_script(json_text(doc)), "<h1>Ferry questions</h1>\n");
  const std::pair<std::string, std::string> te[] = {{"Transfer-Encoding", "chunked"}};
  b.faq_response(kFerryUrl, http_response("text/html; charset=utf-8", chunked(html, 97), te),
                 {{"How early should I arrive?", "Please arrive 30 minutes before departure.", "en", std::nullopt},
                  {"Can I bring my car?", "Cars are allowed on the morning ferry only.", "en", std::nullopt}},
                 1);
}

void malformed_record(ArchiveBuilder& b) {
  const std::string broken = R"({"@context": "https://schema.org", "@type": "FAQPage", "mainEntity": [{"@type": "Question", "name": "Is the lake warm?")";
  const nlohmann::ordered_json doc{
      {"@context", "https://schema.org"},
      {"@type", "FAQPage"},
      {"mainEntity",
       {question_entity("Is there hot water?", "Hot showers are available all day."),
        question_entity("What is the check-in code?", "{ \"code\": 1 }")}}};
  const std::string html =
      html_document("en", ld_script(broken) + ld_script(json_text(doc)), "<h1>Camping questions</h1>\n");
  b.faq_response(kCampUrl, http_response("text/html", html),
                 {{"Is there hot water?", "Hot showers are available all day.", "en", std::nullopt},
                  {"What is the check-in code?", "{ \"code\": 1 }", "en", "code_like_prefix"}},
                 2, 1);
}

void array_record(ArchiveBuilder& b) {
  const std::string q_ar = "\xD9\x87\xD9\x84 \xD8\xA7\xD9\x84\xD8\xAA\xD9\x88\xD8\xB5\xD9\x8A\xD9\x84 "
                           "\xD9\x85\xD8\xAC\xD8\xA7\xD9\x86\xD9\x8A\xD8\x9F";
  const std::string a_ar = "\xD9\x86\xD8\xB9\xD9\x85\xD8\x8C \xD8\xA7\xD9\x84\xD8\xAA\xD9\x88\xD8\xB5\xD9\x8A"
                           "\xD9\x84 \xD9\x85\xD8\xAC\xD8\xA7\xD9\x86\xD9\x8A \xD8\xAF\xD8\xA7\xD8\xAE\xD9\x84 "
                           "\xD8\xA7\xD9\x84\xD9\x85\xD8\xAF\xD9\x8A\xD9\x86\xD8\xA9.";
  const nlohmann::ordered_json doc = nlohmann::ordered_json::array(
      {{{"@context", "https://schema.org"}, {"@type", "Organization"}, {"name", "Tamr Market"}},
       {{"@context", "https://schema.org"},
        {"@type", "FAQPage"},
        {"mainEntity",
         {question_entity(q_ar, a_ar), question_entity("Do you ship abroad?", "We ship to all neighbouring countries.")}}}});
  const std::string html = html_document("ar", ld_script(json_text(doc)), "<h1>FAQ</h1>\n");
  b.faq_response(kDatesUrl, http_response("text/html; charset=utf-8", html),
                 {{q_ar, a_ar, "ar", std::nullopt},
                  {"Do you ship abroad?", "We ship to all neighbouring countries.", "und", std::nullopt}},
                 1);
}

void gzip_record(ArchiveBuilder& b) {
  const nlohmann::ordered_json doc{{"@context", "https://schema.org"},
                                   {"@type", "FAQPage"},
                                   {"mainEntity", question_entity("Is your tea organic?", "All our teas are certified organic.")}};
  const std::string html = html_document("en", ld_script(json_text(doc)), "<h1>Tea questions</h1>\n");
  const std::pair<std::string, std::string> ce[] = {{"Content-Encoding", "gzip"}};
  b.faq_response(kTeaUrl, http_response("text/html", gzip_member(html), ce),
                 {{"Is your tea organic?", "All our teas are certified organic.", "en", std::nullopt}}, 1);
}

void write_faq_archive(const fs::path& path, bool gzip, std::vector<LanguageLine>* languages,
                       ArchiveExpectation* expect) {
  ArchiveBuilder b(path, gzip, languages);
  b.warcinfo();
  b.request(kKayakUrl);
  kayak_record(b);
  b.other_response("https://www.harbor-kayaks.com/price-list.pdf",
                   http_response("application/pdf", "%PDF-1.4\n1 0 obj << /Type /Catalog >> endobj\n%%EOF\n"), false);
  graph_record(b);
  chunked_record(b);
  malformed_record(b);
  array_record(b);
  gzip_record(b);
  const std::pair<std::string, std::string> br[] = {{"Content-Encoding", "br"}};
  b.other_response("https://www.copperleaf-tea.co.uk/shipping",
                   http_response("text/html", std::string("\x1b\x2f\x00\xf8\x25\x82\x02\x40", 8), br), true, true);
  {
    const nlohmann::ordered_json doc{{"@context", "https://schema.org"},
                                     {"@type", "FAQPage"},
                                     {"mainEntity", {question_entity("Is this a second copy?", "Yes, it is.")}}};
    b.faq_response(kKayakUrl,
                   http_response("text/html", html_document("en", ld_script(json_text(doc)), "<h1>Copy</h1>\n")), {}, 1,
                   0, true);
  }
  b.other_response("https://www.harbor-kayaks.com/about",
                   http_response("text/html", html_document("en", "", "<p>Family run since 1998.</p>\n")), true);
  b.metadata(kKayakUrl);
  if (expect) *expect = b.expect;
}

// ---- brute-force oracles --------------------------------------------------

std::vector<std::string> ascii_windows(const FaqPage& page) {
  std::string joined;
  for (const auto& p : page.pairs) {
    if (!joined.empty()) joined += ' ';
    joined += p.question + " " + p.answer;
  }
  std::vector<std::string> tokens;
  std::istringstream in(joined);
  for (std::string t; in >> t;) {
    for (char& c : t)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    tokens.push_back(t);
  }
  std::vector<std::string> windows;
  if (tokens.size() < 3) {
    std::string w;
    for (const auto& t : tokens) w += (w.empty() ? "" : " ") + t;
    windows.push_back(w);
    return windows;
  }
  for (std::size_t i = 0; i + 3 <= tokens.size(); ++i)
    windows.push_back(tokens[i] + " " + tokens[i + 1] + " " + tokens[i + 2]);
  return windows;
}

double set_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t inter = 0;
  for (const auto& x : sa) inter += sb.count(x);
  const std::size_t uni = sa.size() + sb.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

ordered_json near_duplicate_oracle(const std::vector<FaqPage>& pages, double threshold) {
  const std::size_t n = pages.size();
  std::vector<std::vector<std::string>> windows;
  for (const auto& p : pages) windows.push_back(ascii_windows(p));
  std::vector<std::vector<double>> jac(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) jac[i][j] = jac[j][i] = set_jaccard(windows[i], windows[j]);

  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members;
    std::queue<std::size_t> queue;
    queue.push(s);
    comp[s] = static_cast<int>(components.size());
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      members.push_back(u);
      for (std::size_t v = 0; v < n; ++v)
        if (comp[v] < 0 && jac[u][v] >= threshold) {
          comp[v] = comp[s];
          queue.push(v);
        }
    }
    std::sort(members.begin(), members.end());
    components.push_back(members);
  }

  ordered_json comps = ordered_json::array();
  ordered_json survivors = ordered_json::array();
  for (const auto& members : components) {
    ordered_json urls = ordered_json::array();
    for (std::size_t m : members) urls.push_back(pages[m].url);
    comps.push_back(urls);
    std::size_t best = members.front();
    for (std::size_t m : members) {
      const auto& a = pages[m];
      const auto& b = pages[best];
      if (a.pairs.size() > b.pairs.size() ||
          (a.pairs.size() == b.pairs.size() && (a.url < b.url || (a.url == b.url && a.page_id < b.page_id))))
        best = m;
    }
    survivors.push_back(pages[best].url);
  }
  ordered_json matrix = ordered_json::array();
  double max_off = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    matrix.push_back(jac[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && comp[i] != comp[j]) max_off = std::max(max_off, jac[i][j]);
  }
  ordered_json urls = ordered_json::array();
  for (const auto& p : pages) urls.push_back(p.url);
  return {{"threshold", threshold},       {"urls", urls},
          {"jaccard", matrix},            {"components", comps},
          {"survivors", survivors},       {"pages_after", components.size()},
          {"max_cross_component_jaccard", max_off}};
}

// Mean reciprocal rank of the gold item over every ordering of n candidates.
double exhaustive_random_mrr(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  double total = 0.0;
  std::size_t count = 0;
  do {
    const auto pos = std::find(order.begin(), order.end(), 0) - order.begin();
    total += 1.0 / static_cast<double>(pos + 1);
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  return total / static_cast<double>(count);
}

std::vector<std::string> ascii_words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::map<std::string, double> ascii_ngram_counts(const std::string& s) {
  const auto w = ascii_words(s);
  std::map<std::string, double> counts;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t i = 0; i + n <= w.size(); ++i) {
      std::string g = w[i];
      for (std::size_t k = 1; k < n; ++k) g += " " + w[i + k];
      counts[g] += 1.0;
    }
  return counts;
}

std::vector<std::vector<double>> brute_force_tfidf(const TfidfFixture& f) {
  const double n_docs = static_cast<double>(f.answers.size());
  std::vector<std::map<std::string, double>> docs;
  std::map<std::string, double> df;
  for (const auto& a : f.answers) {
    docs.push_back(ascii_ngram_counts(a));
    for (const auto& [g, c] : docs.back()) df[g] += 1.0;
  }
  auto weigh = [&](const std::map<std::string, double>& counts) {
    std::map<std::string, double> v;
    double sq = 0.0;
    for (const auto& [g, c] : counts) {
      const auto it = df.find(g);
      if (it == df.end()) continue;
      const double w = c * (std::log((1.0 + n_docs) / (1.0 + it->second)) + 1.0);
      v[g] = w;
      sq += w * w;
    }
    for (auto& [g, w] : v) w /= std::sqrt(sq);
    return v;
  };
  std::vector<std::map<std::string, double>> answer_vecs;
  for (const auto& d : docs) answer_vecs.push_back(weigh(d));
  std::vector<std::vector<double>> m;
  for (const auto& q : f.questions) {
    const auto qv = weigh(ascii_ngram_counts(q));
    std::vector<double> row;
    for (const auto& av : answer_vecs) {
      double dot = 0.0;
      for (const auto& [g, w] : qv)
        if (const auto it = av.find(g); it != av.end()) dot += w * it->second;
      row.push_back(dot);
    }
    m.push_back(row);
  }
  return m;
}

constexpr std::string_view kPipelineToml = R"(# Full fixture pipeline: extract, dedup, split, batch, eval.
# Run from any directory; artifacts land in the current directory unless
# --out-dir is given.
threads = 1

[paths]
warc = ["warc/faq.warc.gz", "warc/hotels.warc.gz", "warc/travel.warc", "warc/separable.warc"]
language_map = "languages.jsonl"

[extract]
language_floor = 1
language_threshold = 0.5

[dedup]
signature_length = 100
bands = 20
rows = 5
jaccard_threshold = 0.75
seed = 42

[split]
validation_fraction = 0.1
max_pages_per_domain_in_validation = 3
one_page_per_domain_training = true
seed = 0

[batch]
capacity = 800
seed = 7
shuffle = true

[eval]
scorer = "tfidf"
subset = "validation"
seed = 1
)";

constexpr std::string_view kSeparableToml = R"(# Toy bi-encoder run on the separable corpus: extract, dedup, split, batch,
# train-toy, then eval with scorer "embedding" on the exported table.
threads = 1

[paths]
warc = ["warc/separable.warc"]
language_map = "languages.jsonl"

[extract]
language_floor = 1

[split]
validation_fraction = 0.1
seed = 0

# One page per batch: every negative is a same-page answer.
[batch]
capacity = 6
seed = 7

[train]
learning_rate = 0.05
epochs = 50
seed = 13
clip_norm = 5.0
dimension = 64
feature_dimension = 32768

[eval]
scorer = "embedding"
subset = "validation"
seed = 1
)";

}  // namespace

void generate_fixtures(const fs::path& dir, std::uint64_t seed) {
  const fs::path warc_dir = dir / "warc";
  const fs::path oracle_dir = dir / "oracle";
  fs::create_directories(warc_dir);
  fs::create_directories(oracle_dir);
  std::vector<LanguageLine> languages;
  std::vector<LanguageLine> scratch;

  {
    ArchiveBuilder b(warc_dir / "basic.warc", false, &scratch);
    b.warcinfo();
    b.request(kKayakUrl);
    kayak_record(b);
    write_json(warc_dir / "basic.expected.json", expectation_json(b.expect));
  }

  ArchiveExpectation faq;
  write_faq_archive(warc_dir / "faq.warc", false, &languages, &faq);
  write_json(warc_dir / "faq.expected.json", expectation_json(faq));
  write_faq_archive(warc_dir / "faq.warc.gz", true, &scratch, nullptr);

  const auto single = [&](const char* name, void (*record)(ArchiveBuilder&)) {
    ArchiveBuilder b(warc_dir / (std::string(name) + ".warc"), false, &scratch);
    b.warcinfo();
    record(b);
    write_json(warc_dir / (std::string(name) + ".expected.json"), expectation_json(b.expect));
  };
  single("graph", graph_record);
  single("chunked", chunked_record);
  single("malformed_json", malformed_record);

  {
    ArchiveBuilder b(warc_dir / "truncated.warc", false, &scratch);
    kayak_record(b);
    const nlohmann::ordered_json doc{{"@context", "https://schema.org"},
                                     {"@type", "FAQPage"},
                                     {"mainEntity", {question_entity("Is this record complete?", "No, it was cut.")}}};
    WarcRecordSpec cut = b.spec("response", "https://www.lakeside-bikes.net/cut", "application/http; msgtype=response",
                                http_response("text/html", html_document("en", ld_script(json_text(doc)), "")));
    cut.declared_length = cut.payload.size() + 64;
    b.truncated(cut);
    chunked_record(b);
    write_json(warc_dir / "truncated.expected.json", expectation_json(b.expect));
  }

  const auto family = [&](const char* name, bool gzip, const std::vector<FaqPage>& pages) {
    ArchiveBuilder b(warc_dir / (std::string(name) + (gzip ? ".warc.gz" : ".warc")), gzip, &languages);
    b.warcinfo();
    for (const auto& p : pages) b.page_response(p);
    return b.expect;
  };

  const auto hotels = hotel_pages(seed);
  {
    ordered_json j = expectation_json(family("hotels", true, hotels));
    j["near_duplicates"] = near_duplicate_oracle(hotels, 0.75);
    write_json(warc_dir / "hotels.expected.json", j);
  }

  const auto travel = travel_pages(seed);
  {
    ordered_json j = expectation_json(family("travel", false, travel));
    j["near_duplicates"] = near_duplicate_oracle(travel, 0.75);
    std::map<std::string, std::set<std::string>> langs_of_domain;
    for (const auto& p : travel) langs_of_domain[p.root_domain].insert(p.language);
    ordered_json multi = ordered_json::array();
    for (const auto& [d, ls] : langs_of_domain)
      if (ls.size() > 1) multi.push_back(d);
    j["multi_language_domains"] = multi;
    write_json(warc_dir / "travel.expected.json", j);
  }

  const auto separable = separable_pages(seed);
  {
    ordered_json j = expectation_json(family("separable", false, separable));
    j["near_duplicates"] = near_duplicate_oracle(separable, 0.75);
    j["pairs_per_page"] = separable.front().pairs.size();
    j["random_mrr"] = exhaustive_random_mrr(separable.front().pairs.size());
    write_json(warc_dir / "separable.expected.json", j);
  }

  {
    std::string lines;
    for (const auto& l : languages)
      lines += to_json_line({{"url", l.url}, {"pair_index", l.index}, {"language", l.language}}) + "\n";
    write_text(dir / "languages.jsonl", lines);
  }

  {
    const auto f = tfidf_fixture();
    write_json(oracle_dir / "tfidf.json",
               {{"questions", f.questions}, {"answers", f.answers}, {"matrix", brute_force_tfidf(f)}});
  }
  {
    ordered_json random_mrr = ordered_json::object();
    for (std::size_t n = 1; n <= 7; ++n) random_mrr[std::to_string(n)] = exhaustive_random_mrr(n);
    const std::vector<std::size_t> ranks{1, 2, 4};
    double mrr = 0.0;
    for (std::size_t r : ranks) mrr += 1.0 / static_cast<double>(r);
    write_json(oracle_dir / "mrr.json", {{"ranks", ranks}, {"mrr", mrr / 3.0}, {"random_mrr", random_mrr}});
  }
  {
    const std::vector<std::string> a{"a", "b", "c"}, b{"b", "c", "d"};
    write_json(oracle_dir / "jaccard.json", {{"a", a}, {"b", b}, {"jaccard", set_jaccard(a, b)}});
  }

  write_text(dir / "pipeline.toml", kPipelineToml);
  write_text(dir / "separable.toml", kSeparableToml);
}

}  // namespace faqkit::fixtures
