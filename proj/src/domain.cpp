#include "faqkit/domain.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "faqkit/text.hpp"

namespace faqkit {
namespace {

// Multi-label entries from the public suffix list for the registries most
// common in web crawls. Single-label TLDs need no entry: any unmatched host
// falls back to its last label as the suffix.
constexpr std::array kMultiLabelSuffixes = {
    "ac.uk",  "co.uk",  "gov.uk", "ltd.uk", "me.uk",  "net.uk", "org.uk", "plc.uk", "sch.uk",
    "asn.au", "com.au", "edu.au", "gov.au", "id.au",  "net.au", "org.au",
    "ac.nz",  "co.nz",  "geek.nz", "gen.nz", "govt.nz", "net.nz", "org.nz", "school.nz",
    "ac.jp",  "co.jp",  "ed.jp",  "go.jp",  "gr.jp",  "lg.jp",  "ne.jp",  "or.jp",
    "ac.kr",  "co.kr",  "go.kr",  "ne.kr",  "or.kr",  "re.kr",
    "com.br", "net.br", "org.br", "gov.br", "edu.br", "art.br", "blog.br",
    "com.ar", "net.ar", "org.ar", "gob.ar", "com.mx", "org.mx", "gob.mx", "net.mx", "edu.mx",
    "com.co", "net.co", "org.co", "gov.co", "edu.co", "com.pe", "org.pe", "gob.pe",
    "com.ve", "com.ec", "com.uy", "com.py", "com.bo",
    "co.za",  "org.za", "gov.za", "ac.za",  "web.za", "net.za",
    "com.tr", "net.tr", "org.tr", "gen.tr", "web.tr", "biz.tr", "info.tr", "edu.tr", "gov.tr", "av.tr",
    "com.pl", "net.pl", "org.pl", "info.pl", "biz.pl", "waw.pl", "gov.pl", "edu.pl",
    "com.ru", "net.ru", "org.ru", "msk.ru", "spb.ru", "com.ua", "net.ua", "org.ua", "in.ua", "kiev.ua",
    "co.il",  "org.il", "net.il", "ac.il",  "gov.il", "muni.il",
    "co.in",  "net.in", "org.in", "firm.in", "gen.in", "ind.in", "ac.in", "edu.in", "gov.in",
    "com.cn", "net.cn", "org.cn", "gov.cn", "edu.cn", "com.hk", "net.hk", "org.hk", "edu.hk",
    "com.tw", "net.tw", "org.tw", "idv.tw", "com.sg", "net.sg", "org.sg", "edu.sg", "gov.sg",
    "com.my", "net.my", "org.my", "com.ph", "net.ph", "org.ph",
    "co.id",  "or.id",  "web.id", "ac.id",  "go.id",  "my.id", "biz.id",
    "com.vn", "net.vn", "org.vn", "edu.vn", "gov.vn", "co.th", "in.th", "or.th", "ac.th", "go.th",
    "com.eg", "com.sa", "com.pk", "com.ng", "com.gh", "co.ke", "or.ke", "co.tz", "co.ug",
    "co.at",  "or.at",  "gv.at",  "ac.at",  "com.pt", "org.pt", "gov.pt", "edu.pt",
    "com.es", "nom.es", "org.es", "gob.es", "edu.es", "com.gr", "net.gr", "org.gr", "edu.gr",
    "com.cy", "com.mt", "com.hr", "from.hr", "iz.hr", "co.rs", "org.rs", "in.rs", "edu.rs",
    "com.ro", "org.ro", "info.ro", "nom.ro", "store.ro", "tm.ro",
    "co.hu",  "org.hu", "info.hu", "priv.hu", "tm.hu", "com.de", "co.no", "priv.no",
    "co.cz",  "com.se", "org.se", "tm.se",  "co.dk", "co.fi", "co.ee", "com.ee", "org.ee",
    "com.lv", "org.lv", "com.lt", "com.by", "com.kz", "org.kz",
    "eu.com", "us.com", "uk.com", "gb.com", "de.com", "br.com", "cn.com", "jpn.com",
    "co.com", "uk.net", "gb.net", "se.net", "us.org", "ae.org",
    "github.io", "gitlab.io", "herokuapp.com", "blogspot.com", "appspot.com", "wordpress.com",
    "azurewebsites.net", "cloudfront.net", "netlify.app", "vercel.app", "pages.dev", "web.app",
    "firebaseapp.com", "myshopify.com", "wixsite.com", "squarespace.com", "webflow.io",
};

const std::unordered_set<std::string_view>& suffix_set() {
  static const std::unordered_set<std::string_view> set(kMultiLabelSuffixes.begin(),
                                                        kMultiLabelSuffixes.end());
  return set;
}

bool is_ipv4(std::string_view host) {
  int parts = 0;
  std::size_t start = 0;
  while (start <= host.size()) {
    std::size_t end = host.find('.', start);
    if (end == std::string_view::npos) end = host.size();
    const auto part = host.substr(start, end - start);
    if (part.empty() || part.size() > 3) return false;
    if (!std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return false;
    ++parts;
    start = end + 1;
  }
  return parts == 4;
}

}  // namespace

bool is_public_suffix(std::string_view suffix) { return suffix_set().contains(suffix); }

std::string host_of(std::string_view url) {
  std::string_view rest = text::trim_ascii(url);
  if (const auto scheme = rest.find("://"); scheme != std::string_view::npos) {
    rest.remove_prefix(scheme + 3);
  } else if (rest.starts_with("//")) {
    rest.remove_prefix(2);
  }
  const auto end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, end);
  if (const auto at = authority.rfind('@'); at != std::string_view::npos)
    authority.remove_prefix(at + 1);
  if (authority.starts_with('[')) {
    const auto close = authority.find(']');
    return text::ascii_lower(authority.substr(0, close == std::string_view::npos ? authority.size() : close + 1));
  }
  if (const auto colon = authority.rfind(':'); colon != std::string_view::npos)
    authority = authority.substr(0, colon);
  while (authority.ends_with('.')) authority.remove_suffix(1);
  return text::lowercase(authority);
}

RootDomain root_domain_info(std::string_view url) {
  const std::string host = host_of(url);
  if (host.empty() || host.front() == '[' || is_ipv4(host)) return {host, true};

  std::vector<std::string_view> labels;
  std::string_view h(host);
  std::size_t start = 0;
  while (start <= h.size()) {
    std::size_t end = h.find('.', start);
    if (end == std::string_view::npos) end = h.size();
    labels.push_back(h.substr(start, end - start));
    start = end + 1;
  }
  // Longest matching multi-label suffix; otherwise the last label.
  std::size_t suffix_labels = 1;
  for (std::size_t n = std::min<std::size_t>(labels.size(), 3); n >= 2; --n) {
    const auto offset = static_cast<std::size_t>(labels[labels.size() - n].data() - h.data());
    if (is_public_suffix(h.substr(offset))) {
      suffix_labels = n;
      break;
    }
  }
  if (labels.size() <= suffix_labels) return {host, true};
  return {std::string(labels[labels.size() - suffix_labels - 1]), false};
}

}  // namespace faqkit
