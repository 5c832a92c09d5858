#include "faqkit/html.hpp"

#include <algorithm>
#include <charconv>
#include <string_view>
#include <unordered_map>

#include "faqkit/text.hpp"

namespace faqkit::html {
namespace {

struct Entity {
  const char* name;
  char32_t code_point;
};

constexpr Entity kEntities[] = {
    {"AElig", 0xC6}, {"Aacute", 0xC1}, {"Acirc", 0xC2}, {"Agrave", 0xC0}, {"Alpha", 0x391},
    {"Aring", 0xC5}, {"Atilde", 0xC3}, {"Auml", 0xC4}, {"Beta", 0x392}, {"Ccedil", 0xC7},
    {"Chi", 0x3A7}, {"Dagger", 0x2021}, {"Delta", 0x394}, {"ETH", 0xD0}, {"Eacute", 0xC9},
    {"Ecirc", 0xCA}, {"Egrave", 0xC8}, {"Epsilon", 0x395}, {"Eta", 0x397}, {"Euml", 0xCB},
    {"Gamma", 0x393}, {"Iacute", 0xCD}, {"Icirc", 0xCE}, {"Igrave", 0xCC}, {"Iota", 0x399},
    {"Iuml", 0xCF}, {"Kappa", 0x39A}, {"Lambda", 0x39B}, {"Mu", 0x39C}, {"Ntilde", 0xD1},
    {"Nu", 0x39D}, {"OElig", 0x152}, {"Oacute", 0xD3}, {"Ocirc", 0xD4}, {"Ograve", 0xD2},
    {"Omega", 0x3A9}, {"Omicron", 0x39F}, {"Oslash", 0xD8}, {"Otilde", 0xD5}, {"Ouml", 0xD6},
    {"Phi", 0x3A6}, {"Pi", 0x3A0}, {"Prime", 0x2033}, {"Psi", 0x3A8}, {"Rho", 0x3A1},
    {"Scaron", 0x160}, {"Sigma", 0x3A3}, {"THORN", 0xDE}, {"Tau", 0x3A4}, {"Theta", 0x398},
    {"Uacute", 0xDA}, {"Ucirc", 0xDB}, {"Ugrave", 0xD9}, {"Upsilon", 0x3A5}, {"Uuml", 0xDC},
    {"Xi", 0x39E}, {"Yacute", 0xDD}, {"Yuml", 0x178}, {"Zeta", 0x396}, {"aacute", 0xE1},
    {"acirc", 0xE2}, {"acute", 0xB4}, {"aelig", 0xE6}, {"agrave", 0xE0}, {"alefsym", 0x2135},
    {"alpha", 0x3B1}, {"amp", 0x26}, {"and", 0x2227}, {"ang", 0x2220}, {"aring", 0xE5},
    {"asymp", 0x2248}, {"atilde", 0xE3}, {"auml", 0xE4}, {"bdquo", 0x201E}, {"beta", 0x3B2},
    {"brvbar", 0xA6}, {"bull", 0x2022}, {"cap", 0x2229}, {"ccedil", 0xE7}, {"cedil", 0xB8},
    {"cent", 0xA2}, {"chi", 0x3C7}, {"circ", 0x2C6}, {"clubs", 0x2663}, {"cong", 0x2245},
    {"copy", 0xA9}, {"crarr", 0x21B5}, {"cup", 0x222A}, {"curren", 0xA4}, {"dArr", 0x21D3},
    {"dagger", 0x2020}, {"darr", 0x2193}, {"deg", 0xB0}, {"delta", 0x3B4}, {"diams", 0x2666},
    {"divide", 0xF7}, {"eacute", 0xE9}, {"ecirc", 0xEA}, {"egrave", 0xE8}, {"empty", 0x2205},
    {"emsp", 0x2003}, {"ensp", 0x2002}, {"epsilon", 0x3B5}, {"equiv", 0x2261}, {"eta", 0x3B7},
    {"eth", 0xF0}, {"euml", 0xEB}, {"euro", 0x20AC}, {"exist", 0x2203}, {"fnof", 0x192},
    {"forall", 0x2200}, {"frac12", 0xBD}, {"frac14", 0xBC}, {"frac34", 0xBE}, {"frasl", 0x2044},
    {"gamma", 0x3B3}, {"ge", 0x2265}, {"gt", 0x3E}, {"hArr", 0x21D4}, {"harr", 0x2194},
    {"hearts", 0x2665}, {"hellip", 0x2026}, {"iacute", 0xED}, {"icirc", 0xEE}, {"iexcl", 0xA1},
    {"igrave", 0xEC}, {"image", 0x2111}, {"infin", 0x221E}, {"int", 0x222B}, {"iota", 0x3B9},
    {"iquest", 0xBF}, {"isin", 0x2208}, {"iuml", 0xEF}, {"kappa", 0x3BA}, {"lArr", 0x21D0},
    {"lambda", 0x3BB}, {"lang", 0x2329}, {"laquo", 0xAB}, {"larr", 0x2190}, {"lceil", 0x2308},
    {"ldquo", 0x201C}, {"le", 0x2264}, {"lfloor", 0x230A}, {"lowast", 0x2217}, {"loz", 0x25CA},
    {"lrm", 0x200E}, {"lsaquo", 0x2039}, {"lsquo", 0x2018}, {"lt", 0x3C}, {"macr", 0xAF},
    {"mdash", 0x2014}, {"micro", 0xB5}, {"middot", 0xB7}, {"minus", 0x2212}, {"mu", 0x3BC},
    {"nabla", 0x2207}, {"nbsp", 0xA0}, {"ndash", 0x2013}, {"ne", 0x2260}, {"ni", 0x220B},
    {"not", 0xAC}, {"notin", 0x2209}, {"nsub", 0x2284}, {"ntilde", 0xF1}, {"nu", 0x3BD},
    {"oacute", 0xF3}, {"ocirc", 0xF4}, {"oelig", 0x153}, {"ograve", 0xF2}, {"oline", 0x203E},
    {"omega", 0x3C9}, {"omicron", 0x3BF}, {"oplus", 0x2295}, {"or", 0x2228}, {"ordf", 0xAA},
    {"ordm", 0xBA}, {"oslash", 0xF8}, {"otilde", 0xF5}, {"otimes", 0x2297}, {"ouml", 0xF6},
    {"para", 0xB6}, {"part", 0x2202}, {"permil", 0x2030}, {"perp", 0x22A5}, {"phi", 0x3C6},
    {"pi", 0x3C0}, {"piv", 0x3D6}, {"plusmn", 0xB1}, {"pound", 0xA3}, {"prime", 0x2032},
    {"prod", 0x220F}, {"prop", 0x221D}, {"psi", 0x3C8}, {"quot", 0x22}, {"rArr", 0x21D2},
    {"radic", 0x221A}, {"rang", 0x232A}, {"raquo", 0xBB}, {"rarr", 0x2192}, {"rceil", 0x2309},
    {"rdquo", 0x201D}, {"real", 0x211C}, {"reg", 0xAE}, {"rfloor", 0x230B}, {"rho", 0x3C1},
    {"rlm", 0x200F}, {"rsaquo", 0x203A}, {"rsquo", 0x2019}, {"sbquo", 0x201A}, {"scaron", 0x161},
    {"sdot", 0x22C5}, {"sect", 0xA7}, {"shy", 0xAD}, {"sigma", 0x3C3}, {"sigmaf", 0x3C2},
    {"sim", 0x223C}, {"spades", 0x2660}, {"sub", 0x2282}, {"sube", 0x2286}, {"sum", 0x2211},
    {"sup", 0x2283}, {"sup1", 0xB9}, {"sup2", 0xB2}, {"sup3", 0xB3}, {"supe", 0x2287},
    {"szlig", 0xDF}, {"tau", 0x3C4}, {"there4", 0x2234}, {"theta", 0x3B8}, {"thetasym", 0x3D1},
    {"thinsp", 0x2009}, {"thorn", 0xFE}, {"tilde", 0x2DC}, {"times", 0xD7}, {"trade", 0x2122},
    {"uArr", 0x21D1}, {"uacute", 0xFA}, {"uarr", 0x2191}, {"ucirc", 0xFB}, {"ugrave", 0xF9},
    {"uml", 0xA8}, {"upsih", 0x3D2}, {"upsilon", 0x3C5}, {"uuml", 0xFC}, {"weierp", 0x2118},
    {"xi", 0x3BE}, {"yacute", 0xFD}, {"yen", 0xA5}, {"yuml", 0xFF}, {"zeta", 0x3B6},
    {"zwj", 0x200D}, {"zwnj", 0x200C},
    {"apos", 0x27},
};

const std::unordered_map<std::string_view, char32_t>& entity_map() {
  static const auto map = [] {
    std::unordered_map<std::string_view, char32_t> m;
    for (const auto& e : kEntities) m.emplace(e.name, e.code_point);
    return m;
  }();
  return map;
}

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

// Finds the '>' closing a tag that starts at `from`, skipping quoted
// attribute values. Returns npos when unterminated.
std::size_t tag_end(std::string_view s, std::size_t from) {
  char quote = 0;
  for (std::size_t i = from; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      // Quotes only open inside attribute values ("=" precedes them).
      std::size_t j = i;
      while (j > from && is_ascii_space(s[j - 1])) --j;
      if (j > from && s[j - 1] == '=') quote = c;
    } else if (c == '>') {
      return i;
    }
  }
  return std::string_view::npos;
}

std::size_t find_icase(std::string_view haystack, std::string_view needle, std::size_t from) {
  if (needle.empty()) return from;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i)
    if (text::starts_with_icase(haystack.substr(i), needle)) return i;
  return std::string_view::npos;
}

std::string tag_name(std::string_view s, std::size_t after_lt) {
  std::size_t i = after_lt;
  while (i < s.size() && (is_ascii_alpha(s[i]) || (s[i] >= '0' && s[i] <= '9') || s[i] == '-' || s[i] == ':'))
    ++i;
  return text::ascii_lower(s.substr(after_lt, i - after_lt));
}

// Position just past the element's closing tag, or end of input.
std::size_t skip_raw_text_element(std::string_view s, std::size_t content_start, std::string_view name) {
  const std::string closing = "</" + std::string(name);
  std::size_t at = content_start;
  for (;;) {
    at = find_icase(s, closing, at);
    if (at == std::string_view::npos) return s.size();
    const std::size_t after = at + closing.size();
    if (after >= s.size() || s[after] == '>' || is_ascii_space(s[after]) || s[after] == '/') {
      const std::size_t gt = s.find('>', after);
      return gt == std::string_view::npos ? s.size() : gt + 1;
    }
    at = after;
  }
}

std::string attribute(std::string_view tag, std::string_view wanted) {
  // tag: contents between '<' and '>'
  std::size_t i = 0;
  while (i < tag.size() && !is_ascii_space(tag[i]) && tag[i] != '/') ++i;  // tag name
  while (i < tag.size()) {
    while (i < tag.size() && (is_ascii_space(tag[i]) || tag[i] == '/')) ++i;
    const std::size_t name_start = i;
    while (i < tag.size() && !is_ascii_space(tag[i]) && tag[i] != '=' && tag[i] != '/') ++i;
    const std::string name = text::ascii_lower(tag.substr(name_start, i - name_start));
    while (i < tag.size() && is_ascii_space(tag[i])) ++i;
    std::string value;
    if (i < tag.size() && tag[i] == '=') {
      ++i;
      while (i < tag.size() && is_ascii_space(tag[i])) ++i;
      if (i < tag.size() && (tag[i] == '"' || tag[i] == '\'')) {
        const char q = tag[i++];
        const std::size_t end = tag.find(q, i);
        value = std::string(tag.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i));
        i = end == std::string_view::npos ? tag.size() : end + 1;
      } else {
        const std::size_t start = i;
        while (i < tag.size() && !is_ascii_space(tag[i])) ++i;
        value = std::string(tag.substr(start, i - start));
      }
    }
    if (name == wanted) return value;
    if (name.empty() && i == name_start) ++i;
  }
  return {};
}

}  // namespace

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t amp = s.find('&', i);
    if (amp == std::string_view::npos) {
      out.append(s.substr(i));
      break;
    }
    out.append(s.substr(i, amp - i));
    const std::size_t semi = s.find(';', amp + 1);
    if (semi == std::string_view::npos || semi - amp > 33) {
      out.push_back('&');
      i = amp + 1;
      continue;
    }
    const std::string_view ref = s.substr(amp + 1, semi - amp - 1);
    bool decoded = false;
    if (ref.size() >= 2 && ref[0] == '#') {
      const bool hex = ref[1] == 'x' || ref[1] == 'X';
      const std::string_view digits = ref.substr(hex ? 2 : 1);
      std::uint32_t cp = 0;
      const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (!digits.empty() && end == digits.data() + digits.size()) {
        const bool valid = ec == std::errc() && cp != 0 && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
        text::append_utf8(out, valid ? static_cast<char32_t>(cp) : U'\uFFFD');
        decoded = true;
      }
    } else if (const auto it = entity_map().find(ref); it != entity_map().end()) {
      text::append_utf8(out, it->second);
      decoded = true;
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out.push_back('&');
      i = amp + 1;
    }
  }
  return out;
}

std::string strip_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t lt = s.find('<', i);
    if (lt == std::string_view::npos) {
      out.append(s.substr(i));
      break;
    }
    out.append(s.substr(i, lt - i));
    if (s.substr(lt).starts_with("<!--")) {
      const std::size_t end = s.find("-->", lt + 4);
      out.push_back(' ');
      i = end == std::string_view::npos ? s.size() : end + 3;
      continue;
    }
    const char next = lt + 1 < s.size() ? s[lt + 1] : '\0';
    const bool is_tag = is_ascii_alpha(next) || next == '/' || next == '!' || next == '?';
    if (!is_tag) {
      out.push_back('<');
      i = lt + 1;
      continue;
    }
    const std::size_t gt = tag_end(s, lt + 1);
    if (gt == std::string_view::npos) {
      // Unterminated tag: drop the remainder like a browser would.
      out.push_back(' ');
      break;
    }
    out.push_back(' ');
    i = gt + 1;
    if (is_ascii_alpha(next)) {
      const std::string name = tag_name(s, lt + 1);
      const bool self_closing = gt > lt && s[gt - 1] == '/';
      if ((name == "script" || name == "style") && !self_closing) i = skip_raw_text_element(s, i, name);
    }
  }
  return out;
}

std::string to_plain_text(std::string_view html) {
  return text::canonical(decode_entities(strip_tags(html)));
}

std::vector<std::string> ld_json_blocks(std::string_view s) {
  std::vector<std::string> blocks;
  std::size_t at = 0;
  for (;;) {
    at = find_icase(s, "<script", at);
    if (at == std::string_view::npos) break;
    const std::size_t after = at + 7;
    if (after < s.size() && !is_ascii_space(s[after]) && s[after] != '>') {
      at = after;
      continue;
    }
    const std::size_t gt = tag_end(s, at + 1);
    if (gt == std::string_view::npos) break;
    const std::string type = text::ascii_lower(text::trim_ascii(attribute(s.substr(at + 1, gt - at - 1), "type")));
    const std::size_t content_start = gt + 1;
    const std::size_t close = find_icase(s, "</script", content_start);
    const std::size_t content_end = close == std::string_view::npos ? s.size() : close;
    if (type.starts_with("application/ld+json"))
      blocks.emplace_back(s.substr(content_start, content_end - content_start));
    at = content_end;
  }
  return blocks;
}

}  // namespace faqkit::html
