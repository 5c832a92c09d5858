#pragma once

#include <string>
#include <string_view>

namespace faqkit {

struct RootDomain {
  std::string name;
  // Set when the host is an IP literal or is itself a public suffix; `name`
  // is then the whole host.
  bool flagged = false;
};

// Host part of a URL (scheme, userinfo, port, path, query and fragment
// removed), lowercased. Accepts scheme-less input such as "help.domain.com".
std::string host_of(std::string_view url);

// The label immediately left of the registrable public suffix:
// "https://fr.tripadvisor.com/x" -> "tripadvisor", "domain.co.uk" -> "domain".
RootDomain root_domain_info(std::string_view url);

inline std::string root_domain_of(std::string_view url) { return root_domain_info(url).name; }

// True when `suffix` (e.g. "co.uk") is in the embedded public-suffix snapshot.
bool is_public_suffix(std::string_view suffix);

}  // namespace faqkit
