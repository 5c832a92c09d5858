#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace faqkit::html {

// Decodes named (HTML 4 set plus &apos;) and numeric character references.
// Unknown names are left verbatim; invalid code points become U+FFFD.
std::string decode_entities(std::string_view s);

// Removes script/style elements with their content and comments, replaces
// every other tag with a single space. Entities are not touched.
std::string strip_tags(std::string_view html);

// strip_tags, decode_entities, whitespace normalization, NFC.
std::string to_plain_text(std::string_view html);

// Bodies of <script type="application/ld+json"> elements, in document order.
std::vector<std::string> ld_json_blocks(std::string_view html);

}  // namespace faqkit::html
