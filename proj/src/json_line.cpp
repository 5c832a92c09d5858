#include "faqkit/json_line.hpp"

#include <charconv>

namespace faqkit {
namespace {

void emit(const ordered_json& v, std::string& out) {
  switch (v.type()) {
    case ordered_json::value_t::object: {
      out.push_back('{');
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out.append(", ");
        first = false;
        out.append(ordered_json(key).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
        out.append(": ");
        emit(item, out);
      }
      out.push_back('}');
      break;
    }
    case ordered_json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& item : v) {
        if (!first) out.append(", ");
        first = false;
        emit(item, out);
      }
      out.push_back(']');
      break;
    }
    case ordered_json::value_t::number_float: {
      char buf[64];
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v.get<double>());
      out.append(buf, end);
      break;
    }
    default:
      out.append(v.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
  }
}

}  // namespace

std::string to_json_line(const ordered_json& value) {
  std::string out;
  emit(value, out);
  return out;
}

}  // namespace faqkit
