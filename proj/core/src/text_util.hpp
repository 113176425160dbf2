#pragma once

#include <charconv>
#include <string>
#include <string_view>

namespace cellflow::detail {

/// XML attribute value escaping; control characters become character references.
inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        case '\t': out += "&#x9;"; break;
        case '\n': out += "&#xA;"; break;
        case '\r': out += "&#xD;"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) continue;  // not representable in XML 1.0
            out += c;
        }
    }
    return out;
}

/// Fixed-point formatting independent of the global locale.
inline std::string fixed(double v, int precision) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, end);
}

} // namespace cellflow::detail
