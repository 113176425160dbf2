#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cellflow::detail {

/// Minimal element tree. Element and attribute names have their namespace
/// prefix stripped; text holds the element's own character data.
struct XmlElement {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::string text;
    std::vector<XmlElement> children;

    const std::string* attr(std::string_view key) const;
    const XmlElement* child(std::string_view key) const;
    /// Concatenated text of every descendant <t> element, in document order.
    std::string inner_t_text() const;
};

/// Throws IngestError(MalformedSheetXml, member) on malformed input.
XmlElement parse_xml(std::string_view bytes, const std::string& member);

} // namespace cellflow::detail
