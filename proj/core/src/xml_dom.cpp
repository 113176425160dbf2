#include "xml_dom.hpp"

#include <expat.h>

#include <memory>

#include "cellflow/error.hpp"

namespace cellflow::detail {

namespace {

std::string local_name(const char* qualified) {
    std::string_view s(qualified);
    auto colon = s.rfind(':');
    return std::string(colon == std::string_view::npos ? s : s.substr(colon + 1));
}

struct Builder {
    XmlElement root;
    std::vector<XmlElement*> stack;
    bool have_root = false;

    static void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
        auto* b = static_cast<Builder*>(user);
        XmlElement* target;
        if (b->stack.empty()) {
            target = &b->root;
            b->have_root = true;
        } else {
            b->stack.back()->children.emplace_back();
            target = &b->stack.back()->children.back();
        }
        target->name = local_name(name);
        for (int i = 0; attrs[i]; i += 2) target->attributes.emplace_back(local_name(attrs[i]), attrs[i + 1]);
        b->stack.push_back(target);
    }

    static void on_end(void* user, const XML_Char*) { static_cast<Builder*>(user)->stack.pop_back(); }

    static void on_text(void* user, const XML_Char* s, int len) {
        auto* b = static_cast<Builder*>(user);
        if (!b->stack.empty()) b->stack.back()->text.append(s, static_cast<std::size_t>(len));
    }
};

void collect_t(const XmlElement& e, std::string& out) {
    for (const auto& c : e.children) {
        if (c.name == "t")
            out += c.text;
        else if (c.name != "rPh")  // phonetic runs are not part of the value
            collect_t(c, out);
    }
}

} // namespace

const std::string* XmlElement::attr(std::string_view key) const {
    for (const auto& [k, v] : attributes)
        if (k == key) return &v;
    return nullptr;
}

const XmlElement* XmlElement::child(std::string_view key) const {
    for (const auto& c : children)
        if (c.name == key) return &c;
    return nullptr;
}

std::string XmlElement::inner_t_text() const {
    std::string out;
    collect_t(*this, out);
    return out;
}

XmlElement parse_xml(std::string_view bytes, const std::string& member) {
    std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreate(nullptr),
                                                                       &XML_ParserFree);
    Builder builder;
    XML_SetUserData(parser.get(), &builder);
    XML_SetElementHandler(parser.get(), &Builder::on_start, &Builder::on_end);
    XML_SetCharacterDataHandler(parser.get(), &Builder::on_text);
    if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), 1) == XML_STATUS_ERROR) {
        std::string detail = XML_ErrorString(XML_GetErrorCode(parser.get()));
        detail += " at line " + std::to_string(XML_GetCurrentLineNumber(parser.get()));
        throw IngestError(IngestError::Kind::MalformedSheetXml, member, detail);
    }
    if (!builder.have_root) throw IngestError(IngestError::Kind::MalformedSheetXml, member, "no root element");
    return std::move(builder.root);
}

} // namespace cellflow::detail
