// Copyright 2026 The PQS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pqs/xml.hpp"

#include <map>
#include <utility>

#include "pqs/errors.hpp"

namespace pqs::xml {

namespace {

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':';
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Element parse_document() {
    reject_binary_input();
    skip_misc();
    if (pos_ >= text_.size() || text_[pos_] != '<') {
      fail("expected root element");
    }
    Element root = parse_element();
    skip_misc();
    if (pos_ < text_.size()) {
      fail("trailing content after root element");
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const {
    throw MalformedXml(pos_, reason);
  }

  void reject_binary_input() {
    // Binary AXML starts with a 0x0003 chunk type; any NUL byte is a giveaway
    // that this is not a decompiled textual manifest.
    if (text_.size() >= 4 && static_cast<unsigned char>(text_[0]) == 0x03 &&
        static_cast<unsigned char>(text_[1]) == 0x00) {
      throw MalformedXml(0, "binary Android XML (AXML); run the decompiler first");
    }
    if (text_.find('\0') != std::string_view::npos) {
      throw MalformedXml(text_.find('\0'), "NUL byte in document");
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && is_ws(text_[pos_])) ++pos_;
  }

  // Whitespace, comments, processing instructions and a DOCTYPE, between
  // markup.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<!--")) {
        std::size_t end = text_.find("-->", pos_ + 4);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos_ = end + 3;
      } else if (starts_with("<?")) {
        std::size_t end = text_.find("?>", pos_ + 2);
        if (end == std::string_view::npos) fail("unterminated processing instruction");
        pos_ = end + 2;
      } else if (starts_with("<!DOCTYPE")) {
        std::size_t end = text_.find('>', pos_);
        if (end == std::string_view::npos) fail("unterminated DOCTYPE");
        pos_ = end + 1;
      } else {
        return;
      }
    }
  }

  bool starts_with(std::string_view s) const {
    return text_.substr(pos_).substr(0, s.size()) == s;
  }

  std::string parse_name() {
    if (pos_ >= text_.size() || !is_name_start(text_[pos_])) {
      fail("expected name");
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  static std::pair<std::string, std::string> split_qname(const std::string& qname) {
    auto colon = qname.find(':');
    if (colon == std::string::npos) return {"", qname};
    return {qname.substr(0, colon), qname.substr(colon + 1)};
  }

  std::string decode_entities(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        continue;
      }
      std::size_t semi = raw.find(';', i + 1);
      if (semi == std::string_view::npos) fail("unterminated entity reference");
      std::string_view entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "lt") {
        out.push_back('<');
      } else if (entity == "gt") {
        out.push_back('>');
      } else if (entity == "amp") {
        out.push_back('&');
      } else if (entity == "apos") {
        out.push_back('\'');
      } else if (entity == "quot") {
        out.push_back('"');
      } else if (!entity.empty() && entity[0] == '#') {
        unsigned long code = 0;
        try {
          code = (entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X'))
                     ? std::stoul(std::string(entity.substr(2)), nullptr, 16)
                     : std::stoul(std::string(entity.substr(1)), nullptr, 10);
        } catch (...) {
          fail("bad character reference");
        }
        append_utf8(out, code);
      } else {
        fail("unknown entity: &" + std::string(entity) + ";");
      }
      i = semi;
    }
    return out;
  }

  static void append_utf8(std::string& out, unsigned long code) {
    if (code < 0x80) {
      out.push_back(static_cast<char>(code));
    } else if (code < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (code >> 6)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
    } else if (code < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (code >> 12)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (code >> 18)));
      out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
    }
  }

  std::string parse_attribute_value() {
    if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) {
      fail("expected quoted attribute value");
    }
    char quote = text_[pos_++];
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != quote) {
      if (text_[pos_] == '<') fail("'<' in attribute value");
      ++pos_;
    }
    if (pos_ >= text_.size()) fail("unterminated attribute value");
    std::string value = decode_entities(text_.substr(start, pos_ - start));
    ++pos_;  // closing quote
    return value;
  }

  Element parse_element() {
    Element element;
    element.position = pos_;
    ++pos_;  // '<'
    auto [prefix, local] = split_qname(parse_name());
    element.prefix = prefix;
    element.local = local;

    // Raw attributes first; namespace declarations on this element apply to
    // the element itself and its attributes.
    std::vector<std::pair<std::string, std::string>> raw_attrs;
    std::map<std::string, std::string> local_ns;
    for (;;) {
      bool had_ws = pos_ < text_.size() && is_ws(text_[pos_]);
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated start tag");
      if (text_[pos_] == '>' || starts_with("/>")) break;
      if (!had_ws) fail("expected whitespace before attribute");
      std::string qname = parse_name();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '=') fail("expected '='");
      ++pos_;
      skip_ws();
      std::string value = parse_attribute_value();
      for (const auto& [seen_name, seen_value] : raw_attrs) {
        (void)seen_value;
        if (seen_name == qname) fail("duplicate attribute: " + qname);
      }
      if (qname == "xmlns") {
        local_ns[""] = value;
      } else if (qname.rfind("xmlns:", 0) == 0) {
        local_ns[qname.substr(6)] = value;
      }
      raw_attrs.emplace_back(std::move(qname), std::move(value));
    }

    ns_stack_.push_back(std::move(local_ns));
    element.ns_uri = resolve_ns(element.prefix, /*is_attribute=*/false);
    for (auto& [qname, value] : raw_attrs) {
      auto [aprefix, alocal] = split_qname(qname);
      Attribute attr;
      attr.prefix = aprefix;
      attr.local = alocal;
      attr.ns_uri = aprefix.empty() ? "" : resolve_ns(aprefix, /*is_attribute=*/true);
      attr.value = std::move(value);
      element.attributes.push_back(std::move(attr));
    }

    if (starts_with("/>")) {
      pos_ += 2;
      ns_stack_.pop_back();
      return element;
    }
    ++pos_;  // '>'

    // Children and character data until the matching end tag.
    for (;;) {
      if (pos_ >= text_.size()) fail("unterminated element: " + element.local);
      if (starts_with("</")) {
        pos_ += 2;
        std::string end_name = parse_name();
        if (end_name != (element.prefix.empty()
                             ? element.local
                             : element.prefix + ":" + element.local)) {
          fail("mismatched end tag: expected </" +
               (element.prefix.empty() ? element.local
                                       : element.prefix + ":" + element.local) +
               ">, got </" + end_name + ">");
        }
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '>') fail("expected '>'");
        ++pos_;
        ns_stack_.pop_back();
        return element;
      }
      if (starts_with("<!--")) {
        std::size_t end = text_.find("-->", pos_ + 4);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos_ = end + 3;
      } else if (starts_with("<![CDATA[")) {
        std::size_t end = text_.find("]]>", pos_ + 9);
        if (end == std::string_view::npos) fail("unterminated CDATA");
        pos_ = end + 3;
      } else if (starts_with("<?")) {
        std::size_t end = text_.find("?>", pos_ + 2);
        if (end == std::string_view::npos) fail("unterminated processing instruction");
        pos_ = end + 2;
      } else if (text_[pos_] == '<') {
        element.children.push_back(parse_element());
      } else {
        // Character data; validated for entity syntax, content discarded.
        std::size_t end = text_.find('<', pos_);
        if (end == std::string_view::npos) fail("unterminated element content");
        decode_entities(text_.substr(pos_, end - pos_));
        pos_ = end;
      }
    }
  }

  std::string resolve_ns(const std::string& prefix, bool is_attribute) {
    if (prefix == "xmlns") return "";
    for (auto it = ns_stack_.rbegin(); it != ns_stack_.rend(); ++it) {
      auto found = it->find(prefix);
      if (found != it->end()) return found->second;
    }
    // Unprefixed attributes have no namespace; unprefixed elements without a
    // default declaration have none either. An unresolved prefix stays
    // literal (decompilers sometimes drop the declaration).
    (void)is_attribute;
    return "";
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::map<std::string, std::string>> ns_stack_;
};

}  // namespace

const Attribute* Element::find_attribute(std::string_view uri,
                                         std::string_view local_name,
                                         std::string_view fallback_prefix) const {
  for (const auto& attr : attributes) {
    if (attr.local != local_name) continue;
    if (!attr.ns_uri.empty() && attr.ns_uri == uri) return &attr;
    if (attr.ns_uri.empty() && !attr.prefix.empty() &&
        attr.prefix == fallback_prefix) {
      return &attr;
    }
    if (uri.empty() && fallback_prefix.empty() && attr.prefix.empty() &&
        attr.ns_uri.empty()) {
      return &attr;
    }
  }
  return nullptr;
}

Element parse(std::string_view text) {
  Parser parser(text);
  return parser.parse_document();
}

}  // namespace pqs::xml
