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

#ifndef PQS_XML_HPP
#define PQS_XML_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pqs::xml {

// Small namespace-aware XML reader for textual (decompiled) manifests.
// Covers the subset decompilers emit: prolog, comments, CDATA, entities,
// attributes, nested elements. No DTD processing.

struct Attribute {
  std::string prefix;  // "" when unprefixed
  std::string local;
  std::string ns_uri;  // resolved from in-scope xmlns declarations, may be ""
  std::string value;

  std::string qname() const {
    return prefix.empty() ? local : prefix + ":" + local;
  }
};

struct Element {
  std::string prefix;
  std::string local;
  std::string ns_uri;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::size_t position = 0;  // byte offset of the opening '<'

  // Matches by namespace URI + local name, with a literal-prefix fallback for
  // documents whose decompiler dropped the xmlns declaration.
  const Attribute* find_attribute(std::string_view uri, std::string_view local_name,
                                  std::string_view fallback_prefix) const;
};

// Parses a complete document and returns the root element.
// Throws MalformedXml(position) on any syntax problem, including binary
// (AXML) input.
Element parse(std::string_view text);

}  // namespace pqs::xml

#endif  // PQS_XML_HPP
