#include "bssd/osm_xml.hpp"

#include "bssd/error.hpp"
#include "bssd/tag_schema.hpp"

#include <expat.h>

#include <charconv>
#include <memory>
#include <optional>

namespace bssd {

namespace {

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

std::optional<OsmId> parse_id(std::string_view s) {
  OsmId v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class OsmXmlHandler {
 public:
  explicit OsmXmlHandler(XML_Parser parser) : parser_(parser) {}

  static void on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    static_cast<OsmXmlHandler*>(self)->start(name, attrs);
  }
  static void on_end(void* self, const XML_Char* name) { static_cast<OsmXmlHandler*>(self)->end(name); }

  OsmReadResult& result() { return result_; }
  const std::optional<Error>& error() const { return error_; }
  bool saw_root() const { return saw_root_; }

 private:
  enum class Current { none, node, way, relation, other };

  int line() const { return static_cast<int>(XML_GetCurrentLineNumber(parser_)); }

  void fail(ErrorCode code, const std::string& msg) {
    if (!error_) error_.emplace(code, "line " + std::to_string(line()) + ": " + msg);
    XML_StopParser(parser_, XML_FALSE);
  }

  void issue(std::string code, std::string msg) { result_.issues.push_back({line(), std::move(code), std::move(msg)}); }

  static XmlAttributes collect(const XML_Char** attrs) {
    XmlAttributes out;
    for (int i = 0; attrs[i]; i += 2) out.emplace(attrs[i], attrs[i + 1]);
    return out;
  }

  std::optional<std::string> take(XmlAttributes& attrs, std::string_view key) {
    auto it = attrs.find(key);
    if (it == attrs.end()) return std::nullopt;
    auto v = std::move(it->second);
    attrs.erase(it);
    return v;
  }

  std::optional<OsmId> take_id(XmlAttributes& attrs, std::string_view key, std::string_view element) {
    auto raw = take(attrs, key);
    if (!raw) {
      fail(ErrorCode::malformed_xml, std::string(element) + " without " + std::string(key));
      return std::nullopt;
    }
    auto id = parse_id(*raw);
    if (!id) fail(ErrorCode::malformed_xml, std::string(element) + ": invalid " + std::string(key) + " '" + *raw + "'");
    return id;
  }

  Tags* current_tags() {
    switch (current_) {
      case Current::node: return &node_.tags;
      case Current::way: return &way_.tags;
      case Current::relation: return &relation_.tags;
      default: return nullptr;
    }
  }

  void start(std::string_view name, const XML_Char** raw) {
    ++depth_;
    if (error_) return;
    auto attrs = collect(raw);
    if (depth_ == 1) {
      if (name != "osm") {
        fail(ErrorCode::malformed_xml, "root element is <" + std::string(name) + ">, expected <osm>");
        return;
      }
      saw_root_ = true;
      attrs.emplace("version", "0.6");
      result_.document.root_attributes = std::move(attrs);
      return;
    }
    if (depth_ == 2) {
      start_element(name, std::move(attrs));
      return;
    }
    if (depth_ == 3) {
      start_child(name, std::move(attrs));
      return;
    }
    issue("unsupported_nesting", "ignored <" + std::string(name) + "> nested too deep");
  }

  void start_element(std::string_view name, XmlAttributes attrs) {
    element_line_ = line();
    if (name == "node") {
      auto id = take_id(attrs, "id", "node");
      auto lat = take(attrs, "lat");
      auto lon = take(attrs, "lon");
      if (!id) return;
      auto flat = lat ? schema::parse_number(*lat) : std::nullopt;
      auto flon = lon ? schema::parse_number(*lon) : std::nullopt;
      if (!flat || !flon) {
        fail(ErrorCode::malformed_xml, "node " + std::to_string(*id) + " without valid lat/lon");
        return;
      }
      node_ = OsmNode{*id, *flat, *flon, {}, std::move(attrs)};
      current_ = Current::node;
    } else if (name == "way") {
      auto id = take_id(attrs, "id", "way");
      if (!id) return;
      way_ = OsmWay{*id, {}, {}, std::move(attrs)};
      current_ = Current::way;
    } else if (name == "relation") {
      auto id = take_id(attrs, "id", "relation");
      if (!id) return;
      relation_ = OsmRelation{*id, {}, {}, std::move(attrs)};
      current_ = Current::relation;
    } else {
      result_.document.others.push_back({std::string(name), std::move(attrs)});
      current_ = Current::other;
    }
  }

  void start_child(std::string_view name, XmlAttributes attrs) {
    if (name == "tag" && current_tags()) {
      auto k = take(attrs, "k");
      auto v = take(attrs, "v");
      if (!k || !v) {
        fail(ErrorCode::malformed_xml, "tag without k or v");
        return;
      }
      if (!current_tags()->emplace(std::move(*k), std::move(*v)).second) {
        issue("duplicate_tag", "duplicate tag key ignored");
      }
    } else if (name == "nd" && current_ == Current::way) {
      if (auto ref = take_id(attrs, "ref", "nd")) way_.nodes.push_back(*ref);
    } else if (name == "member" && current_ == Current::relation) {
      auto type = take(attrs, "type");
      auto parsed = type ? parse_element_type(*type) : std::nullopt;
      if (!parsed) {
        fail(ErrorCode::malformed_xml, "member with missing or unknown type");
        return;
      }
      auto ref = take_id(attrs, "ref", "member");
      if (!ref) return;
      relation_.members.push_back({*parsed, *ref, take(attrs, "role").value_or("")});
    } else {
      issue("unsupported_element", "ignored <" + std::string(name) + ">");
    }
  }

  template <typename T>
  void insert(std::map<OsmId, T>& into, T&& element, ElementType type) {
    const OsmId id = element.id;
    if (!into.emplace(id, std::forward<T>(element)).second) {
      fail(ErrorCode::duplicate_id, std::string(to_string(type)) + " " + std::to_string(id) + " defined twice");
      return;
    }
    result_.document.set_line({type, id}, element_line_);
  }

  void end(std::string_view) {
    if (depth_ == 2 && !error_) {
      auto& doc = result_.document;
      switch (current_) {
        case Current::node: insert(doc.nodes, std::move(node_), ElementType::node); break;
        case Current::way: insert(doc.ways, std::move(way_), ElementType::way); break;
        case Current::relation: insert(doc.relations, std::move(relation_), ElementType::relation); break;
        default: break;
      }
      current_ = Current::none;
    }
    --depth_;
  }

  XML_Parser parser_;
  OsmReadResult result_;
  std::optional<Error> error_;
  bool saw_root_ = false;
  int depth_ = 0;
  int element_line_ = 0;
  Current current_ = Current::none;
  OsmNode node_;
  OsmWay way_;
  OsmRelation relation_;
};

void escape_into(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
}

void attr(std::string& out, std::string_view key, std::string_view value) {
  out += ' ';
  out += key;
  out += "=\"";
  escape_into(out, value);
  out += '"';
}

void extra_attrs(std::string& out, const XmlAttributes& attrs) {
  for (const auto& [k, v] : attrs) attr(out, k, v);
}

void tags(std::string& out, const Tags& t) {
  for (const auto& [k, v] : t) {
    out += "    <tag";
    attr(out, "k", k);
    attr(out, "v", v);
    out += "/>\n";
  }
}

}  // namespace

OsmReadResult read_osm_xml(std::string_view xml) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw std::bad_alloc();
  OsmXmlHandler handler(parser.get());
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), &OsmXmlHandler::on_start, &OsmXmlHandler::on_end);

  const auto status = XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE);
  if (handler.error()) throw *handler.error();
  if (status != XML_STATUS_OK) {
    throw Error(ErrorCode::malformed_xml, "line " + std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                                              XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!handler.saw_root()) throw Error(ErrorCode::malformed_xml, "document has no <osm> root");
  return std::move(handler.result());
}

std::string write_osm_xml(const OsmDocument& doc) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<osm";
  XmlAttributes root = doc.root_attributes;
  root.emplace("version", "0.6");
  extra_attrs(out, root);
  out += ">\n";

  for (const auto& o : doc.others) {
    out += "  <" + o.name;
    extra_attrs(out, o.attributes);
    out += "/>\n";
  }
  for (const auto& [id, n] : doc.nodes) {
    out += "  <node";
    attr(out, "id", std::to_string(id));
    attr(out, "lat", schema::format_number(n.lat));
    attr(out, "lon", schema::format_number(n.lon));
    extra_attrs(out, n.attributes);
    if (n.tags.empty()) {
      out += "/>\n";
      continue;
    }
    out += ">\n";
    tags(out, n.tags);
    out += "  </node>\n";
  }
  for (const auto& [id, w] : doc.ways) {
    out += "  <way";
    attr(out, "id", std::to_string(id));
    extra_attrs(out, w.attributes);
    out += ">\n";
    for (auto ref : w.nodes) out += "    <nd ref=\"" + std::to_string(ref) + "\"/>\n";
    tags(out, w.tags);
    out += "  </way>\n";
  }
  for (const auto& [id, r] : doc.relations) {
    out += "  <relation";
    attr(out, "id", std::to_string(id));
    extra_attrs(out, r.attributes);
    out += ">\n";
    for (const auto& m : r.members) {
      out += "    <member";
      attr(out, "type", to_string(m.type));
      attr(out, "ref", std::to_string(m.ref));
      attr(out, "role", m.role);
      out += "/>\n";
    }
    tags(out, r.tags);
    out += "  </relation>\n";
  }
  out += "</osm>\n";
  return out;
}

}  // namespace bssd
