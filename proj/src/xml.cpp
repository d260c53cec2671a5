#include <cctype>

#include "treeincl/tree.hpp"

namespace treeincl {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_name_start(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '_' || c == ':' || u >= 0x80;
}

bool is_name_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return is_name_start(c) || std::isdigit(u) || c == '-' || c == '.';
}

class XmlReader {
 public:
  XmlReader(std::string_view text, TreeBuilder& b, XmlOptions opt) : s_(text), b_(b), opt_(opt) {}

  void run() {
    bool have_root = false;
    while (true) {
      skip_misc();
      if (i_ >= s_.size()) break;
      if (s_[i_] != '<') fail("text outside the document element");
      if (have_root) fail("multiple root elements");
      element();
      have_root = true;
    }
    if (!have_root) fail("no document element");
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError("malformed XML: " + msg, i_); }

  bool starts_with(std::string_view p) const { return s_.substr(i_, p.size()) == p; }

  void skip_until(std::string_view end) {
    auto pos = s_.find(end, i_);
    if (pos == std::string_view::npos) fail("unterminated construct");
    i_ = pos + end.size();
  }

  // whitespace, comments, processing instructions and a doctype outside elements
  void skip_misc() {
    for (;;) {
      while (i_ < s_.size() && is_space(s_[i_])) ++i_;
      if (starts_with("<?")) skip_until("?>");
      else if (starts_with("<!--")) skip_until("-->");
      else if (starts_with("<!DOCTYPE")) skip_until(">");
      else return;
    }
  }

  std::string_view name() {
    std::size_t start = i_;
    if (i_ >= s_.size() || !is_name_start(s_[i_])) fail("expected element name");
    while (i_ < s_.size() && is_name_char(s_[i_])) ++i_;
    return s_.substr(start, i_ - start);
  }

  void skip_attributes() {
    for (;;) {
      while (i_ < s_.size() && is_space(s_[i_])) ++i_;
      if (i_ >= s_.size()) fail("unterminated start tag");
      if (s_[i_] == '>' || s_[i_] == '/') return;
      name();
      while (i_ < s_.size() && is_space(s_[i_])) ++i_;
      if (i_ >= s_.size() || s_[i_] != '=') fail("expected '=' in attribute");
      ++i_;
      while (i_ < s_.size() && is_space(s_[i_])) ++i_;
      if (i_ >= s_.size() || (s_[i_] != '"' && s_[i_] != '\'')) fail("expected quoted attribute value");
      char q = s_[i_++];
      auto end = s_.find(q, i_);
      if (end == std::string_view::npos) fail("unterminated attribute value");
      i_ = end + 1;
    }
  }

  void append_entity(std::string& out) {
    auto end = s_.find(';', i_);
    if (end == std::string_view::npos) fail("unterminated entity");
    auto ent = s_.substr(i_ + 1, end - i_ - 1);
    if (ent == "lt") out += '<';
    else if (ent == "gt") out += '>';
    else if (ent == "amp") out += '&';
    else if (ent == "quot") out += '"';
    else if (ent == "apos") out += '\'';
    else fail("unsupported entity &" + std::string(ent) + ";");
    i_ = end + 1;
  }

  void flush_text(std::string& text, NodeId parent) {
    std::size_t a = 0, z = text.size();
    while (a < z && is_space(text[a])) ++a;
    while (z > a && is_space(text[z - 1])) --z;
    if (opt_.text_nodes && z > a) b_.add_child(parent, std::string_view(text).substr(a, z - a));
    text.clear();
  }

  // Iterative so that deeply nested documents are fine.
  void element() {
    std::vector<std::pair<std::string_view, NodeId>> open;
    std::string text;
    do {
      if (i_ >= s_.size()) fail("unexpected end of input inside element");
      char c = s_[i_];
      if (c != '<') {
        if (open.empty()) fail("text outside the document element");
        if (c == '&') append_entity(text);
        else text += s_[i_++];
        continue;
      }
      if (starts_with("<!--")) {
        skip_until("-->");
        continue;
      }
      if (starts_with("<![CDATA[")) {
        i_ += 9;
        auto end = s_.find("]]>", i_);
        if (end == std::string_view::npos) fail("unterminated CDATA");
        text.append(s_.substr(i_, end - i_));
        i_ = end + 3;
        continue;
      }
      if (starts_with("<?")) {
        skip_until("?>");
        continue;
      }
      if (starts_with("</")) {
        if (open.empty()) fail("unexpected end tag");
        flush_text(text, open.back().second);
        i_ += 2;
        auto nm = name();
        if (nm != open.back().first) fail("mismatched end tag </" + std::string(nm) + ">");
        while (i_ < s_.size() && is_space(s_[i_])) ++i_;
        if (i_ >= s_.size() || s_[i_] != '>') fail("expected '>'");
        ++i_;
        open.pop_back();
        continue;
      }
      ++i_;
      if (!open.empty()) flush_text(text, open.back().second);
      auto nm = name();
      NodeId id = open.empty() ? b_.add_root(nm) : b_.add_child(open.back().second, nm);
      skip_attributes();
      if (s_[i_] == '/') {
        ++i_;
        if (i_ >= s_.size() || s_[i_] != '>') fail("expected '>' after '/'");
        ++i_;
        if (open.empty()) return;
        continue;
      }
      ++i_;
      open.emplace_back(nm, id);
    } while (!open.empty());
  }

  std::string_view s_;
  std::size_t i_ = 0;
  TreeBuilder& b_;
  XmlOptions opt_;
};

}  // namespace

LabeledTree parse_xml(std::string_view text, std::shared_ptr<Alphabet> alphabet, XmlOptions options) {
  TreeBuilder b(std::move(alphabet));
  XmlReader(text, b, options).run();
  return b.build();
}

std::string to_xml(const LabeledTree& t) {
  std::string out;
  if (t.empty()) return out;
  for (NodeId v = 0; v < t.size(); ++v) {
    const auto& nm = t.alphabet().name(t.label(v));
    if (nm.empty() || !is_name_start(nm[0]))
      throw std::invalid_argument("label '" + nm + "' is not a valid XML element name");
    for (char c : nm)
      if (!is_name_char(c))
        throw std::invalid_argument("label '" + nm + "' is not a valid XML element name");
  }
  std::vector<NodeId> open;
  auto close = [&](NodeId v) { out += "</" + t.alphabet().name(t.label(v)) + ">"; };
  for (NodeId v = 0; v < t.size(); ++v) {
    while (!open.empty() && !t.is_ancestor(open.back(), v)) {
      close(open.back());
      open.pop_back();
    }
    const auto& nm = t.alphabet().name(t.label(v));
    if (t.is_leaf(v)) {
      out += "<" + nm + "/>";
    } else {
      out += "<" + nm + ">";
      open.push_back(v);
    }
  }
  while (!open.empty()) {
    close(open.back());
    open.pop_back();
  }
  return out;
}

}  // namespace treeincl
