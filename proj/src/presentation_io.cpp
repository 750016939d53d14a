#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "minorlab/errors.hpp"
#include "minorlab/presentation.hpp"

namespace minorlab {

namespace {

struct Sexp {
  std::string atom;  // empty for lists
  std::vector<Sexp> items;
  int line = 1;
  int col = 1;

  bool is_atom() const { return !atom.empty(); }
};

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  std::vector<Sexp> read_all() {
    std::vector<Sexp> out;
    while (true) {
      skip();
      if (pos_ >= text_.size()) return out;
      out.push_back(read());
    }
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Sexp read() {
    skip();
    if (pos_ >= text_.size()) throw ParseError(line_, col_, "unexpected end of input");
    Sexp s;
    s.line = line_;
    s.col = col_;
    if (text_[pos_] == ')') throw ParseError(line_, col_, "unexpected ')'");
    if (text_[pos_] == '(') {
      advance();
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw ParseError(s.line, s.col, "unclosed '('");
        if (text_[pos_] == ')') {
          advance();
          return s;
        }
        s.items.push_back(read());
      }
    }
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '(' || ch == ')' || ch == ';' || std::isspace(static_cast<unsigned char>(ch))) break;
      s.atom += ch;
      advance();
    }
    return s;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

[[noreturn]] void fail(const Sexp& s, const std::string& what) { throw ParseError(s.line, s.col, what); }

int as_int(const Sexp& s) {
  if (!s.is_atom()) fail(s, "expected a number");
  int v = 0;
  for (char ch : s.atom) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) fail(s, "expected a number, got " + s.atom);
    v = v * 10 + (ch - '0');
    if (v > kMaxOrder) fail(s, "number too large");
  }
  return v;
}

const std::string& head(const Sexp& s) {
  static const std::string none;
  if (s.is_atom() || s.items.empty() || !s.items[0].is_atom()) return none;
  return s.items[0].atom;
}

void expect_head(const Sexp& s, const std::string& name) {
  if (head(s) != name) fail(s, "expected (" + name + " ...)");
}

class Interpreter {
 public:
  PresPtr pres(const Sexp& s) {
    if (s.is_atom()) {
      if (s.atom.rfind("ref:", 0) != 0) fail(s, "expected (pres ...) or ref:NAME");
      auto it = defs_.find(s.atom.substr(4));
      if (it == defs_.end()) fail(s, "undefined name " + s.atom.substr(4));
      return it->second;
    }
    expect_head(s, "pres");
    int k = -1;
    std::vector<int> marks;
    std::vector<Edge> edges;
    std::vector<Template> templates;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const Sexp& f = s.items[i];
      const std::string& h = head(f);
      if (h == "kernel") {
        if (k >= 0 || f.items.size() != 2) fail(f, "bad kernel clause");
        k = as_int(f.items[1]);
      } else if (h == "kmarks") {
        for (std::size_t j = 1; j < f.items.size(); ++j) marks.push_back(as_int(f.items[j]));
      } else if (h == "kedges") {
        for (std::size_t j = 1; j < f.items.size(); ++j) {
          const Sexp& e = f.items[j];
          if (e.is_atom() || e.items.size() != 2) fail(e, "expected (i j)");
          edges.emplace_back(as_int(e.items[0]), as_int(e.items[1]));
        }
      } else if (h == "part") {
        if (f.items.size() < 2 || f.items.size() > 4) fail(f, "bad part clause");
        ConcreteTemplate t{pres(f.items[1]), Multiplicity::omega(), {}};
        for (std::size_t j = 2; j < f.items.size(); ++j) {
          const Sexp& c = f.items[j];
          if (head(c) == "mult") {
            if (c.items.size() != 2) fail(c, "bad mult clause");
            if (c.items[1].atom == "omega") {
              t.mult = Multiplicity::omega();
            } else {
              int n = as_int(c.items[1]);
              if (n < 1) fail(c.items[1], "multiplicity must be positive");
              t.mult = Multiplicity::finite(n);
            }
          } else {
            t.attach = attach(c);
          }
        }
        templates.push_back(std::move(t));
      } else if (h == "family") {
        if (f.items.size() < 2 || f.items.size() > 3 || !f.items[1].is_atom()) fail(f, "bad family clause");
        FamilyTemplate t;
        try {
          t.gen = parse_generator(f.items[1].atom);
        } catch (const Error& e) {
          fail(f.items[1], e.what());
        }
        if (f.items.size() == 3) t.attach = attach(f.items[2]);
        templates.push_back(std::move(t));
      } else {
        fail(f, "unknown clause");
      }
    }
    if (k < 0) fail(s, "missing kernel clause");
    try {
      FiniteGraph g(k, std::move(edges));
      if (templates.empty()) return share(Presentation::base(MarkedGraph(g, marks)));
      return share(Presentation::node(std::move(g), std::move(marks), std::move(templates)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(s, e.what());
    }
  }

  Attachment attach(const Sexp& s) {
    expect_head(s, "attach");
    Attachment a;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const Sexp& c = s.items[i];
      if (head(c) == "ports") {
        for (std::size_t j = 1; j < c.items.size(); ++j) {
          const Sexp& e = c.items[j];
          if (e.is_atom() || e.items.size() != 2) fail(e, "expected (port anchor)");
          a.ports.emplace_back(as_int(e.items[0]), as_int(e.items[1]));
        }
      } else if (head(c) == "all") {
        if (c.items.size() < 2) fail(c, "all needs an anchor");
        for (std::size_t j = 1; j < c.items.size(); ++j) a.all.push_back(as_int(c.items[j]));
      } else {
        fail(c, "expected (ports ...) or (all ...)");
      }
    }
    return a;
  }

  void define(const Sexp& s) {
    if (s.items.size() != 3 || !s.items[1].is_atom()) fail(s, "expected (def NAME pres)");
    const std::string& name = s.items[1].atom;
    if (defs_.count(name)) fail(s.items[1], "duplicate name " + name);
    defs_[name] = pres(s.items[2]);
  }

 private:
  std::map<std::string, PresPtr> defs_;
};

class Emitter {
 public:
  std::string emit(const Presentation& root) {
    count(root);
    std::string defs;
    order(root, defs);
    return defs + body(root) + "\n";
  }

 private:
  void count(const Presentation& p) {
    if (p.is_base()) return;
    for (const Template& t : p.as_node().templates) {
      auto* c = std::get_if<ConcreteTemplate>(&t);
      if (!c) continue;
      if (uses_[c->part.get()]++ == 0) count(*c->part);
    }
  }

  void order(const Presentation& p, std::string& defs) {
    if (p.is_base()) return;
    for (const Template& t : p.as_node().templates) {
      auto* c = std::get_if<ConcreteTemplate>(&t);
      if (!c || !visited_.insert(c->part.get()).second) continue;
      order(*c->part, defs);
      if (uses_[c->part.get()] > 1) {
        std::string name = "p" + std::to_string(names_.size());
        defs += "(def " + name + " " + body(*c->part) + ")\n";
        names_[c->part.get()] = name;
      }
    }
  }

  std::string body(const Presentation& p) {
    std::string s = "(pres (kernel " + std::to_string(p.top_order()) + ")";
    if (!p.top_marks().empty()) {
      s += " (kmarks";
      for (int m : p.top_marks()) s += " " + std::to_string(m);
      s += ")";
    }
    if (p.top_graph().size() > 0) {
      s += " (kedges";
      for (const Edge& e : p.top_graph().edges()) s += " (" + std::to_string(e.u) + " " + std::to_string(e.v) + ")";
      s += ")";
    }
    if (!p.is_base()) {
      for (const Template& t : p.as_node().templates) {
        if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
          auto it = names_.find(c->part.get());
          s += " (part " + (it != names_.end() ? "ref:" + it->second : body(*c->part));
          s += " (mult " + (c->mult.is_omega() ? std::string("omega") : std::to_string(c->mult.count())) + ")";
          s += " " + attach(c->attach) + ")";
        } else {
          const auto& f = std::get<FamilyTemplate>(t);
          s += " (family " + std::string(to_string(f.gen)) + " " + attach(f.attach) + ")";
        }
      }
    }
    return s + ")";
  }

  static std::string attach(const Attachment& a) {
    std::string s = "(attach";
    if (!a.ports.empty()) {
      s += " (ports";
      for (auto [port, anchor] : a.ports) s += " (" + std::to_string(port) + " " + std::to_string(anchor) + ")";
      s += ")";
    }
    if (!a.all.empty()) {
      s += " (all";
      for (int anchor : a.all) s += " " + std::to_string(anchor);
      s += ")";
    }
    return s + ")";
  }

  std::map<const Presentation*, int> uses_;
  std::set<const Presentation*> visited_;
  std::map<const Presentation*, std::string> names_;
};

}  // namespace

Presentation parse_presentation(const std::string& text) {
  Reader reader(text);
  auto forms = reader.read_all();
  if (forms.empty()) throw ParseError(1, 1, "empty presentation text");
  Interpreter in;
  for (std::size_t i = 0; i + 1 < forms.size(); ++i) {
    expect_head(forms[i], "def");
    in.define(forms[i]);
  }
  return *in.pres(forms.back());
}

std::string emit_presentation(const Presentation& p) { return Emitter().emit(p); }

}  // namespace minorlab
