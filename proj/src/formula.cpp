#include "ltlsn/formula.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <set>
#include <unordered_set>

#include "ltlsn/model.hpp"

namespace ltlsn {

struct Formula::Node {
  Kind kind;
  std::string agent;
  std::string other;
  unsigned horizon = 0;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
  std::size_t size = 1;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value)
{
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t saturating_add(std::size_t a, std::size_t b)
{
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max()
                                                          : a + b;
}

} // namespace

Formula Formula::make(Node node)
{
  std::size_t h = mix(0, static_cast<std::size_t>(node.kind));
  h = mix(h, std::hash<std::string>{}(node.agent));
  h = mix(h, std::hash<std::string>{}(node.other));
  h = mix(h, node.horizon);
  node.size = 1;
  if (node.lhs) {
    h = mix(h, node.lhs->hash());
    node.size = saturating_add(node.size, node.lhs->size());
  }
  if (node.rhs) {
    h = mix(h, node.rhs->hash());
    node.size = saturating_add(node.size, node.rhs->size());
  }
  node.hash = h;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::top()
{
  static const Formula t = make(Node{Kind::top, {}, {}, 0, std::nullopt, std::nullopt});
  return t;
}

Formula Formula::neighbor(std::string a, std::string b)
{
  return make(Node{Kind::neighbor, std::move(a), std::move(b), 0, std::nullopt, std::nullopt});
}

Formula Formula::behaves(std::string a)
{
  return make(Node{Kind::behaves, std::move(a), {}, 0, std::nullopt, std::nullopt});
}

Formula Formula::majority(std::string a, unsigned horizon)
{
  return make(Node{Kind::majority, std::move(a), {}, horizon, std::nullopt, std::nullopt});
}

Formula Formula::negation(Formula f)
{
  return make(Node{Kind::negation, {}, {}, 0, std::move(f), std::nullopt});
}

Formula Formula::conjunction(Formula lhs, Formula rhs)
{
  return make(Node{Kind::conjunction, {}, {}, 0, std::move(lhs), std::move(rhs)});
}

Formula Formula::next(Formula f)
{
  return make(Node{Kind::next, {}, {}, 0, std::move(f), std::nullopt});
}

Formula Formula::until(Formula lhs, Formula rhs)
{
  return make(Node{Kind::until, {}, {}, 0, std::move(lhs), std::move(rhs)});
}

Formula Formula::bottom()
{
  return negation(top());
}

Formula Formula::disjunction(Formula lhs, Formula rhs)
{
  return negation(conjunction(negation(std::move(lhs)), negation(std::move(rhs))));
}

Formula Formula::implication(Formula lhs, Formula rhs)
{
  return negation(conjunction(std::move(lhs), negation(std::move(rhs))));
}

Formula Formula::eventually(Formula f)
{
  return until(top(), std::move(f));
}

Formula Formula::always(Formula f)
{
  return negation(eventually(negation(std::move(f))));
}

Kind Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::agent() const
{
  if (node_->kind != Kind::behaves && node_->kind != Kind::neighbor && node_->kind != Kind::majority)
    throw std::logic_error("formula node has no agent");
  return node_->agent;
}

const std::string& Formula::other() const
{
  if (node_->kind != Kind::neighbor)
    throw std::logic_error("formula node has no second agent");
  return node_->other;
}

unsigned Formula::horizon() const { return node_->horizon; }

const Formula& Formula::lhs() const
{
  if (!node_->lhs)
    throw std::logic_error("formula node has no operand");
  return *node_->lhs;
}

const Formula& Formula::rhs() const
{
  if (!node_->rhs)
    throw std::logic_error("formula node has no right operand");
  return *node_->rhs;
}

bool Formula::is_atom() const noexcept
{
  switch (node_->kind) {
  case Kind::top:
  case Kind::neighbor:
  case Kind::behaves:
  case Kind::majority:
    return true;
  default:
    return false;
  }
}

std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

bool operator==(const Formula& a, const Formula& b)
{
  const Formula::Node* x = a.node_.get();
  const Formula::Node* y = b.node_.get();
  if (x == y)
    return true;
  if (x->hash != y->hash || x->size != y->size || x->kind != y->kind || x->agent != y->agent ||
      x->other != y->other || x->horizon != y->horizon)
    return false;
  if (x->lhs && !(a.lhs() == b.lhs()))
    return false;
  if (x->rhs && !(a.rhs() == b.rhs()))
    return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

syntax_error::syntax_error(std::size_t column, const std::string& what)
  : std::runtime_error("column " + std::to_string(column) + ": " + what), column_(column)
{
}

namespace {

enum class Tok { word, lparen, rparen, comma, bang, amp, bar, arrow, end };

struct Token {
  Tok type;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex(std::string_view s)
{
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t col = i + 1;
    if (std::isspace(c)) {
      ++i;
    } else if (std::isalnum(c) || c == '_') {
      std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      out.push_back({Tok::word, std::string(s.substr(start, i - start)), col});
    } else if (c == '(') {
      out.push_back({Tok::lparen, "(", col});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::rparen, ")", col});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::comma, ",", col});
      ++i;
    } else if (c == '!') {
      out.push_back({Tok::bang, "!", col});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::amp, "&", col});
      ++i;
    } else if (c == '|') {
      out.push_back({Tok::bar, "|", col});
      ++i;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", col});
      i += 2;
    } else {
      throw syntax_error(col, "unexpected character '" + std::string(1, s[i]) + "'");
    }
  }
  out.push_back({Tok::end, "", s.size() + 1});
  return out;
}

class Parser {
public:
  Parser(std::vector<Token> tokens, ParseOptions options)
    : tokens_(std::move(tokens)), options_(options)
  {
  }

  Formula parse()
  {
    Formula f = implication();
    if (peek().type != Tok::end)
      fail("unexpected '" + peek().text + "'");
    return f;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  bool peek_word(std::string_view w) const { return peek().type == Tok::word && peek().text == w; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const
  {
    throw syntax_error(peek().column, peek().type == Tok::end ? what + " at end of input" : what);
  }

  void expect(Tok type, std::string_view what)
  {
    if (peek().type != type)
      fail("expected " + std::string(what));
    ++pos_;
  }

  std::string agent_name()
  {
    if (peek().type != Tok::word || !is_valid_agent_name(peek().text))
      fail("expected agent name");
    return take().text;
  }

  Formula implication()
  {
    Formula lhs = disjunction();
    if (peek().type == Tok::arrow) {
      ++pos_;
      return Formula::implication(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction()
  {
    Formula lhs = conjunction();
    while (peek().type == Tok::bar) {
      ++pos_;
      lhs = Formula::disjunction(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction()
  {
    Formula lhs = until();
    while (peek().type == Tok::amp) {
      ++pos_;
      lhs = Formula::conjunction(std::move(lhs), until());
    }
    return lhs;
  }

  Formula until()
  {
    Formula lhs = unary();
    if (peek_word("U")) {
      ++pos_;
      return Formula::until(std::move(lhs), until());
    }
    return lhs;
  }

  Formula unary()
  {
    if (peek().type == Tok::bang) {
      ++pos_;
      return Formula::negation(unary());
    }
    if (peek_word("X")) {
      ++pos_;
      return Formula::next(unary());
    }
    if (peek_word("F")) {
      ++pos_;
      return Formula::eventually(unary());
    }
    if (peek_word("G")) {
      ++pos_;
      return Formula::always(unary());
    }
    return primary();
  }

  Formula primary()
  {
    if (peek().type == Tok::lparen) {
      ++pos_;
      Formula inner = implication();
      expect(Tok::rparen, "')'");
      return inner;
    }
    if (peek().type != Tok::word)
      fail(peek().type == Tok::end ? "expected formula" : "unexpected '" + peek().text + "'");

    const Token& w = peek();
    if (w.text == "true") {
      ++pos_;
      return Formula::top();
    }
    if (w.text == "false") {
      ++pos_;
      return Formula::bottom();
    }
    if (w.text == "B") {
      ++pos_;
      expect(Tok::lparen, "'(' after B");
      std::string a = agent_name();
      expect(Tok::rparen, "')'");
      return Formula::behaves(std::move(a));
    }
    if (w.text == "N") {
      ++pos_;
      expect(Tok::lparen, "'(' after N");
      std::string a = agent_name();
      expect(Tok::comma, "','");
      std::string b = agent_name();
      expect(Tok::rparen, "')'");
      return Formula::neighbor(std::move(a), std::move(b));
    }
    if (options_.allow_majority && (w.text == "MAJ" || w.text.starts_with("MAJ_"))) {
      unsigned horizon = 0;
      if (w.text != "MAJ") {
        std::string digits = w.text.substr(4);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                           [](unsigned char c) { return std::isdigit(c); }) ||
            digits.size() > 9)
          fail("malformed majority horizon '" + w.text + "'");
        horizon = static_cast<unsigned>(std::stoul(digits));
      }
      ++pos_;
      expect(Tok::lparen, "'(' after MAJ");
      std::string a = agent_name();
      expect(Tok::rparen, "')'");
      return Formula::majority(std::move(a), horizon);
    }
    fail("unknown operator '" + w.text + "'");
  }

  std::vector<Token> tokens_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

void render_into(const Formula& f, std::string& out)
{
  switch (f.kind()) {
  case Kind::top:
    out += "true";
    return;
  case Kind::behaves:
    out += "B(" + f.agent() + ")";
    return;
  case Kind::neighbor:
    out += "N(" + f.agent() + "," + f.other() + ")";
    return;
  case Kind::majority:
    out += f.horizon() == 0 ? "MAJ(" : "MAJ_" + std::to_string(f.horizon()) + "(";
    out += f.agent() + ")";
    return;
  case Kind::negation:
    out += "!";
    render_into(f.lhs(), out);
    return;
  case Kind::next:
    out += "X ";
    render_into(f.lhs(), out);
    return;
  case Kind::conjunction:
  case Kind::until:
    out += "(";
    render_into(f.lhs(), out);
    out += f.kind() == Kind::conjunction ? " & " : " U ";
    render_into(f.rhs(), out);
    out += ")";
    return;
  }
}

} // namespace

Formula parse_formula(std::string_view text, ParseOptions options)
{
  return Parser(lex(text), options).parse();
}

std::string render(const Formula& f)
{
  std::string out;
  render_into(f, out);
  return out;
}

std::vector<Formula> subformulas(const Formula& f)
{
  std::vector<Formula> order;
  std::unordered_set<Formula> seen;
  std::unordered_set<const void*> visited;

  // Post-order, so every child precedes its parent.
  auto visit = [&](auto&& self, const Formula& g) -> void {
    if (!visited.insert(g.id()).second)
      return;
    if (g.kind() == Kind::negation || g.kind() == Kind::next) {
      self(self, g.lhs());
    } else if (g.kind() == Kind::conjunction || g.kind() == Kind::until) {
      self(self, g.lhs());
      self(self, g.rhs());
    }
    if (seen.insert(g).second)
      order.push_back(g);
  };
  visit(visit, f);

  std::stable_sort(order.begin(), order.end(),
                   [](const Formula& a, const Formula& b) { return a.size() < b.size(); });
  return order;
}

std::vector<std::string> agents_in(const Formula& f)
{
  std::set<std::string> names;
  for (const Formula& g : subformulas(f)) {
    if (g.kind() == Kind::behaves || g.kind() == Kind::majority) {
      names.insert(g.agent());
    } else if (g.kind() == Kind::neighbor) {
      names.insert(g.agent());
      names.insert(g.other());
    }
  }
  return {names.begin(), names.end()};
}

} // namespace ltlsn
