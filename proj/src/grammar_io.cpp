#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "foldlang/error.hpp"
#include "foldlang/linear_grammar.hpp"

namespace foldlang {

namespace {

struct Token {
  std::string text;
  std::size_t offset;
};

struct Line {
  std::vector<Token> tokens;
  std::size_t offset;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    Line line{{}, pos};
    std::size_t i = pos;
    while (i < end) {
      while (i < end && is_space(text[i])) ++i;
      if (i >= end) break;
      std::size_t start = i;
      while (i < end && !is_space(text[i])) ++i;
      line.tokens.push_back({std::string(text.substr(start, i - start)), start});
    }
    bool comment = !line.tokens.empty() && line.tokens.front().text.front() == '#';
    if (!line.tokens.empty() && !comment) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

bool is_quoted_terminal(std::string_view token) {
  return token.size() == 3 && token.front() == '\'' && token.back() == '\'';
}

bool needs_quotes(char c) { return c == '|' || c == '-' || c == '#' || c == '\''; }

void check_nonterminal_name(const Token& t) {
  if (t.text == "eps" || t.text == "|" || t.text == "->" || t.text.find('\'') != std::string::npos) {
    throw ParseError("invalid nonterminal name '" + t.text + "'", t.offset);
  }
}

class GrammarBuilder {
 public:
  LinearGrammar grammar;

  std::size_t declare(const std::string& name) {
    auto [it, inserted] = ids_.emplace(name, grammar.nonterminals.size());
    if (inserted) grammar.nonterminals.push_back(name);
    return it->second;
  }

  bool is_declared(const std::string& name) const { return ids_.contains(name); }

  void add_terminal(char c) { terminals_.push_back(c); }

  LinearGrammar finish() {
    grammar.terminals = Alphabet(terminals_);
    return std::move(grammar);
  }

 private:
  std::unordered_map<std::string, std::size_t> ids_;
  std::string terminals_;
};

}  // namespace

LinearGrammar parse_grammar(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("missing 'start <Name>' line", 0);

  const auto& header = lines.front();
  if (header.tokens.size() != 2 || header.tokens[0].text != "start") {
    throw ParseError("first line must be 'start <Name>'", header.offset);
  }
  check_nonterminal_name(header.tokens[1]);

  GrammarBuilder builder;
  builder.grammar.start = builder.declare(header.tokens[1].text);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& tokens = lines[i].tokens;
    if (tokens[0].text == "start") throw ParseError("duplicate start line", lines[i].offset);
    if (tokens.size() < 2 || tokens[1].text != "->") {
      throw ParseError("expected '<Name> -> ...'", lines[i].offset);
    }
    if (tokens.size() == 2) throw ParseError("empty right-hand side (use eps)", tokens[1].offset);
    check_nonterminal_name(tokens[0]);
    builder.declare(tokens[0].text);
  }

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& tokens = lines[i].tokens;
    const std::size_t lhs = builder.declare(tokens[0].text);
    std::vector<std::vector<const Token*>> alternatives(1);
    for (std::size_t t = 2; t < tokens.size(); ++t) {
      if (tokens[t].text == "|") {
        alternatives.emplace_back();
      } else {
        alternatives.back().push_back(&tokens[t]);
      }
    }
    for (const auto& alt : alternatives) {
      if (alt.empty()) throw ParseError("empty alternative (use eps)", lines[i].offset);
      LinearGrammar::Rule rule{lhs, "", std::nullopt, ""};
      if (alt.size() == 1 && alt[0]->text == "eps") {
        builder.grammar.rules.push_back(rule);
        continue;
      }
      for (const Token* tok : alt) {
        char terminal = 0;
        if (is_quoted_terminal(tok->text)) {
          terminal = tok->text[1];
        } else if (builder.is_declared(tok->text)) {
          if (rule.middle) {
            throw NotLinear("rule for '" + tokens[0].text +
                            "' has more than one nonterminal on the right-hand side");
          }
          rule.middle = builder.declare(tok->text);
          continue;
        } else if (tok->text == "eps") {
          throw ParseError("'eps' must stand alone", tok->offset);
        } else if (tok->text.size() == 1) {
          terminal = tok->text[0];
          if (needs_quotes(terminal)) {
            throw ParseError("terminal '" + tok->text + "' must be quoted", tok->offset);
          }
        } else {
          throw ParseError("'" + tok->text + "' is neither a nonterminal nor a single-character terminal",
                           tok->offset);
        }
        if (!is_valid_symbol(terminal)) throw ParseError("invalid terminal symbol", tok->offset);
        builder.add_terminal(terminal);
        (rule.middle ? rule.right : rule.left).push_back(terminal);
      }
      builder.grammar.rules.push_back(std::move(rule));
    }
  }
  return builder.finish();
}

std::string to_text(const LinearGrammar& g) {
  g.validate();
  const std::size_t n = g.nonterminals.size();

  // Nonterminals that will appear as a left-hand side (or the start line).
  std::vector<bool> written(n, false);
  written[g.start] = true;
  std::vector<bool> printable(g.rules.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
      const auto& r = g.rules[i];
      if (printable[i] || (r.middle && !written[*r.middle])) continue;
      printable[i] = true;
      changed = true;
      written[r.lhs] = true;
    }
  }
  std::unordered_set<std::string> names(g.nonterminals.begin(), g.nonterminals.end());
  auto terminal_token = [&](char c) {
    std::string token(1, c);
    if (needs_quotes(c) || names.contains(token)) return "'" + token + "'";
    return token;
  };

  std::ostringstream out;
  out << "start " << g.nonterminals[g.start] << '\n';
  std::size_t omitted = 0;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::string> alternatives;
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
      const auto& r = g.rules[i];
      if (r.lhs != a) continue;
      if (!printable[i]) {
        ++omitted;
        continue;
      }
      std::vector<std::string> tokens;
      for (char c : r.left) tokens.push_back(terminal_token(c));
      if (r.middle) tokens.push_back(g.nonterminals[*r.middle]);
      for (char c : r.right) tokens.push_back(terminal_token(c));
      std::string alt;
      for (const auto& t : tokens) alt += (alt.empty() ? "" : " ") + t;
      alternatives.push_back(tokens.empty() ? "eps" : alt);
    }
    if (alternatives.empty()) continue;
    out << g.nonterminals[a] << " ->";
    for (std::size_t i = 0; i < alternatives.size(); ++i) {
      out << (i == 0 ? " " : " | ") << alternatives[i];
    }
    out << '\n';
  }
  if (omitted > 0) {
    out << "# omitted " << omitted << " rule(s) referencing nonterminals without rules\n";
  }
  return out.str();
}

std::string to_json(const LinearGrammar& g, int indent) {
  g.validate();
  nlohmann::ordered_json rules = nlohmann::ordered_json::array();
  for (const auto& r : g.rules) {
    nlohmann::ordered_json rhs = nlohmann::ordered_json::array();
    for (char c : r.left) rhs.push_back({{"kind", "T"}, {"value", std::string(1, c)}});
    if (r.middle) rhs.push_back({{"kind", "N"}, {"value", g.nonterminals[*r.middle]}});
    for (char c : r.right) rhs.push_back({{"kind", "T"}, {"value", std::string(1, c)}});
    rules.push_back({{"lhs", g.nonterminals[r.lhs]}, {"rhs", std::move(rhs)}});
  }
  nlohmann::ordered_json doc = {{"start", g.nonterminals[g.start]}, {"rules", std::move(rules)}};
  return doc.dump(indent);
}

LinearGrammar grammar_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  try {
    GrammarBuilder builder;
    builder.grammar.start = builder.declare(doc.at("start").get<std::string>());
    for (const auto& r : doc.at("rules")) builder.declare(r.at("lhs").get<std::string>());
    for (const auto& r : doc.at("rules")) {
      LinearGrammar::Rule rule{builder.declare(r.at("lhs").get<std::string>()), "", std::nullopt, ""};
      for (const auto& item : r.at("rhs")) {
        const auto kind = item.at("kind").get<std::string>();
        const auto value = item.at("value").get<std::string>();
        if (kind == "N") {
          if (rule.middle) throw NotLinear("rule has more than one nonterminal");
          rule.middle = builder.declare(value);
        } else if (kind == "T") {
          if (value.size() != 1 || !is_valid_symbol(value[0])) {
            throw ParseError("terminal value must be one printable character", 0);
          }
          builder.add_terminal(value[0]);
          (rule.middle ? rule.right : rule.left).push_back(value[0]);
        } else {
          throw ParseError("rhs kind must be \"T\" or \"N\"", 0);
        }
      }
      builder.grammar.rules.push_back(std::move(rule));
    }
    return builder.finish();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace foldlang
