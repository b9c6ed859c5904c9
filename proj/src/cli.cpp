#include "conprop/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "conprop/algorithms.hpp"
#include "conprop/errors.hpp"
#include "conprop/oracle.hpp"

namespace conprop::cli {

namespace {

enum class Tok { Ident, Int, LParen, RParen, LBrace, RBrace, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "name";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      out.push_back({Tok::Newline, "", line, col});
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    const std::size_t start_col = col;
    Tok kind;
    if (is_ident_start(c)) {
      while (i < text.size() && is_ident(text[i])) ++i;
      kind = Tok::Ident;
    } else if (is_digit(c) || ((c == '-' || c == '+') && i + 1 < text.size() && is_digit(text[i + 1]))) {
      ++i;
      while (i < text.size() && is_digit(text[i])) ++i;
      kind = Tok::Int;
    } else {
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        default: throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
      ++i;
    }
    col += i - start;
    out.push_back({kind, std::string(text.substr(start, i - start)), line, start_col});
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Csp parse() {
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Newline) {
        ++pos_;
        continue;
      }
      const Token& kw = expect(Tok::Ident);
      if (kw.text == "var") {
        parse_var();
      } else if (kw.text == "con") {
        parse_con();
      } else {
        throw ParseError(kw.line, kw.column, "expected 'var' or 'con', found '" + kw.text + "'");
      }
    }
    return std::move(csp_);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  const Token& expect(Tok kind) {
    const Token& t = tokens_[pos_];
    if (t.kind != kind) throw ParseError(t.line, t.column, std::string("expected ") + describe(kind) + ", found " + describe(t.kind));
    ++pos_;
    return t;
  }

  void skip_newlines() {
    while (peek().kind == Tok::Newline) ++pos_;
  }

  static Value to_value(const Token& t) {
    std::string_view s = t.text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    Value v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(t.line, t.column, "integer out of range: " + t.text);
    return v;
  }

  void parse_var() {
    const Token& name = expect(Tok::Ident);
    if (csp_.index_of(name.text)) throw ParseError(name.line, name.column, "duplicate variable '" + name.text + "'");
    std::vector<Value> values;
    while (peek().kind == Tok::Int) values.push_back(to_value(tokens_[pos_++]));
    if (peek().kind != Tok::Newline && peek().kind != Tok::End) {
      throw ParseError(peek().line, peek().column, std::string("expected integer or end of line, found ") + describe(peek().kind));
    }
    csp_.add_variable(name.text, std::move(values));
  }

  void parse_con() {
    skip_newlines();
    const Token& name = expect(Tok::Ident);
    skip_newlines();
    expect(Tok::LParen);
    std::vector<std::size_t> scope;
    for (skip_newlines(); peek().kind == Tok::Ident; skip_newlines()) {
      const Token& v = tokens_[pos_++];
      auto idx = csp_.index_of(v.text);
      if (!idx) throw ParseError(v.line, v.column, "undeclared variable '" + v.text + "'");
      if (std::find(scope.begin(), scope.end(), *idx) != scope.end()) {
        throw ParseError(v.line, v.column, "repeated variable '" + v.text + "' in scheme of '" + name.text + "'");
      }
      scope.push_back(*idx);
    }
    const Token& close = expect(Tok::RParen);
    if (scope.empty()) throw ParseError(close.line, close.column, "constraint '" + name.text + "' has an empty scheme");
    skip_newlines();
    expect(Tok::LBrace);

    std::vector<Tuple> tuples;
    for (skip_newlines(); peek().kind == Tok::LParen; skip_newlines()) {
      const Token& open = tokens_[pos_++];
      Tuple t;
      for (skip_newlines(); peek().kind == Tok::Int; skip_newlines()) {
        const Token& vt = tokens_[pos_++];
        const Value v = to_value(vt);
        if (t.size() < scope.size() && !contains(csp_.domain(scope[t.size()]), v)) {
          throw ParseError(vt.line, vt.column, "value " + vt.text + " outside the domain of '" + csp_.name(scope[t.size()]) + "'");
        }
        t.push_back(v);
      }
      expect(Tok::RParen);
      if (t.size() != scope.size()) {
        throw ParseError(open.line, open.column, "tuple has " + std::to_string(t.size()) + " values, scheme of '" + name.text + "' has " + std::to_string(scope.size()));
      }
      tuples.push_back(std::move(t));
    }
    expect(Tok::RBrace);
    csp_.add_constraint(name.text, scope, std::move(tuples));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Csp csp_;
};

void render_var(std::ostream& out, const std::string& name, const ValueSet& d) {
  out << "var " << name;
  for (Value v : d) out << ' ' << v;
  out << '\n';
}

}  // namespace

Csp parse_csp(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::string render_csp(const Csp& p) {
  std::ostringstream out;
  for (std::size_t v = 0; v < p.variable_count(); ++v) render_var(out, p.name(v), p.domain(v));
  for (const Constraint& c : p.constraints()) {
    out << "con " << c.name << " (";
    for (std::size_t k = 0; k < c.scope.size(); ++k) out << (k ? " " : "") << p.name(c.scope[k]);
    out << ") {";
    for (const Tuple& t : c.tuples) {
      out << " (";
      for (std::size_t k = 0; k < t.size(); ++k) out << (k ? " " : "") << t[k];
      out << ')';
    }
    out << " }\n";
  }
  return out.str();
}

std::string render_normalized(const NormalizedCsp& p) { return render_csp(p.to_csp()); }

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  if (name == "hyperarc") return Algorithm::HyperArc;
  if (name == "ac3") return Algorithm::Ac3;
  if (name == "path") return Algorithm::Path;
  if (name == "pc2") return Algorithm::Pc2;
  if (name == "darc") return Algorithm::Darc;
  if (name == "dac") return Algorithm::Dac;
  if (name == "dpath") return Algorithm::Dpath;
  if (name == "dpc") return Algorithm::Dpc;
  return std::nullopt;
}

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::HyperArc: return "hyperarc";
    case Algorithm::Ac3: return "ac3";
    case Algorithm::Path: return "path";
    case Algorithm::Pc2: return "pc2";
    case Algorithm::Darc: return "darc";
    case Algorithm::Dac: return "dac";
    case Algorithm::Dpath: return "dpath";
    case Algorithm::Dpc: return "dpc";
  }
  return "?";
}

bool is_directional(Algorithm a) { return a == Algorithm::Darc || a == Algorithm::Dac || a == Algorithm::Dpath || a == Algorithm::Dpc; }

bool is_path_based(Algorithm a) { return a == Algorithm::Path || a == Algorithm::Pc2 || a == Algorithm::Dpath || a == Algorithm::Dpc; }

std::optional<UpdateVariant> policy_from_name(std::string_view name) {
  if (name == "full") return UpdateVariant::Full;
  if (name == "idem") return UpdateVariant::IdempotentFiltered;
  if (name == "comm") return UpdateVariant::CommFiltered;
  if (name == "both") return UpdateVariant::Both;
  return std::nullopt;
}

int run(const RunConfig& config, std::string_view input, std::ostream& out, std::ostream& err) {
  Csp p;
  std::vector<std::size_t> order;
  try {
    p = parse_csp(input);
    if (is_directional(config.algorithm)) {
      if (!config.order) {
        err << "usage: --order is required for " << algorithm_name(config.algorithm) << '\n';
        return kUsage;
      }
      order = order_from_names(p.names(), *config.order);
    } else if (config.order) {
      order_from_names(p.names(), *config.order);
    }
    if (config.step_limit == 0) {
      err << "usage: --step-limit must be positive\n";
      return kUsage;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  AlgorithmOptions options;
  options.run.step_limit = config.step_limit;
  options.policy = config.policy;

  try {
    bool consistent = true;
    bool oracle_match = true;
    IterationTrace trace;
    if (!is_path_based(config.algorithm)) {
      AlgorithmResult<Csp> r;
      std::vector<ValueSet> expected;
      switch (config.algorithm) {
        case Algorithm::HyperArc: r = hyper_arc(p, options); break;
        case Algorithm::Ac3: r = ac3(p, options); break;
        case Algorithm::Darc: r = darc(p, order); break;
        case Algorithm::Dac: r = dac(p, order); break;
        default: break;
      }
      if (config.oracle_check) {
        expected = is_directional(config.algorithm) ? oracle::dir_arc_closure(p, order) : oracle::hyper_arc_closure(p);
        oracle_match = expected == r.csp.domains();
      }
      out << render_csp(r.csp);
      consistent = r.consistent_hint;
      trace = std::move(r.trace);
    } else {
      const NormalizedCsp n = normalize(p);
      AlgorithmResult<NormalizedCsp> r;
      switch (config.algorithm) {
        case Algorithm::Path: r = path(n, options); break;
        case Algorithm::Pc2: r = pc2(n, options); break;
        case Algorithm::Dpath: r = dpath(n, order); break;
        case Algorithm::Dpc: r = dpc(n, order); break;
        default: break;
      }
      if (config.oracle_check) {
        const auto expected = is_directional(config.algorithm) ? oracle::dir_path_closure(n, order) : oracle::path_closure(n);
        oracle_match = expected == r.csp.relations();
      }
      out << render_normalized(r.csp);
      consistent = r.consistent_hint;
      trace = std::move(r.trace);
    }

    if (config.trace) err << render_trace(trace);
    if (!verify_measure(trace)) {
      err << "internal error: termination measure did not decrease\n";
      return kInternal;
    }
    if (config.oracle_check) {
      err << "oracle: " << (oracle_match ? "MATCH" : "MISMATCH") << '\n';
      if (!oracle_match) return kInternal;
    }
    return consistent ? kConsistent : kEmptiness;
  } catch (const UnsupportedInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StepLimitExceeded& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constraint propagation by generic chaotic iteration", "conprop"};
  std::string algorithm;
  std::string order;
  std::string policy;
  std::string input = "-";
  RunConfig config;
  app.add_option("--algorithm", algorithm, "hyperarc | ac3 | path | pc2 | darc | dac | dpath | dpc")->required();
  app.add_option("--order", order, "variable order for directional algorithms, e.g. x,y,z");
  app.add_option("--policy", policy, "update policy: full | idem | comm | both");
  app.add_flag("--trace", config.trace, "print one line per iteration step to stderr");
  app.add_flag("--oracle", config.oracle_check, "cross-check against the brute-force oracle");
  app.add_option("--step-limit", config.step_limit, "maximum number of worklist steps");
  app.add_option("input", input, "CSP file, or - for standard input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kConsistent;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  }

  const auto alg = algorithm_from_name(algorithm);
  if (!alg) {
    err << "usage: unknown algorithm '" << algorithm << "'\n";
    return kUsage;
  }
  config.algorithm = *alg;
  if (!policy.empty()) {
    config.policy = policy_from_name(policy);
    if (!config.policy) {
      err << "usage: unknown policy '" << policy << "'\n";
      return kUsage;
    }
  }
  if (!order.empty()) {
    std::vector<std::string> names;
    std::stringstream ss(order);
    for (std::string part; std::getline(ss, part, ',');) {
      if (part.empty()) {
        err << "usage: malformed --order '" << order << "'\n";
        return kUsage;
      }
      names.push_back(part);
    }
    if (order.back() == ',') {
      err << "usage: malformed --order '" << order << "'\n";
      return kUsage;
    }
    config.order = std::move(names);
  }

  std::string text;
  if (input == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    std::ifstream file(input, std::ios::binary);
    if (!file) {
      err << "usage: cannot open '" << input << "'\n";
      return kUsage;
    }
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  }
  return run(config, text, out, err);
}

}  // namespace conprop::cli
