#include "hotelbell/derivation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace hotelbell {

namespace {

int precedence(ExprKind kind) {
  switch (kind) {
    case ExprKind::Sum:
    case ExprKind::Diff: return 1;
    case ExprKind::Prod: return 2;
    case ExprKind::Neg: return 3;
    case ExprKind::Symbol: return 4;
  }
  return 4;
}

/// Whether `child` must be parenthesized as the given operand of `parent`
/// for the left-associative grammar to rebuild the same tree.
bool needs_parens(ExprKind parent, const Expr& child, bool is_right) {
  const int p = precedence(parent);
  const int c = precedence(child.kind());
  if (parent == ExprKind::Neg) return c < 3;
  return is_right ? c <= p : c < p;
}

std::string symbol_text(const Expr& e) {
  const double index = e.index();
  if (index >= 0.0 && index < 1e15 && std::floor(index) == index) {
    return e.name() + std::to_string(static_cast<long long>(index));
  }
  return e.name() + "[" + format_real(index) + "]";
}

const char* operator_text(ExprKind kind) {
  switch (kind) {
    case ExprKind::Sum: return " + ";
    case ExprKind::Diff: return " - ";
    case ExprKind::Prod: return " * ";
    default: return "";
  }
}

std::string wrap(const std::string& text, bool parens) {
  return parens ? "(" + text + ")" : text;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail({"'+'", "'-'", "'*'", "end of input"});
    return e;
  }

 private:
  ExprPtr expr() {
    ExprPtr left = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        left = Expr::binary(ExprKind::Sum, left, term());
      } else if (accept('-')) {
        left = Expr::binary(ExprKind::Diff, left, term());
      } else {
        return left;
      }
    }
  }

  ExprPtr term() {
    ExprPtr left = factor();
    for (;;) {
      skip_space();
      if (!accept('*')) return left;
      left = Expr::binary(ExprKind::Prod, left, factor());
    }
  }

  ExprPtr factor() {
    skip_space();
    if (accept('-')) return Expr::neg(factor());
    if (accept('(')) {
      ExprPtr inner = expr();
      skip_space();
      if (!accept(')')) fail({"'+'", "'-'", "'*'", "')'"});
      return inner;
    }
    if (pos_ < text_.size() && is_name_char(text_[pos_])) return symbol();
    fail({"'-'", "'('", "symbol"});
  }

  ExprPtr symbol() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && is_digit(text_[pos_])) {
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      return Expr::symbol(std::move(name), to_number(digits, pos_));
    }
    if (!accept('[')) fail({"digits", "'['"});
    skip_space();
    const std::size_t number = pos_;
    scan_real();
    if (pos_ == number) fail({"real number"});
    const double index = to_number(number, pos_);
    skip_space();
    if (!accept(']')) fail({"']'"});
    return Expr::symbol(std::move(name), index);
  }

  void scan_real() {
    auto digits = [this] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      return pos_ > from;
    };
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    bool mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa = digits() || mantissa;
    }
    if (!mantissa) {
      pos_ = start;
      return;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t exponent = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      if (!digits()) pos_ = exponent;
    }
  }

  double to_number(std::size_t from, std::size_t to) {
    std::size_t begin = from;
    if (text_[begin] == '+') ++begin;  // from_chars rejects a leading '+'
    double value = 0.0;
    auto [end, ec] = std::from_chars(text_.data() + begin, text_.data() + to, value);
    if (ec != std::errc() || end != text_.data() + to) {
      pos_ = from;
      fail({"real number"});
    }
    return value;
  }

  static bool is_name_char(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
  }
  static bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(pos_, std::move(expected), std::move(found));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct NodeDomains {
  AxisDomains axes;
  bool any_empty = false;
};

class Analyzer {
 public:
  explicit Analyzer(const Environment& env) : env_(env) {}

  NodeDomains visit(const ExprPtr& node, std::size_t depth, bool parenthesized) {
    switch (node->kind()) {
      case ExprKind::Symbol: {
        const SymbolRule* rule = env_.find(node->name());
        if (rule == nullptr) {
          throw Error(ErrorKind::UnknownSymbol, "'" + node->name() + "' is not declared");
        }
        NodeDomains out;
        DomainSet d = rule->domain(node->index());
        out.any_empty = d.empty();
        if (out.any_empty) {
          origins_.push_back(EmptyOrigin{node, symbol_text(*node), depth, {{rule->axis, d, d}}});
        }
        out.axes.emplace(rule->axis, std::move(d));
        return out;
      }
      case ExprKind::Neg:
        return visit(node->left(), depth + 1, needs_parens(ExprKind::Neg, *node->left(), false));
      default: break;
    }
    NodeDomains left =
        visit(node->left(), depth + 1, needs_parens(node->kind(), *node->left(), false));
    NodeDomains right =
        visit(node->right(), depth + 1, needs_parens(node->kind(), *node->right(), true));

    NodeDomains out;
    out.axes = left.axes;
    std::vector<AxisConflict> conflicts;
    for (const auto& [axis, domain] : right.axes) {
      auto it = out.axes.find(axis);
      if (it == out.axes.end()) {
        out.axes.emplace(axis, domain);
        continue;
      }
      DomainSet shared = intersect(it->second, domain);
      if (shared.empty() && !it->second.empty() && !domain.empty()) {
        conflicts.push_back(AxisConflict{axis, it->second, domain});
      }
      it->second = std::move(shared);
    }
    out.any_empty = left.any_empty || right.any_empty ||
                    std::any_of(out.axes.begin(), out.axes.end(),
                                [](const auto& entry) { return entry.second.empty(); });
    if (!left.any_empty && !right.any_empty && !conflicts.empty()) {
      origins_.push_back(
          EmptyOrigin{node, wrap(to_string(*node), parenthesized), depth, std::move(conflicts)});
    }
    return out;
  }

  std::vector<EmptyOrigin> take_origins() {
    // post-order already lists same-depth nodes left to right
    std::stable_sort(origins_.begin(), origins_.end(),
                     [](const EmptyOrigin& a, const EmptyOrigin& b) { return a.depth > b.depth; });
    return std::move(origins_);
  }

 private:
  const Environment& env_;
  std::vector<EmptyOrigin> origins_;
};

std::string join(const std::vector<std::string>& parts, const std::string& separator) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += separator;
    out += p;
  }
  return out;
}

std::string parse_error_message(std::size_t position, const std::vector<std::string>& expected,
                                const std::string& found) {
  return "at position " + std::to_string(position) + ": expected " + join(expected, ", ") +
         "; found " + found;
}

}  // namespace

Expr::Expr(ExprKind kind, std::string name, double index, ExprPtr left, ExprPtr right)
    : kind_(kind), name_(std::move(name)), index_(index), left_(std::move(left)), right_(std::move(right)) {}

ExprPtr Expr::symbol(std::string name, double index) {
  return ExprPtr(new Expr(ExprKind::Symbol, std::move(name), index, nullptr, nullptr));
}

ExprPtr Expr::neg(ExprPtr child) {
  return ExprPtr(new Expr(ExprKind::Neg, {}, 0.0, std::move(child), nullptr));
}

ExprPtr Expr::binary(ExprKind kind, ExprPtr left, ExprPtr right) {
  return ExprPtr(new Expr(kind, {}, 0.0, std::move(left), std::move(right)));
}

bool structurally_equal(const Expr& a, const Expr& b) noexcept {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Symbol: return a.name() == b.name() && a.index() == b.index();
    case ExprKind::Neg: return structurally_equal(*a.left(), *b.left());
    default:
      return structurally_equal(*a.left(), *b.left()) && structurally_equal(*a.right(), *b.right());
  }
}

std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Symbol: return symbol_text(e);
    case ExprKind::Neg:
      return "-" + wrap(to_string(*e.left()), needs_parens(ExprKind::Neg, *e.left(), false));
    default:
      return wrap(to_string(*e.left()), needs_parens(e.kind(), *e.left(), false)) +
             operator_text(e.kind()) +
             wrap(to_string(*e.right()), needs_parens(e.kind(), *e.right(), true));
  }
}

ParseError::ParseError(std::size_t position, std::vector<std::string> expected, std::string found)
    : Error(ErrorKind::SyntaxError, parse_error_message(position, expected, found)),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ExprPtr parse(std::string_view text) { return Parser(text).parse_all(); }

Environment Environment::standard() {
  Environment env;
  auto unit_room_range = [](double index) { return DomainSet(Interval{index, index + 1.0}); };
  env.declare("a", SymbolRule{"x", unit_room_range});
  env.declare("b", SymbolRule{"y", unit_room_range});
  return env;
}

void Environment::declare(std::string name, SymbolRule rule) {
  rules_.insert_or_assign(std::move(name), std::move(rule));
}

const SymbolRule* Environment::find(const std::string& name) const {
  auto it = rules_.find(name);
  return it == rules_.end() ? nullptr : &it->second;
}

DomainReport analyze(const ExprPtr& e, const Environment& env) {
  Analyzer analyzer(env);
  NodeDomains result = analyzer.visit(e, 0, false);

  DomainReport report;
  report.axes = std::move(result.axes);
  report.origins = analyzer.take_origins();
  report.verdict = result.any_empty ? Verdict::Empty : Verdict::Exists;
  return report;
}

std::string format_report(const DomainReport& report) {
  if (report.verdict == Verdict::Exists) {
    std::vector<std::string> axes;
    for (const auto& [axis, domain] : report.axes) axes.push_back(axis + ":" + to_string(domain));
    return "EXISTS on " + join(axes, " × ");
  }
  std::vector<std::string> lines;
  for (const EmptyOrigin& origin : report.origins) {
    for (const AxisConflict& c : origin.conflicts) {
      std::string line = "EMPTY at '" + origin.text + "': axis " + c.axis + ": ";
      if (origin.node->kind() == ExprKind::Symbol) {
        line += "∅";
      } else {
        line += to_string(c.left) + " ∩ " + to_string(c.right) + " = ∅";
      }
      lines.push_back(std::move(line));
    }
  }
  return join(lines, "\n");
}

PartialRV materialize(const Expr& e,
                      const std::function<PartialRV(const std::string&, double)>& lookup) {
  switch (e.kind()) {
    case ExprKind::Symbol: return lookup(e.name(), e.index());
    case ExprKind::Neg: return negate(materialize(*e.left(), lookup));
    case ExprKind::Sum:
      return combine(materialize(*e.left(), lookup), materialize(*e.right(), lookup), CombineOp::Sum);
    case ExprKind::Diff:
      return combine(materialize(*e.left(), lookup), materialize(*e.right(), lookup),
                     CombineOp::Difference);
    case ExprKind::Prod:
      return combine(materialize(*e.left(), lookup), materialize(*e.right(), lookup),
                     CombineOp::Product);
  }
  throw Error(ErrorKind::SyntaxError, "unknown expression node");
}

}  // namespace hotelbell
