#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hotelbell/domain.hpp"
#include "hotelbell/error.hpp"
#include "hotelbell/partial_rv.hpp"

namespace hotelbell {

enum class ExprKind { Symbol, Neg, Sum, Diff, Prod };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over indexed observables such as a[0] or b[0.5].
class Expr {
 public:
  static ExprPtr symbol(std::string name, double index);
  static ExprPtr neg(ExprPtr child);
  static ExprPtr binary(ExprKind kind, ExprPtr left, ExprPtr right);

  ExprKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double index() const noexcept { return index_; }
  const ExprPtr& left() const noexcept { return left_; }
  const ExprPtr& right() const noexcept { return right_; }

 private:
  Expr(ExprKind kind, std::string name, double index, ExprPtr left, ExprPtr right);

  ExprKind kind_;
  std::string name_;
  double index_;
  ExprPtr left_;
  ExprPtr right_;
};

bool structurally_equal(const Expr& a, const Expr& b) noexcept;

/// Canonical text with minimal parentheses; parse(to_string(e)) rebuilds e.
/// Integral nonnegative indices print as `a0`, others as `a[0.5]`.
std::string to_string(const Expr& e);

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, std::string found);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// expr   := term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := '-' factor | '(' expr ')' | symbol
/// symbol := name digits | name '[' real ']'
ExprPtr parse(std::string_view text);

struct SymbolRule {
  std::string axis;
  std::function<DomainSet(double index)> domain;
};

/// Declared observable names. The default declares a[α] on axis x with
/// domain (α, α+1) and b[β] on axis y with domain (β, β+1).
class Environment {
 public:
  static Environment standard();

  void declare(std::string name, SymbolRule rule);
  const SymbolRule* find(const std::string& name) const;

 private:
  std::map<std::string, SymbolRule> rules_;
};

using AxisDomains = std::map<std::string, DomainSet>;

struct AxisConflict {
  std::string axis;
  DomainSet left;
  DomainSet right;
};

/// A node where some axis domain became empty although both operands had
/// nonempty domains on every axis.
struct EmptyOrigin {
  ExprPtr node;
  std::string text;  // as written in context, parenthesized if the parent needs it
  std::size_t depth = 0;
  std::vector<AxisConflict> conflicts;
};

enum class Verdict { Exists, Empty };

struct DomainReport {
  Verdict verdict = Verdict::Exists;
  AxisDomains axes;
  /// Deepest origin first, ties broken left to right; empty iff verdict is Exists.
  std::vector<EmptyOrigin> origins;

  const EmptyOrigin* culprit() const { return origins.empty() ? nullptr : &origins.front(); }
};

/// Bottom-up domain inference. Operands on different axes compose as a
/// function of both; operands sharing an axis intersect there.
DomainReport analyze(const ExprPtr& e, const Environment& env = Environment::standard());

/// "EXISTS on x:(0,1) × y:(0,1)" or one
/// "EMPTY at '(a0 + a1)': axis x: (0,1) ∩ (1,2) = ∅" line per conflict.
std::string format_report(const DomainReport& report);

/// Builds the partial random variable an expression denotes, resolving each
/// symbol through `lookup`. Propagates EmptyDomain and AxisMismatch from
/// combine.
PartialRV materialize(const Expr& e,
                      const std::function<PartialRV(const std::string&, double)>& lookup);

}  // namespace hotelbell
