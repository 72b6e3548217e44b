#pragma once

#include "coiso/linfty.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coiso {

struct SourcePos {
    int line = 0;
    int col = 0;
};

/// Parse failure carrying the position; what() reads `line:col: message`.
class ParseError : public Error {
  public:
    ParseError(SourcePos pos, const std::string &message);
    SourcePos pos() const { return pos_; }

  private:
    SourcePos pos_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Number,       // rational literal
        Pi,
        ImaginaryUnit,
        Name,         // binding reference
        Coordinate,
        Vector,       // @x
        Differential, // dx
        Negate,
        Add,
        Subtract,
        Multiply,
        Divide,
        Power,
        Wedge,
        Call,
        Tuple,
    };
    Kind kind;
    SourcePos pos;
    mpq_class number;
    std::string text; // names, coordinates, function names
    std::vector<ExprPtr> args;

    /// Fully parenthesised source text.
    std::string render() const;
    /// Structural equality, ignoring positions.
    friend bool operator==(const Expr &a, const Expr &b);
};

struct ChartDecl {
    std::vector<BaseCoordinate> base;
    std::vector<std::string> fibre;
    std::optional<mpq_class> domain;
    SourcePos pos;

    Chart build() const;
    friend bool operator==(const ChartDecl &a, const ChartDecl &b) {
        return a.base == b.base && a.fibre == b.fibre && a.domain == b.domain;
    }
};

struct Binding {
    std::string name;
    ExprPtr value;
    SourcePos pos;
};

struct CheckDirective {
    std::string kind; // coisotropic, mc, kuranishi, jacobi, omega_le, pencil
    std::string target;
    std::optional<int> parameter;
    SourcePos pos;

    std::string label() const;
};

struct Scenario {
    std::optional<ChartDecl> chart;
    std::vector<Binding> bindings;
    std::vector<CheckDirective> checks;

    std::string render() const;
    friend bool operator==(const Scenario &a, const Scenario &b);
};

/// Grammar, one statement per line, `#` starts a comment:
///   chart base=(y1*, q1*, x) fibre=(p1) [domain=1/2]     (* marks periodic)
///   name = expr
///   check coisotropic a | mc a [N] | kuranishi a | jacobi b | omega_le w k | pencil file N
/// Expressions: rationals and decimals, pi, I, coordinates, binding names,
/// @x, dx, + - * / ^ /\, sin, cos, inv_form(w), gotay(w, q1, ...), tuples.
/// The binding named `pi` is the Poisson structure used by the checks;
/// inside expressions `pi` is always the number.
Scenario parse_scenario(const std::string &text);

struct RunOptions {
    int truncation = 6;
    int samples = 32;
    std::uint64_t seed = 0;
    bool strict = false;
    bool timing = false;
    std::filesystem::path base_dir = ".";
};

enum class CheckStatus { Pass, Fail, Inconclusive, Error };
const char *to_string(CheckStatus s);

struct CheckResult {
    std::string check;
    std::string target;
    CheckStatus status = CheckStatus::Error;
    /// Exact rendered values in insertion order.
    std::vector<std::pair<std::string, std::string>> values;
    std::vector<std::pair<std::string, double>> numbers;
    std::optional<ConvergenceTable> table;
    std::string message;
    double seconds = 0.0;
};

struct RunReport {
    RunOptions options;
    std::vector<CheckResult> checks;

    /// 0 all pass, 1 a check failed (or was inconclusive under --strict), 3 a
    /// check raised a runtime error.
    int exit_code() const;
};

RunReport run_scenario(const Scenario &scenario, const RunOptions &options);

enum class ReportFormat { Text, Json, Csv };
std::string emit_report(const RunReport &report, ReportFormat format);

} // namespace coiso
