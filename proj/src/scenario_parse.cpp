#include "coiso/scenario.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace coiso {

ParseError::ParseError(SourcePos pos, const std::string &message)
    : Error(ErrorCode::Parse, std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + message), pos_(pos) {}

namespace {

enum class Tok { Ident, Number, At, Op, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

std::vector<Token> lex(const std::string &line, int line_no, bool lenient = false) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto pos = [&](std::size_t c) { return SourcePos{line_no, static_cast<int>(c) + 1}; };
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, line.substr(i, j - i), pos(i)});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < line.size() &&
                                                                   std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
            std::size_t j = i;
            bool dot = false;
            while (j < line.size() && (std::isdigit(static_cast<unsigned char>(line[j])) || (line[j] == '.' && !dot))) {
                dot = dot || line[j] == '.';
                ++j;
            }
            out.push_back({Tok::Number, line.substr(i, j - i), pos(i)});
            i = j;
        } else if (c == '@') {
            out.push_back({Tok::At, "@", pos(i)});
            ++i;
        } else if (c == '/' && i + 1 < line.size() && line[i + 1] == '\\') {
            out.push_back({Tok::Op, "/\\", pos(i)});
            i += 2;
        } else if (std::string("+-*/^=(),").find(c) != std::string::npos) {
            out.push_back({Tok::Op, std::string(1, c), pos(i)});
            ++i;
        } else if (lenient) {
            ++i;
        } else {
            throw ParseError(pos(i), std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", pos(line.size())});
    return out;
}

mpq_class parse_decimal(const std::string &text) {
    auto dot = text.find('.');
    if (dot == std::string::npos)
        return mpq_class(mpz_class(text, 10));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty())
        digits = "0";
    mpz_class den = 1;
    for (std::size_t k = dot + 1; k < text.size(); ++k)
        den *= 10;
    mpq_class q(mpz_class(digits, 10), den);
    q.canonicalize();
    return q;
}

const std::set<std::string> kFunctions = {"sin", "cos", "inv_form", "gotay"};
const std::set<std::string> kReserved = {"sin", "cos", "inv_form", "gotay", "I", "chart", "check"};

class LineParser {
  public:
    LineParser(std::vector<Token> tokens, const ChartDecl *chart, const std::set<std::string> &bound)
        : toks_(std::move(tokens)), chart_(chart), bound_(bound) {}

    const Token &peek() const { return toks_[at_]; }
    Token next() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }
    bool accept(const std::string &op) {
        if (peek().kind == Tok::Op && peek().text == op) {
            ++at_;
            return true;
        }
        return false;
    }
    void expect(const std::string &op) {
        if (!accept(op))
            throw ParseError(peek().pos, "expected '" + op + "'" + found());
    }
    std::string found() const {
        return peek().kind == Tok::End ? " at end of line" : " before '" + peek().text + "'";
    }
    Token expect_ident(const std::string &what) {
        if (peek().kind != Tok::Ident)
            throw ParseError(peek().pos, "expected " + what + found());
        return next();
    }
    void expect_end() {
        if (peek().kind != Tok::End)
            throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
    }

    ExprPtr expression() {
        ExprPtr lhs = term();
        for (;;) {
            SourcePos p = peek().pos;
            if (accept("+"))
                lhs = binary(Expr::Kind::Add, p, lhs, term());
            else if (accept("-"))
                lhs = binary(Expr::Kind::Subtract, p, lhs, term());
            else
                return lhs;
        }
    }

  private:
    static ExprPtr binary(Expr::Kind k, SourcePos p, ExprPtr a, ExprPtr b) {
        return std::make_shared<Expr>(Expr{k, p, 0, "", {std::move(a), std::move(b)}});
    }

    ExprPtr term() {
        ExprPtr lhs = wedge();
        for (;;) {
            SourcePos p = peek().pos;
            if (accept("*"))
                lhs = binary(Expr::Kind::Multiply, p, lhs, wedge());
            else if (accept("/"))
                lhs = binary(Expr::Kind::Divide, p, lhs, wedge());
            else
                return lhs;
        }
    }

    ExprPtr wedge() {
        ExprPtr lhs = unary();
        for (;;) {
            SourcePos p = peek().pos;
            if (accept("/\\"))
                lhs = binary(Expr::Kind::Wedge, p, lhs, unary());
            else
                return lhs;
        }
    }

    ExprPtr unary() {
        SourcePos p = peek().pos;
        if (accept("-"))
            return std::make_shared<Expr>(Expr{Expr::Kind::Negate, p, 0, "", {unary()}});
        ExprPtr base = primary();
        SourcePos q = peek().pos;
        if (accept("^"))
            return binary(Expr::Kind::Power, q, base, primary());
        return base;
    }

    ExprPtr coordinate_node(Expr::Kind k, const Token &t, const std::string &name) {
        if (!chart_ || !has_coordinate(name))
            throw ParseError(t.pos, "unknown coordinate '" + name + "'");
        return std::make_shared<Expr>(Expr{k, t.pos, 0, name, {}});
    }

    bool has_coordinate(const std::string &name) const {
        if (!chart_)
            return false;
        for (const auto &b : chart_->base)
            if (b.name == name)
                return true;
        for (const auto &f : chart_->fibre)
            if (f == name)
                return true;
        return false;
    }

    bool is_base_coordinate(const std::string &name) const {
        for (const auto &b : chart_->base)
            if (b.name == name)
                return true;
        return false;
    }

    ExprPtr primary() {
        Token t = next();
        switch (t.kind) {
        case Tok::Number:
            return std::make_shared<Expr>(Expr{Expr::Kind::Number, t.pos, parse_decimal(t.text), "", {}});
        case Tok::At: {
            Token n = expect_ident("coordinate after '@'");
            return coordinate_node(Expr::Kind::Vector, n, n.text);
        }
        case Tok::Op:
            if (t.text == "(") {
                std::vector<ExprPtr> items{expression()};
                while (accept(","))
                    items.push_back(expression());
                expect(")");
                if (items.size() == 1)
                    return items.front();
                return std::make_shared<Expr>(Expr{Expr::Kind::Tuple, t.pos, 0, "", std::move(items)});
            }
            throw ParseError(t.pos, "expected an expression before '" + t.text + "'");
        case Tok::End:
            throw ParseError(t.pos, "expected an expression at end of line");
        case Tok::Ident:
            break;
        }
        const std::string &name = t.text;
        if (kFunctions.count(name) && peek().kind == Tok::Op && peek().text == "(")
            return call(t);
        if (name == "pi")
            return std::make_shared<Expr>(Expr{Expr::Kind::Pi, t.pos, 0, "", {}});
        if (name == "I")
            return std::make_shared<Expr>(Expr{Expr::Kind::ImaginaryUnit, t.pos, 0, "", {}});
        if (bound_.count(name))
            return std::make_shared<Expr>(Expr{Expr::Kind::Name, t.pos, 0, name, {}});
        if (has_coordinate(name))
            return std::make_shared<Expr>(Expr{Expr::Kind::Coordinate, t.pos, 0, name, {}});
        if (name.size() > 1 && name.front() == 'd' && has_coordinate(name.substr(1)))
            return std::make_shared<Expr>(Expr{Expr::Kind::Differential, t.pos, 0, name.substr(1), {}});
        throw ParseError(t.pos, "undefined name '" + name + "'");
    }

    ExprPtr call(const Token &fn) {
        expect("(");
        std::vector<ExprPtr> args{expression()};
        while (accept(","))
            args.push_back(expression());
        SourcePos close = peek().pos;
        expect(")");
        std::size_t want = fn.text == "gotay" ? 2 : 1;
        if (fn.text == "gotay" ? args.size() < want : args.size() != want)
            throw ParseError(close, fn.text + " takes " + (fn.text == "gotay" ? "a form and kernel coordinates"
                                                                              : "one argument"));
        if (fn.text == "gotay")
            for (std::size_t k = 1; k < args.size(); ++k)
                if (args[k]->kind != Expr::Kind::Coordinate || !is_base_coordinate(args[k]->text))
                    throw ParseError(args[k]->pos, "gotay kernel directions must be base coordinates");
        return std::make_shared<Expr>(Expr{Expr::Kind::Call, fn.pos, 0, fn.text, std::move(args)});
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
    const ChartDecl *chart_;
    const std::set<std::string> &bound_;
};

std::string strip_comment(const std::string &line) {
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

ChartDecl parse_chart(LineParser &p, SourcePos pos) {
    ChartDecl decl;
    decl.pos = pos;
    std::set<std::string> seen;
    auto names = [&](bool base) {
        p.expect("(");
        if (p.accept(")"))
            return;
        do {
            Token n = p.expect_ident("coordinate name");
            if (kReserved.count(n.text) || n.text == "pi")
                throw ParseError(n.pos, "'" + n.text + "' cannot be a coordinate name");
            if (!seen.insert(n.text).second)
                throw ParseError(n.pos, "duplicate coordinate '" + n.text + "'");
            bool periodic = p.accept("*");
            if (periodic && !base)
                throw ParseError(n.pos, "fibre coordinates cannot be periodic");
            if (base)
                decl.base.push_back({n.text, periodic});
            else
                decl.fibre.push_back(n.text);
        } while (p.accept(","));
        p.expect(")");
    };
    Token kw = p.expect_ident("'base='");
    if (kw.text != "base")
        throw ParseError(kw.pos, "expected 'base='");
    p.expect("=");
    names(true);
    kw = p.expect_ident("'fibre='");
    if (kw.text != "fibre")
        throw ParseError(kw.pos, "expected 'fibre='");
    p.expect("=");
    names(false);
    if (p.peek().kind == Tok::Ident) {
        kw = p.next();
        if (kw.text != "domain")
            throw ParseError(kw.pos, "expected 'domain='");
        p.expect("=");
        Token num = p.next();
        if (num.kind != Tok::Number)
            throw ParseError(num.pos, "expected a positive number");
        mpq_class q = parse_decimal(num.text);
        if (p.accept("/")) {
            Token den = p.next();
            if (den.kind != Tok::Number || parse_decimal(den.text) == 0)
                throw ParseError(den.pos, "expected a nonzero denominator");
            q /= parse_decimal(den.text);
        }
        if (q <= 0)
            throw ParseError(num.pos, "domain bound must be positive");
        decl.domain = q;
    }
    p.expect_end();
    return decl;
}

std::string decimal_string(const mpq_class &q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    mpz_class num = q.get_num(), den = q.get_den();
    int digits = 0;
    while (num % den != 0 && digits < 64) {
        num *= 10;
        ++digits;
    }
    if (num % den != 0)
        return "(" + q.get_num().get_str() + " / " + q.get_den().get_str() + ")";
    std::string s = mpz_class(num / den).get_str();
    if (static_cast<int>(s.size()) <= digits)
        s = std::string(static_cast<std::size_t>(digits) - s.size() + 1, '0') + s;
    return s.substr(0, s.size() - static_cast<std::size_t>(digits)) + "." + s.substr(s.size() - static_cast<std::size_t>(digits));
}

} // namespace

std::string Expr::render() const {
    auto bin = [&](const char *op) { return "(" + args[0]->render() + " " + op + " " + args[1]->render() + ")"; };
    switch (kind) {
    case Kind::Number:
        return decimal_string(number);
    case Kind::Pi:
        return "pi";
    case Kind::ImaginaryUnit:
        return "I";
    case Kind::Name:
    case Kind::Coordinate:
        return text;
    case Kind::Vector:
        return "@" + text;
    case Kind::Differential:
        return "d" + text;
    case Kind::Negate:
        return "(-" + args[0]->render() + ")";
    case Kind::Add:
        return bin("+");
    case Kind::Subtract:
        return bin("-");
    case Kind::Multiply:
        return bin("*");
    case Kind::Divide:
        return bin("/");
    case Kind::Power:
        return bin("^");
    case Kind::Wedge:
        return bin("/\\");
    case Kind::Call:
    case Kind::Tuple: {
        std::string out = kind == Kind::Call ? text + "(" : "(";
        for (std::size_t k = 0; k < args.size(); ++k)
            out += (k ? ", " : "") + args[k]->render();
        return out + ")";
    }
    }
    return "";
}

bool operator==(const Expr &a, const Expr &b) {
    if (a.kind != b.kind || a.number != b.number || a.text != b.text || a.args.size() != b.args.size())
        return false;
    for (std::size_t k = 0; k < a.args.size(); ++k)
        if (!(*a.args[k] == *b.args[k]))
            return false;
    return true;
}

Chart ChartDecl::build() const {
    std::optional<double> bound;
    if (domain)
        bound = domain->get_d();
    return make_chart(base, fibre, bound);
}

std::string CheckDirective::label() const {
    std::string out = kind + " " + target;
    if (parameter)
        out += " " + std::to_string(*parameter);
    return out;
}

std::string Scenario::render() const {
    std::string out;
    if (chart) {
        out += "chart base=(";
        for (std::size_t k = 0; k < chart->base.size(); ++k)
            out += (k ? ", " : "") + chart->base[k].name + (chart->base[k].periodic ? "*" : "");
        out += ") fibre=(";
        for (std::size_t k = 0; k < chart->fibre.size(); ++k)
            out += (k ? ", " : "") + chart->fibre[k];
        out += ")";
        if (chart->domain)
            out += " domain=" + chart->domain->get_str();
        out += "\n";
    }
    for (const auto &b : bindings)
        out += b.name + " = " + b.value->render() + "\n";
    for (const auto &c : checks)
        out += "check " + c.label() + "\n";
    return out;
}

bool operator==(const Scenario &a, const Scenario &b) {
    if (a.chart != b.chart || a.bindings.size() != b.bindings.size() || a.checks.size() != b.checks.size())
        return false;
    for (std::size_t k = 0; k < a.bindings.size(); ++k)
        if (a.bindings[k].name != b.bindings[k].name || !(*a.bindings[k].value == *b.bindings[k].value))
            return false;
    for (std::size_t k = 0; k < a.checks.size(); ++k)
        if (a.checks[k].kind != b.checks[k].kind || a.checks[k].target != b.checks[k].target ||
            a.checks[k].parameter != b.checks[k].parameter)
            return false;
    return true;
}

Scenario parse_scenario(const std::string &text) {
    Scenario scenario;
    std::set<std::string> bound;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_comment(raw);
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto tokens = lex(line, line_no, true);
        bool pencil = tokens.size() > 2 && tokens[0].text == "check" && tokens[1].text == "pencil";
        if (!pencil)
            tokens = lex(line, line_no);
        if (tokens.front().kind == Tok::End)
            continue;
        const Token first = tokens.front();
        const ChartDecl *chart = scenario.chart ? &*scenario.chart : nullptr;

        if (first.kind == Tok::Ident && first.text == "chart") {
            if (scenario.chart)
                throw ParseError(first.pos, "a scenario has a single chart");
            if (!scenario.bindings.empty() || !scenario.checks.empty())
                throw ParseError(first.pos, "the chart must come first");
            LineParser p(std::vector<Token>(tokens.begin() + 1, tokens.end()), nullptr, bound);
            scenario.chart = parse_chart(p, first.pos);
            continue;
        }

        if (first.kind == Tok::Ident && first.text == "check") {
            LineParser p(std::vector<Token>(tokens.begin() + 1, tokens.end()), chart, bound);
            CheckDirective c;
            c.pos = first.pos;
            Token kind = p.expect_ident("check kind");
            c.kind = kind.text;
            static const std::set<std::string> kinds = {"coisotropic", "mc",      "kuranishi",
                                                        "jacobi",      "omega_le", "pencil"};
            if (!kinds.count(c.kind))
                throw ParseError(kind.pos, "unknown check '" + c.kind + "'");
            if (c.kind == "pencil") {
                // the path is taken verbatim up to the order
                auto rest = line.substr(static_cast<std::size_t>(kind.pos.col - 1) + kind.text.size());
                std::istringstream words(rest);
                std::string path, order, extra;
                words >> path >> order;
                if (path.empty())
                    throw ParseError(p.peek().pos, "expected a pencil file path");
                if (order.empty() || order.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError({line_no, static_cast<int>(line.size()) + 1}, "expected a truncation order");
                if (words >> extra)
                    throw ParseError({line_no, static_cast<int>(line.rfind(extra)) + 1}, "unexpected '" + extra + "'");
                c.target = path;
                c.parameter = std::stoi(order);
                scenario.checks.push_back(c);
                continue;
            }
            if (!scenario.chart)
                throw ParseError(first.pos, "check before the chart");
            Token target = p.expect_ident("binding name");
            if (!bound.count(target.text))
                throw ParseError(target.pos, "undefined name '" + target.text + "'");
            c.target = target.text;
            if (p.peek().kind == Tok::Number) {
                Token n = p.next();
                if (n.text.find('.') != std::string::npos)
                    throw ParseError(n.pos, "expected an integer");
                c.parameter = std::stoi(n.text);
            }
            p.expect_end();
            if (c.kind == "omega_le" && !c.parameter)
                throw ParseError(p.peek().pos, "omega_le needs a degree");
            if (c.parameter && c.kind != "omega_le" && c.kind != "mc")
                throw ParseError(first.pos, c.kind + " takes no order");
            if ((c.kind == "coisotropic" || c.kind == "mc" || c.kind == "kuranishi") && !bound.count("pi"))
                throw ParseError(first.pos, "check " + c.kind + " needs a binding named pi");
            scenario.checks.push_back(c);
            continue;
        }

        if (first.kind == Tok::Ident && tokens.size() > 1 && tokens[1].kind == Tok::Op && tokens[1].text == "=") {
            if (!scenario.chart)
                throw ParseError(first.pos, "binding before the chart");
            const std::string &name = first.text;
            if (kReserved.count(name))
                throw ParseError(first.pos, "'" + name + "' is reserved");
            for (const auto &b : scenario.chart->base)
                if (b.name == name)
                    throw ParseError(first.pos, "'" + name + "' is a coordinate");
            for (const auto &f : scenario.chart->fibre)
                if (f == name)
                    throw ParseError(first.pos, "'" + name + "' is a coordinate");
            if (bound.count(name))
                throw ParseError(first.pos, "'" + name + "' is already bound");
            LineParser p(std::vector<Token>(tokens.begin() + 2, tokens.end()), chart, bound);
            ExprPtr value = p.expression();
            p.expect_end();
            scenario.bindings.push_back({name, value, first.pos});
            bound.insert(name);
            continue;
        }
        throw ParseError(first.pos, "expected 'chart', 'check' or a binding");
    }
    return scenario;
}

} // namespace coiso
