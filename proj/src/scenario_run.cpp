#include "coiso/obstruction.hpp"
#include "coiso/scenario.hpp"
#include "coiso/symplectic_model.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include <json.hpp>

namespace coiso {

namespace {

inline constexpr double kMcTableTolerance = 1e-8;

using Tuple = std::vector<RingElement>;
using Value = std::variant<RingElement, MultiVectorField, DifferentialForm, Tuple>;

std::string describe(const Value &v) {
    switch (v.index()) {
    case 0:
        return "a function";
    case 1:
        return "a multivector field of degree " + std::to_string(std::get<1>(v).degree());
    case 2:
        return "a form of degree " + std::to_string(std::get<2>(v).degree());
    default:
        return "a tuple";
    }
}

Error at(const Expr &e, const std::string &message) {
    return Error(ErrorCode::InvalidArgument,
                 std::to_string(e.pos.line) + ":" + std::to_string(e.pos.col) + ": " + message);
}

struct Linear {
    std::map<std::size_t, Scalar> coefficients;
    Scalar constant;
};

class Evaluator {
  public:
    Evaluator(Chart chart, int truncation) : chart_(std::move(chart)), truncation_(truncation) {}

    void bind(const std::string &name, Value v) { env_.insert_or_assign(name, std::move(v)); }
    void fail(const std::string &name, const std::string &why) { failed_.insert_or_assign(name, why); }
    const Value &lookup(const std::string &name) const {
        if (auto it = failed_.find(name); it != failed_.end())
            throw Error(ErrorCode::InvalidArgument, "binding '" + name + "' failed: " + it->second);
        return env_.at(name);
    }
    std::optional<NumericBivector> numeric_for(const std::string &name) const {
        auto it = numeric_.find(name);
        return it == numeric_.end() ? std::nullopt : std::optional(it->second);
    }
    void remember_numeric(const std::string &name) {
        if (last_numeric_)
            numeric_.insert_or_assign(name, *last_numeric_);
        last_numeric_.reset();
    }

    Value eval(const Expr &e) {
        using K = Expr::Kind;
        switch (e.kind) {
        case K::Number:
            return RingElement::constant(chart_, Scalar(e.number));
        case K::Pi:
            return RingElement::constant(chart_, Scalar::pi_power(1));
        case K::ImaginaryUnit:
            return RingElement::constant(chart_, Scalar::imaginary_unit());
        case K::Name:
            return lookup(e.text);
        case K::Coordinate:
            if (chart_->kind(chart_->index_of(e.text)) == CoordKind::Periodic)
                throw at(e, "periodic coordinate '" + e.text + "' can only appear inside sin or cos");
            return RingElement::coordinate(chart_, e.text);
        case K::Vector:
            return coordinate_vector(chart_, e.text);
        case K::Differential:
            return coordinate_differential(chart_, e.text);
        case K::Negate:
            return negate(eval(*e.args[0]));
        case K::Add:
            return add(e, eval(*e.args[0]), eval(*e.args[1]), false);
        case K::Subtract:
            return add(e, eval(*e.args[0]), eval(*e.args[1]), true);
        case K::Multiply:
            return multiply(e, eval(*e.args[0]), eval(*e.args[1]), false);
        case K::Wedge:
            return multiply(e, eval(*e.args[0]), eval(*e.args[1]), true);
        case K::Divide:
            return divide(e, eval(*e.args[0]), eval(*e.args[1]));
        case K::Power:
            return raise(e, eval(*e.args[0]), eval(*e.args[1]));
        case K::Tuple: {
            Tuple t;
            for (const auto &a : e.args) {
                Value v = eval(*a);
                if (v.index() != 0)
                    throw at(*a, "tuple components must be functions, got " + describe(v));
                t.push_back(std::get<0>(v));
            }
            return t;
        }
        case K::Call:
            return call(e);
        }
        throw at(e, "unsupported expression");
    }

  private:
    static Value negate(const Value &v) {
        return std::visit(
            [](const auto &x) -> Value {
                if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Tuple>) {
                    Tuple t;
                    for (const auto &c : x)
                        t.push_back(-c);
                    return t;
                } else {
                    return -x;
                }
            },
            v);
    }

    Value add(const Expr &e, const Value &a, const Value &b, bool subtract) {
        Value rhs = subtract ? negate(b) : b;
        if (a.index() != rhs.index())
            throw at(e, "cannot combine " + describe(a) + " with " + describe(b));
        switch (a.index()) {
        case 0:
            return std::get<0>(a) + std::get<0>(rhs);
        case 1:
            return std::get<1>(a) + std::get<1>(rhs);
        case 2:
            return std::get<2>(a) + std::get<2>(rhs);
        default: {
            const auto &x = std::get<3>(a), &y = std::get<3>(rhs);
            if (x.size() != y.size())
                throw at(e, "tuples have different lengths");
            Tuple t;
            for (std::size_t k = 0; k < x.size(); ++k)
                t.push_back(x[k] + y[k]);
            return t;
        }
        }
    }

    Value scale(const RingElement &f, const Value &v) {
        switch (v.index()) {
        case 0:
            return f * std::get<0>(v);
        case 1:
            return f * std::get<1>(v);
        case 2:
            return f * std::get<2>(v);
        default: {
            Tuple t;
            for (const auto &c : std::get<3>(v))
                t.push_back(f * c);
            return t;
        }
        }
    }

    Value multiply(const Expr &e, const Value &a, const Value &b, bool wedge_op) {
        if (a.index() == 0)
            return scale(std::get<0>(a), b);
        if (b.index() == 0)
            return scale(std::get<0>(b), a);
        if (!wedge_op)
            throw at(e, "cannot multiply " + describe(a) + " by " + describe(b) + "; use /\\");
        if (a.index() == 1 && b.index() == 1)
            return wedge(std::get<1>(a), std::get<1>(b));
        if (a.index() == 2 && b.index() == 2)
            return wedge(std::get<2>(a), std::get<2>(b));
        throw at(e, "cannot wedge " + describe(a) + " with " + describe(b));
    }

    Scalar constant_of(const Expr &e, const Value &v, const std::string &what) {
        if (v.index() == 0)
            if (auto c = std::get<0>(v).constant_value())
                return *c;
        throw at(e, what + " must be a constant");
    }

    Value divide(const Expr &e, const Value &a, const Value &b) {
        Scalar d = constant_of(*e.args[1], b, "divisor");
        auto inv = d.inverse();
        if (!inv)
            throw at(*e.args[1], d.is_zero() ? "division by zero" : "divisor " + d.to_string() + " is not invertible");
        return scale(RingElement::constant(chart_, *inv), a);
    }

    Value raise(const Expr &e, const Value &a, const Value &b) {
        Scalar s = constant_of(*e.args[1], b, "exponent");
        if (!s.is_real() || s.terms().size() > 1 || (!s.is_zero() && s.terms().begin()->first != 0) ||
            (!s.is_zero() && s.terms().begin()->second.re.get_den() != 1))
            throw at(*e.args[1], "exponent must be a nonnegative integer");
        long n = s.is_zero() ? 0 : s.terms().begin()->second.re.get_num().get_si();
        if (n < 0)
            throw at(*e.args[1], "exponent must be a nonnegative integer");
        if (a.index() != 0)
            throw at(e, "only functions can be raised to a power");
        return power(std::get<0>(a), static_cast<int>(n));
    }

    Linear linear(const Expr &e) {
        using K = Expr::Kind;
        switch (e.kind) {
        case K::Number:
            return {{}, Scalar(e.number)};
        case K::Pi:
            return {{}, Scalar::pi_power(1)};
        case K::ImaginaryUnit:
            return {{}, Scalar::imaginary_unit()};
        case K::Coordinate:
            return {{{chart_->index_of(e.text), Scalar(1)}}, Scalar()};
        case K::Name:
            return {{}, constant_of(e, lookup(e.text), "name inside sin or cos")};
        case K::Negate: {
            Linear l = linear(*e.args[0]);
            for (auto &[i, c] : l.coefficients)
                c = -c;
            l.constant = -l.constant;
            return l;
        }
        case K::Add:
        case K::Subtract: {
            Linear l = linear(*e.args[0]), r = linear(*e.args[1]);
            Scalar sign(e.kind == K::Add ? 1 : -1);
            for (const auto &[i, c] : r.coefficients)
                l.coefficients[i] += sign * c;
            l.constant += sign * r.constant;
            return l;
        }
        case K::Multiply:
        case K::Divide: {
            Linear l = linear(*e.args[0]), r = linear(*e.args[1]);
            if (e.kind == K::Divide) {
                if (!r.coefficients.empty())
                    throw at(e, "sin/cos argument must be linear in the coordinates");
                auto inv = r.constant.inverse();
                if (!inv)
                    throw at(*e.args[1], "divisor is not invertible");
                r.constant = *inv;
            }
            if (!l.coefficients.empty() && !r.coefficients.empty())
                throw at(e, "sin/cos argument must be linear in the coordinates");
            if (!l.coefficients.empty())
                std::swap(l, r);
            for (auto &[i, c] : r.coefficients)
                c = l.constant * c;
            r.constant = l.constant * r.constant;
            return r;
        }
        default:
            throw at(e, "unsupported expression inside sin or cos");
        }
    }

    Value trig(const Expr &e, bool sine) {
        Linear l = linear(*e.args[0]);
        if (!l.constant.is_zero())
            throw at(e, "sin/cos argument must have no constant term");
        Scalar two_pi_inv = *Scalar::gaussian(2, 0, 1).inverse();
        RingElement plus = RingElement::constant(chart_, Scalar(1));
        RingElement minus = plus;
        for (const auto &[i, c] : l.coefficients) {
            if (c.is_zero())
                continue;
            Scalar k = c * two_pi_inv;
            if (!k.is_real() || k.terms().size() != 1 || k.terms().begin()->first != 0 ||
                k.terms().begin()->second.re.get_den() != 1)
                throw at(e, "frequency along " + chart_->name(i) + " must be 2*pi times an integer");
            if (chart_->kind(i) != CoordKind::Periodic)
                throw at(e, "sin/cos needs a periodic coordinate, '" + chart_->name(i) + "' is not");
            int n = static_cast<int>(k.terms().begin()->second.re.get_num().get_si());
            plus = plus * RingElement::fourier_mode(chart_, chart_->name(i), n);
            minus = minus * RingElement::fourier_mode(chart_, chart_->name(i), -n);
        }
        if (sine)
            return (plus - minus) * Scalar::gaussian(0, mpq_class(-1, 2));
        return (plus + minus) * Scalar(mpq_class(1, 2));
    }

    Value call(const Expr &e) {
        if (e.text == "sin" || e.text == "cos")
            return trig(e, e.text == "sin");
        Value arg = eval(*e.args[0]);
        if (arg.index() != 2 || std::get<2>(arg).degree() != 2)
            throw at(*e.args[0], e.text + " needs a 2-form, got " + describe(arg));
        const auto &omega = std::get<2>(arg);
        if (e.text == "inv_form") {
            auto r = symplectic_to_poisson(omega, truncation_);
            last_numeric_.reset();
            if (!r.exact)
                last_numeric_ = numeric_poisson(omega);
            return r.pi;
        }
        // gotay
        Chart base = make_chart(chart_->base(), {});
        std::vector<std::string> kernel;
        for (std::size_t k = 1; k < e.args.size(); ++k)
            kernel.push_back(e.args[k]->text);
        if (kernel.size() != chart_->fibre_dim())
            throw at(e, "gotay needs one kernel direction per fibre coordinate");
        for (const auto &[m, c] : omega.terms())
            for (std::size_t j = 0; j < chart_->fibre_dim(); ++j)
                if ((m & direction_bit(chart_->fibre_index(j))) || !c.is_base_only())
                    throw at(*e.args[0], "gotay needs a form on the base");
        PresymplecticData data(transport(omega, base), SubbundleSpec(base, kernel));
        DifferentialForm out = omega;
        for (std::size_t j = 0; j < kernel.size(); ++j)
            out += DifferentialForm::basis(chart_, {kernel[j], chart_->fibre()[j]});
        return out;
    }

    Chart chart_;
    int truncation_;
    std::map<std::string, Value> env_;
    std::map<std::string, std::string> failed_;
    std::map<std::string, NumericBivector> numeric_;
    std::optional<NumericBivector> last_numeric_;
};

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

VerticalSection as_section(const Chart &chart, const Value &v, const std::string &name) {
    switch (v.index()) {
    case 0:
        if (chart->fibre_dim() == 1)
            return VerticalSection::from_components(chart, {std::get<0>(v)});
        break;
    case 1:
        return VerticalSection(std::get<1>(v));
    case 3:
        return VerticalSection::from_components(chart, std::get<3>(v));
    default:
        break;
    }
    throw Error(ErrorCode::NotVertical, "'" + name + "' is " + describe(v) + ", not a section");
}

struct Context {
    const RunOptions &options;
    Chart chart;
    Evaluator &eval;

    CoisoAlgebra algebra() const {
        const Value &pi = eval.lookup("pi");
        if (pi.index() != 1 || std::get<1>(pi).degree() != 2)
            throw Error(ErrorCode::WrongDegree, "pi is " + describe(pi) + ", not a bivector");
        return CoisoAlgebra(std::get<1>(pi), eval.numeric_for("pi"));
    }
    VerticalSection section(const std::string &name) const { return as_section(chart, eval.lookup(name), name); }
};

void run_coisotropic(const Context &ctx, const CheckDirective &c, CheckResult &r) {
    auto alg = ctx.algebra();
    auto alpha = ctx.section(c.target);
    auto grid = sample_grid(*ctx.chart, ctx.options.samples, ctx.options.seed);
    auto res = coisotropy_check_numeric(alg, alpha, grid);
    r.values.push_back({"section", alpha.to_string()});
    r.values.push_back({"points", std::to_string(grid.size())});
    r.numbers.push_back({"max_defect", res.max_defect});
    r.numbers.push_back({"tolerance", kCoisotropyTolerance});
    r.status = res.coisotropic ? CheckStatus::Pass : CheckStatus::Fail;
}

void run_mc(const Context &ctx, const CheckDirective &c, CheckResult &r) {
    auto alg = ctx.algebra();
    auto alpha = ctx.section(c.target);
    r.values.push_back({"section", alpha.to_string()});
    if (!alg.is_jet() && !c.parameter) {
        McOptions opt;
        opt.samples = ctx.options.samples;
        opt.seed = ctx.options.seed;
        auto series = mc_series_exact(alg, alpha, opt);
        auto oracle = mc_pushforward_oracle(alg, alpha);
        r.values.push_back({"mc", series.to_string()});
        r.values.push_back({"oracle", oracle.to_string()});
        r.values.push_back({"oracle_match", series == oracle ? "yes" : "no"});
        r.values.push_back({"graph_coisotropic", series.is_zero() ? "yes" : "no"});
        r.status = series == oracle ? CheckStatus::Pass : CheckStatus::Fail;
        return;
    }
    int order = c.parameter.value_or(ctx.options.truncation);
    auto grid = sample_grid(*ctx.chart, ctx.options.samples, ctx.options.seed);
    auto table = mc_partial_table(alg, alpha, order, grid);
    r.values.push_back({"order", std::to_string(order)});
    r.values.push_back({"points", std::to_string(grid.size())});
    for (int n = 1; n <= order; ++n)
        r.numbers.push_back({"max_abs_error_n" + std::to_string(n), table.max_error_at(n)});
    r.numbers.push_back({"tolerance", kMcTableTolerance});
    r.status = table.max_error_at(order) <= kMcTableTolerance ? CheckStatus::Pass : CheckStatus::Fail;
    r.table = std::move(table);
}

void run_kuranishi(const Context &ctx, const CheckDirective &c, CheckResult &r) {
    auto alg = ctx.algebra();
    auto a = ctx.section(c.target);
    auto report = obstructedness_certificate(alg, a);
    r.values.push_back({"section", a.to_string()});
    r.values.push_back({"closed", report.closed ? "yes" : "no"});
    if (report.kuranishi)
        r.values.push_back({"kuranishi", report.kuranishi->to_string()});
    if (report.beta)
        r.values.push_back({"beta", report.beta->to_string()});
    if (report.integral)
        r.values.push_back({"F", report.integral->to_string()});
    r.values.push_back({"verdict", to_string(report.verdict)});
    r.message = report.note;
    if (!report.closed)
        r.status = CheckStatus::Fail;
    else
        r.status = report.verdict == Verdict::Nonzero ? CheckStatus::Pass : CheckStatus::Inconclusive;
}

void run_jacobi(const Context &ctx, const CheckDirective &c, CheckResult &r) {
    const Value &v = ctx.eval.lookup(c.target);
    if (v.index() != 1 || std::get<1>(v).degree() != 2)
        throw Error(ErrorCode::WrongDegree, "'" + c.target + "' is " + describe(v) + ", not a bivector");
    const auto &b = std::get<1>(v);
    auto s = schouten_bracket(b, b);
    r.values.push_back({"bracket", s.to_string()});
    if (b.jet_order())
        r.values.push_back({"reliable_order", std::to_string(*s.jet_order())});
    r.status = s.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
}

void run_omega_le(const Context &ctx, const CheckDirective &c, CheckResult &r) {
    const Value &v = ctx.eval.lookup(c.target);
    if (v.index() != 2)
        throw Error(ErrorCode::WrongDegree, "'" + c.target + "' is " + describe(v) + ", not a form");
    auto degrees = fibrewise_degree_classify(std::get<2>(v));
    std::string list = "{";
    for (int d : degrees)
        list += (list.size() > 1 ? ", " : "") + std::to_string(d);
    r.values.push_back({"fibrewise_degrees", list + "}"});
    r.status = is_in_omega_le(std::get<2>(v), *c.parameter) ? CheckStatus::Pass : CheckStatus::Fail;
}

void run_pencil(const RunOptions &options, const CheckDirective &c, CheckResult &r) {
    auto path = options.base_dir / c.target;
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::Io, "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    auto pencil = parse_pencil(buf.str());
    int order = *c.parameter;
    auto inv = invert_affine_pencil(pencil, order);
    auto product = pencil.matrix() * inv;
    bool ok = true;
    for (std::size_t i = 0; i < product.rows(); ++i)
        for (std::size_t j = 0; j < product.cols(); ++j) {
            RingElement d = product(i, j).truncated(order);
            if (i == j)
                d = d - RingElement::constant(d.chart(), Scalar(1));
            ok = ok && d.is_zero();
        }
    r.values.push_back({"size", std::to_string(pencil.a.size())});
    r.values.push_back({"order", std::to_string(order)});
    r.values.push_back({"identity_to_order", ok ? "yes" : "no"});
    r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
}

} // namespace

const char *to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    case CheckStatus::Inconclusive:
        return "inconclusive";
    case CheckStatus::Error:
        return "error";
    }
    return "error";
}

int RunReport::exit_code() const {
    int code = 0;
    for (const auto &c : checks) {
        if (c.status == CheckStatus::Error)
            return 3;
        if (c.status == CheckStatus::Fail || (options.strict && c.status == CheckStatus::Inconclusive))
            code = 1;
    }
    return code;
}

RunReport run_scenario(const Scenario &scenario, const RunOptions &options) {
    RunReport report;
    report.options = options;
    if (!scenario.chart) {
        for (const auto &c : scenario.checks) {
            CheckResult r;
            r.check = c.kind;
            r.target = c.label().substr(c.kind.size() + 1);
            if (c.kind != "pencil") {
                r.message = "no chart";
                report.checks.push_back(r);
                continue;
            }
            auto start = std::chrono::steady_clock::now();
            try {
                run_pencil(options, c, r);
            } catch (const std::exception &e) {
                r.status = CheckStatus::Error;
                r.message = e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            report.checks.push_back(r);
        }
        return report;
    }

    Chart chart = scenario.chart->build();
    Evaluator eval(chart, options.truncation);
    for (const auto &b : scenario.bindings) {
        try {
            eval.bind(b.name, eval.eval(*b.value));
            eval.remember_numeric(b.name);
        } catch (const std::exception &e) {
            eval.fail(b.name, e.what());
        }
    }
    Context ctx{options, chart, eval};
    for (const auto &c : scenario.checks) {
        CheckResult r;
        r.check = c.kind;
        r.target = c.label().substr(c.kind.size() + 1);
        auto start = std::chrono::steady_clock::now();
        try {
            if (c.kind == "coisotropic")
                run_coisotropic(ctx, c, r);
            else if (c.kind == "mc")
                run_mc(ctx, c, r);
            else if (c.kind == "kuranishi")
                run_kuranishi(ctx, c, r);
            else if (c.kind == "jacobi")
                run_jacobi(ctx, c, r);
            else if (c.kind == "omega_le")
                run_omega_le(ctx, c, r);
            else
                run_pencil(options, c, r);
        } catch (const std::exception &e) {
            r.status = CheckStatus::Error;
            r.message = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.checks.push_back(std::move(r));
    }
    return report;
}

namespace {

std::string emit_text(const RunReport &report) {
    std::string out;
    int counts[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < report.checks.size(); ++k) {
        const auto &c = report.checks[k];
        ++counts[static_cast<int>(c.status)];
        out += "check " + std::to_string(k + 1) + ": " + c.check + " " + c.target + " ... " + to_string(c.status) + "\n";
        for (const auto &[key, value] : c.values)
            out += "  " + key + " = " + value + "\n";
        for (const auto &[key, value] : c.numbers)
            out += "  " + key + " = " + format_number(value) + "\n";
        if (!c.message.empty())
            out += "  note: " + c.message + "\n";
        if (report.options.timing)
            out += "  seconds = " + format_number(c.seconds) + "\n";
    }
    out += "summary: " + std::to_string(report.checks.size()) + " checks, " + std::to_string(counts[0]) + " pass, " +
           std::to_string(counts[1]) + " fail, " + std::to_string(counts[2]) + " inconclusive, " +
           std::to_string(counts[3]) + " error\n";
    return out;
}

std::string emit_json(const RunReport &report) {
    nlohmann::ordered_json j;
    j["options"] = {{"truncation", report.options.truncation},
                    {"samples", report.options.samples},
                    {"seed", report.options.seed},
                    {"strict", report.options.strict}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto &c : report.checks) {
        nlohmann::ordered_json e;
        e["check"] = c.check;
        e["target"] = c.target;
        e["status"] = to_string(c.status);
        e["values"] = nlohmann::ordered_json::object();
        for (const auto &[key, value] : c.values)
            e["values"][key] = value;
        e["numbers"] = nlohmann::ordered_json::object();
        for (const auto &[key, value] : c.numbers)
            e["numbers"][key] = value;
        e["message"] = c.message;
        if (report.options.timing)
            e["seconds"] = c.seconds;
        j["checks"].push_back(std::move(e));
    }
    j["exit_code"] = report.exit_code();
    return j.dump(2) + "\n";
}

std::string emit_csv(const RunReport &report) {
    std::string header, body;
    for (std::size_t k = 0; k < report.checks.size(); ++k) {
        const auto &c = report.checks[k];
        if (!c.table)
            continue;
        std::istringstream lines(c.table->to_csv());
        std::string line;
        std::getline(lines, line);
        if (header.empty())
            header = "check," + line + "\n";
        while (std::getline(lines, line))
            body += std::to_string(k + 1) + "," + line + "\n";
    }
    if (!header.empty())
        return header + body;
    std::string out = "check,kind,target,status\n";
    for (std::size_t k = 0; k < report.checks.size(); ++k) {
        const auto &c = report.checks[k];
        out += std::to_string(k + 1) + "," + c.check + "," + c.target + "," + to_string(c.status) + "\n";
    }
    return out;
}

} // namespace

std::string emit_report(const RunReport &report, ReportFormat format) {
    switch (format) {
    case ReportFormat::Text:
        return emit_text(report);
    case ReportFormat::Json:
        return emit_json(report);
    case ReportFormat::Csv:
        return emit_csv(report);
    }
    return "";
}

} // namespace coiso
