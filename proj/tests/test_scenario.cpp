#include "coiso/scenario.hpp"

#include "support/expect.hpp"
#include "support/random.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace coiso;
using coiso::testing::Rng;
using coiso::testing::RingShape;

namespace {

const std::filesystem::path kSource = COISO_SOURCE_DIR;

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunOptions fast(int samples = 8) {
    RunOptions o;
    o.samples = samples;
    o.base_dir = kSource / "scenarios";
    return o;
}

std::string random_expr(Rng &rng, int depth, const std::vector<std::string> &names) {
    static const char *atoms[] = {"x", "z", "y", "@x", "@y", "dz", "dy", "pi", "I", "3", "0.25", "7/2"};
    if (depth == 0 || rng.uniform(0, 3) == 0) {
        if (!names.empty() && rng.coin())
            return names[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(names.size()) - 1))];
        return atoms[rng.uniform(0, 11)];
    }
    auto sub = [&] { return random_expr(rng, depth - 1, names); };
    switch (rng.uniform(0, 8)) {
    case 0: return sub() + " + " + sub();
    case 1: return sub() + " - " + sub();
    case 2: return sub() + "*" + sub();
    case 3: return sub() + " /\\ " + sub();
    case 4: return "(" + sub() + ")^" + std::to_string(rng.uniform(0, 3));
    case 5: return "-" + sub();
    case 6: return std::string(rng.coin() ? "sin" : "cos") + "(2*pi*x)";
    case 7: return "(" + sub() + ", " + sub() + ")";
    default: return "(" + sub() + ")/" + std::to_string(rng.uniform(1, 5));
    }
}

const CheckResult &only(const RunReport &r) {
    REQUIRE(r.checks.size() == 1);
    return r.checks.front();
}

std::string value_of(const CheckResult &c, const std::string &key) {
    for (const auto &[k, v] : c.values)
        if (k == key)
            return v;
    return "<missing>";
}

} // namespace

TEST_CASE("parsing the torus scenario") {
    auto sc = parse_scenario(slurp(kSource / "scenarios/t4.coiso"));
    REQUIRE(sc.chart.has_value());
    CHECK(sc.chart->fibre == std::vector<std::string>{"p1", "p2"});
    CHECK(sc.chart->base.size() == 4);
    CHECK(sc.chart->base[0].periodic);
    CHECK(sc.bindings.size() == 5);
    CHECK(sc.checks.size() == 7);
    CHECK(sc.checks[2].kind == "kuranishi");
    CHECK(sc.checks[2].target == "a");
    CHECK(sc.checks[0].parameter == 1);
}

TEST_CASE("numeric literals are exact decimals") {
    auto sc = parse_scenario("chart base=(q*) fibre=(p)\na = 0.25\nb = 08\nc = 0.010\n");
    CHECK(sc.bindings[0].value->number == mpq_class(1, 4));
    CHECK(sc.bindings[1].value->number == 8);
    CHECK(sc.bindings[2].value->number == mpq_class(1, 100));
    CHECK(sc.bindings[0].value->render() == "0.25");
    CHECK(sc.bindings[2].value->render() == "0.01");
}

TEST_CASE("empty and comment-only files") {
    CHECK(parse_scenario("").checks.empty());
    auto sc = parse_scenario("# nothing here\n\n   # still nothing\n");
    CHECK(sc.checks.empty());
    CHECK_FALSE(sc.chart.has_value());
    auto report = run_scenario(sc, fast());
    CHECK(report.checks.empty());
    CHECK(report.exit_code() == 0);
}

TEST_CASE("parse errors carry positions") {
    auto expect_error = [](const std::string &text, int line) {
        try {
            parse_scenario(text);
            FAIL_CHECK("expected a parse error in: " << text);
        } catch (const ParseError &e) {
            CHECK(e.pos().line == line);
            CHECK(std::string(e.what()).rfind(std::to_string(line) + ":", 0) == 0);
            CHECK(e.code() == ErrorCode::Parse);
        }
    };
    const std::string chart = "chart base=(q*) fibre=(p)\n";
    expect_error(chart + "pi = @q/\\@p\ncheck mc b\n", 3);
    expect_error(chart + "a = b + 1\n", 2);
    expect_error("a = 1\n" + chart, 1);
    expect_error(chart + chart, 2);
    expect_error(chart + "a = 1\na = 2\n", 3);
    expect_error(chart + "q = 1\n", 2);
    expect_error(chart + "a = (1, 2\n", 2);
    expect_error(chart + "a = 1 $ 2\n", 2);
    expect_error(chart + "a = (0)\ncheck coisotropic a\n", 3);
    expect_error(chart + "check frobnicate p\n", 2);
    expect_error(chart + "pi = @q/\\@p\ncheck omega_le pi\n", 3);
    expect_error("chart base=(q*) fibre=(q)\n", 1);
    expect_error(chart + "a = gotay(dq, p)\n", 2);
    try {
        parse_scenario(chart + "\n\na = 1 +\n");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.pos().line == 4);
        CHECK(e.pos().col > 1);
    }
}

TEST_CASE("render round trip") {
    for (const char *file : {"scenarios/t4.coiso", "scenarios/jet.coiso", "scenarios/pencil.coiso",
                             "tests/data/failing.coiso", "tests/data/runtime_error.coiso"}) {
        auto sc = parse_scenario(slurp(kSource / file));
        auto again = parse_scenario(sc.render());
        CHECK(again == sc);
        CHECK(again.render() == sc.render());
    }
    Rng rng(71);
    for (int i = 0; i < 100; ++i) {
        std::string text = "chart base=(x*, z) fibre=(y) domain=0.5\npi = @x /\\ @y\n";
        std::vector<std::string> names;
        for (int b = 0; b < 3; ++b) {
            std::string name = "v" + std::to_string(b);
            text += name + " = " + random_expr(rng, 3, names) + "\n";
            names.push_back(name);
        }
        text += "check mc v1 4\ncheck omega_le v2 1\n";
        Scenario sc;
        REQUIRE_NOTHROW(sc = parse_scenario(text));
        auto again = parse_scenario(sc.render());
        CHECK(again == sc);
    }
}

TEST_CASE("running the torus scenario") {
    auto report = run_scenario(parse_scenario(slurp(kSource / "scenarios/t4.coiso")), fast());
    REQUIRE(report.checks.size() == 7);
    for (const auto &c : report.checks)
        CHECK_MESSAGE(c.status == CheckStatus::Pass, c.check << " " << c.target << ": " << c.message);
    const auto &kur = report.checks[2];
    CHECK(value_of(kur, "F") == "8*pi^2*cos(2*pi*y1)*cos(2*pi*y2)");
    CHECK(value_of(kur, "verdict") == "NONZERO");
    CHECK(value_of(report.checks[3], "mc") == "4*pi^2*cos(2*pi*y1)*cos(2*pi*y2) * @p1 /\\ @p2");
    CHECK(report.exit_code() == 0);

    auto text = emit_report(report, ReportFormat::Text);
    CHECK(text.find("8*pi^2*cos(2*pi*y1)*cos(2*pi*y2)") != std::string::npos);
    CHECK(text == slurp(kSource / "tests/golden/t4.txt"));
}

TEST_CASE("coisotropic check on the zero section") {
    auto sc = parse_scenario("chart base=(x, q*) fibre=(y1, y2)\n"
                             "pi = x*@x/\\@y1 + y1*@y1/\\@y2 + sin(2*pi*q)*@q/\\@x\n"
                             "zero = (0, 0)\n"
                             "check coisotropic zero\n");
    auto report = run_scenario(sc, fast());
    CHECK(only(report).status == CheckStatus::Pass);
}

TEST_CASE("mc check on random polynomial scenarios") {
    Rng rng(72);
    RingShape shape;
    shape.real = true;
    for (int i = 0; i < 20; ++i) {
        auto chart = make_chart({{"x1", true}, {"x2", false}}, {"y1", "y2"});
        auto pi = coiso::testing::make_coisotropic(coiso::testing::random_multivector(rng, chart, 2, shape));
        if (pi.is_zero())
            continue;
        auto alpha = coiso::testing::random_section(rng, chart, 1, shape);
        std::string text = "chart base=(x1*, x2) fibre=(y1, y2)\n";
        text += "pi = " + pi.to_string() + "\n";
        text += "alpha = " + alpha.to_string() + "\n";
        text += "check mc alpha\n";
        auto report = run_scenario(parse_scenario(text), fast(4));
        const auto &c = only(report);
        CHECK_MESSAGE(c.status == CheckStatus::Pass, text << c.message);
        CHECK(value_of(c, "oracle_match") == "yes");
        CoisoAlgebra alg(pi);
        CHECK(value_of(c, "mc") == mc_series_exact(alg, alpha, McOptions{4, 0, {}}).to_string());
    }
}

TEST_CASE("statuses and exit codes") {
    auto run = [](const char *file, bool strict = false) {
        auto o = fast(4);
        o.strict = strict;
        return run_scenario(parse_scenario(slurp(kSource / "tests/data" / file)), o);
    };
    auto failing = run("failing.coiso");
    CHECK(only(failing).status == CheckStatus::Fail);
    CHECK(failing.exit_code() == 1);
    auto error = run("runtime_error.coiso");
    CHECK(only(error).status == CheckStatus::Error);
    CHECK(only(error).message.find("domain") != std::string::npos);
    CHECK(error.exit_code() == 3);
    CHECK(only(run("inconclusive.coiso")).status == CheckStatus::Inconclusive);
    CHECK(run("inconclusive.coiso").exit_code() == 0);
    CHECK(run("inconclusive.coiso", true).exit_code() == 1);

    // a failing binding surfaces as an error only in the checks that use it
    auto sc = parse_scenario("chart base=(q*) fibre=(p)\n"
                             "pi = @q/\\@p\n"
                             "bad = sin(q)\n"
                             "zero = (0)\n"
                             "check coisotropic bad\n"
                             "check coisotropic zero\n");
    auto report = run_scenario(sc, fast(4));
    REQUIRE(report.checks.size() == 2);
    CHECK(report.checks[0].status == CheckStatus::Error);
    CHECK(report.checks[1].status == CheckStatus::Pass);
}

TEST_CASE("json report") {
    auto report = run_scenario(parse_scenario(slurp(kSource / "scenarios/t4.coiso")), fast());
    auto j = nlohmann::json::parse(emit_report(report, ReportFormat::Json));
    CHECK(j["options"]["samples"] == 8);
    CHECK(j["options"]["truncation"] == 6);
    CHECK(j["options"]["seed"] == 0);
    CHECK(j["exit_code"] == 0);
    REQUIRE(j["checks"].size() == 7);
    const auto &k = j["checks"][2];
    CHECK(k["check"] == "kuranishi");
    CHECK(k["target"] == "a");
    CHECK(k["status"] == "pass");
    CHECK(k["values"]["F"] == "8*pi^2*cos(2*pi*y1)*cos(2*pi*y2)");
    CHECK(j["checks"][5]["numbers"]["max_defect"] == 0.0);
    for (const auto &c : j["checks"])
        for (const char *key : {"check", "target", "status", "values", "numbers", "message"})
            CHECK(c.contains(key));
    CHECK_FALSE(j["checks"][0].contains("seconds"));
}

TEST_CASE("csv report") {
    auto o = fast(6);
    o.truncation = 8;
    auto report = run_scenario(parse_scenario(slurp(kSource / "scenarios/jet.coiso")), o);
    for (const auto &c : report.checks)
        CHECK_MESSAGE(c.status == CheckStatus::Pass, c.check << " " << c.target << ": " << c.message);
    auto csv = emit_report(report, ReportFormat::Csv);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "check,y1,y2,q1,q2,n,beta_p1_p2,oracle_p1_p2,abs_error");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
    }
    CHECK(rows == 6 * 6 * 6 * 6 * 8);

    auto summary = emit_report(run_scenario(parse_scenario(slurp(kSource / "tests/data/failing.coiso")), fast(4)),
                               ReportFormat::Csv);
    CHECK(summary.substr(0, summary.find('\n')) == "check,kind,target,status");
}

TEST_CASE("reports are deterministic") {
    auto sc = parse_scenario(slurp(kSource / "scenarios/t4.coiso"));
    for (auto format : {ReportFormat::Text, ReportFormat::Json, ReportFormat::Csv}) {
        auto first = emit_report(run_scenario(sc, fast(6)), format);
        auto second = emit_report(run_scenario(sc, fast(6)), format);
        CHECK(first == second);
    }
}

TEST_CASE("pencil check") {
    auto report = run_scenario(parse_scenario(slurp(kSource / "scenarios/pencil.coiso")), fast());
    CHECK(only(report).status == CheckStatus::Pass);
    auto missing = run_scenario(parse_scenario("check pencil no_such_file.txt 3\n"), fast());
    CHECK(only(missing).status == CheckStatus::Error);
}
