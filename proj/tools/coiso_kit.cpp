#include "coiso/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

int main(int argc, char **argv) {
    CLI::App app{"coiso-kit: deformations of coisotropic submanifolds"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "run a scenario file");
    std::string file, out_path, format = "text";
    coiso::RunOptions options;
    run->add_option("file", file, "scenario file")->required();
    run->add_option("--truncation", options.truncation, "jet truncation order")->check(CLI::PositiveNumber);
    run->add_option("--samples", options.samples, "sample points per periodic axis")->check(CLI::PositiveNumber);
    run->add_option("--seed", options.seed, "seed for sampled polynomial axes");
    run->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json", "csv"}));
    run->add_option("--out", out_path, "write the report here instead of stdout");
    run->add_flag("--strict", options.strict, "treat inconclusive checks as failures");
    run->add_flag("--timing", options.timing, "include per-check timings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::ifstream in(file);
    if (!in) {
        std::cerr << "error: cannot read " << file << "\n";
        return 3;
    }
    std::stringstream text;
    text << in.rdbuf();

    coiso::Scenario scenario;
    try {
        scenario = coiso::parse_scenario(text.str());
    } catch (const coiso::ParseError &e) {
        std::cerr << file << ":" << e.what() << "\n";
        return 2;
    }

    options.base_dir = std::filesystem::path(file).parent_path();
    if (options.base_dir.empty())
        options.base_dir = ".";
    coiso::RunReport report = coiso::run_scenario(scenario, options);
    static const std::map<std::string, coiso::ReportFormat> formats = {
        {"text", coiso::ReportFormat::Text}, {"json", coiso::ReportFormat::Json}, {"csv", coiso::ReportFormat::Csv}};
    std::string rendered = coiso::emit_report(report, formats.at(format));

    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!(out << rendered)) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 3;
        }
    }
    return report.exit_code();
}
