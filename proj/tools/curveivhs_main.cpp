#include <fstream>
#include <iostream>
#include <sstream>
#include <CLI11.hpp>

#include "civhs/cli.hpp"
#include "civhs/curve.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(civhs::cli::kExitInput);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const civhs::cli::CommandResult& result, const std::string& format,
          const std::string& csv_path) {
    if (format == "text") {
        const auto& j = result.envelope;
        std::cout << "command: " << j.value("command", "") << "\n";
        if (j.contains("error")) std::cout << "error: " << j["error"].get<std::string>() << "\n";
        if (j.contains("genus"))
            std::cout << "genus: " << j["genus"]["geometric"] << " (arithmetic "
                      << j["genus"]["arithmetic"] << ")\n";
        if (j.contains("adjoint"))
            std::cout << "adjoint dimension: " << j["adjoint"]["dimension"] << "\n";
        if (j.contains("ivhs"))
            std::cout << "ivhs image dimension: " << j["ivhs"]["image_dimension"]
                      << " (rank bound " << j["ivhs"]["rank_bound"] << ")\n";
        if (j.contains("all_consistent"))
            std::cout << "all consistent: " << (j["all_consistent"].get<bool>() ? "yes" : "no")
                      << "\n";
        if (j.contains("tallies")) std::cout << j["tallies"].dump(2) << "\n";
        if (j.contains("summary")) std::cout << j["summary"].dump(2) << "\n";
        if (j.contains("surface")) std::cout << j["surface"].dump(2) << "\n";
        if (!j["tension_flags"].empty())
            std::cout << "tension flags: " << j["tension_flags"].dump() << "\n";
    } else {
        std::cout << civhs::report::dump_canonical(result.envelope);
    }
    if (!csv_path.empty() && !result.csv.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        out << result.csv;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants, adjoint systems, and residue operators of singular plane curves"};
    app.require_subcommand(1);

    std::string input_path, csv_path, format = "json";
    uint64_t seed = 1;
    int trials = 100, truncation = 0;
    int surface_degree = 4, divisor_multiple = 1;
    std::string singularities;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* analyze = app.add_subcommand("analyze", "verify, classify, and report one curve");
    analyze->add_option("--input", input_path, "curve input JSON")->required();
    analyze->add_option("--seed", seed, "seed for the sampled certificates");
    analyze->add_option("--truncation", truncation, "branch series order override");
    add_common(analyze);

    CLI::App* lemmas = app.add_subcommand("verify-lemmas", "randomized local pairing checks");
    lemmas->add_option("--seed", seed, "RNG seed");
    lemmas->add_option("--trials", trials, "number of randomized trials");
    add_common(lemmas);

    CLI::App* family = app.add_subcommand("family-scan", "sample an equisingular family");
    family->add_option("--input", input_path, "family spec JSON")->required();
    family->add_option("--csv", csv_path, "write per-sample rows as CSV");
    add_common(family);

    CLI::App* surface = app.add_subcommand("surface-report", "numeric criteria for curves on surfaces");
    surface->add_option("--surface-degree", surface_degree, "degree of the ambient surface")
        ->required();
    surface->add_option("--multiple", divisor_multiple, "divisor class multiple")->required();
    surface->add_option("--singularities", singularities,
                        "comma list of ADE tags, e.g. \"A3,5xA1\"");
    add_common(surface);

    CLI11_PARSE(app, argc, argv);

    civhs::cli::CommandResult result;
    if (*analyze) {
        if (truncation > 0) civhs::curvekit::set_branch_order_override(truncation);
        result = civhs::cli::cmd_analyze(slurp(input_path), seed);
    } else if (*lemmas) {
        result = civhs::cli::cmd_verify_lemmas(seed, trials);
    } else if (*family) {
        result = civhs::cli::cmd_family_scan(slurp(input_path), !csv_path.empty());
    } else {
        result = civhs::cli::cmd_surface_report(surface_degree, divisor_multiple, singularities);
    }
    emit(result, format, csv_path);
    return result.exit_code;
}
