#include "forest_spectra/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace forest_spectra;

int main(int argc, char** argv) {
    CLI::App app{
        "forest-spectra: determinants, characteristic polynomials, minors, cofactors and\n"
        "eigenvector components as signless sums over rooted spanning forests, plus\n"
        "asymptotic spectra of matrices with exponentially small entries."};

    std::string task_text;
    std::string mode_text;
    std::string input_path;
    std::string output_path;
    std::string roots_text;
    std::string eps_text;
    std::string lambda_text;
    TaskRequest request;
    int n_flag = 0, m_flag = 0;

    app.add_option("--task", task_text,
                   "charpoly | det | minor | cofactor | eigenvector | kirchhoff-charpoly | "
                   "tropical-spectrum | validate | selftest")
        ->required();
    app.add_option("--mode", mode_text,
                   "exact | float | tropical (default: exact; tropical for tropical tasks)");
    app.add_option("--input", input_path, "matrix file (JSON or CSV) or tropical arcs JSON");
    app.add_option("--output", output_path, "write the JSON report here instead of stdout");
    app.add_option("--roots", roots_text, "comma-separated 1-based rows/columns to strike (minor)");
    app.add_option("--n", n_flag, "1-based row / pivot index");
    app.add_option("--m", m_flag, "1-based column / component index");
    app.add_option("--lambda", lambda_text, "eigenvalue as rational or float literal");
    app.add_option("--eps", eps_text, "comma-separated decreasing eps list (validate)");
    app.add_flag("--transpose", request.transpose, "left eigenvector (of the transposed matrix)");
    app.add_flag("--include-zero-arcs", request.include_zero_arcs,
                 "keep zero-weight arcs during enumeration (counting aid)");
    app.add_option("--max-n", request.max_n,
                   "refusal guard for forest-enumeration tasks (default 12)");
    app.add_option("--threads", request.threads,
                   "partition workers; 0 = FOREST_SPECTRA_THREADS or 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    nlohmann::json report;
    int exit_code = 0;
    try {
        request.task = parse_task(task_text);
        if (!mode_text.empty()) request.mode = parse_mode(mode_text);
        request.input_path = input_path;
        request.output_path = output_path;
        if (n_flag != 0) request.n = n_flag;
        if (m_flag != 0) request.m = m_flag;
        if (!lambda_text.empty()) request.lambda_text = lambda_text;
        if (!roots_text.empty()) {
            std::stringstream ss(roots_text);
            std::string item;
            while (std::getline(ss, item, ',')) request.roots.push_back(std::stoi(item));
        }
        if (!eps_text.empty()) {
            std::stringstream ss(eps_text);
            std::string item;
            while (std::getline(ss, item, ',')) request.eps.push_back(std::stod(item));
        }
        RunResult r = run_task(request);
        report = std::move(r.report);
        exit_code = r.exit_code;
    } catch (const std::exception& e) {
        report["error"] = {{"kind", "InputError"}, {"message", e.what()}};
        exit_code = 1;
    }

    const std::string text = report.dump(2) + "\n";
    if (!output_path.empty()) {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << output_path << "\n";
            return 1;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return exit_code;
}
