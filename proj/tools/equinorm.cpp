#include "equinorm/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace equinorm;

int run_analyze(const std::string& path, std::optional<int> order, bool renormalize, bool flow,
                const std::string& out_path) {
    Json input;
    {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "cannot open spec file: " << path << "\n";
            return 2;
        }
        try {
            in >> input;
        } catch (const std::exception& err) {
            std::cerr << "spec file is not valid JSON: " << err.what() << "\n";
            return 2;
        }
    }

    SystemSpec spec;
    try {
        spec = parse_system_spec(input);
    } catch (const std::exception& err) {
        std::cerr << "invalid spec: " << err.what() << "\n";
        return 2;
    }
    if (order)
        spec.order = *order;
    spec.renormalize = spec.renormalize || renormalize;
    spec.flow_check = spec.flow_check || flow;
    if (!out_path.empty())
        spec.out_path = out_path;

    const AnalysisOutcome outcome = analyze_system(spec);
    std::cout << outcome.summary;
    if (!spec.out_path.empty()) {
        std::ofstream out(spec.out_path);
        if (!out) {
            std::cerr << "cannot write report to " << spec.out_path << "\n";
            return outcome.exit_code == 0 ? 1 : outcome.exit_code;
        }
        out << outcome.report.dump(2) << "\n";
        std::cout << "report written to " << spec.out_path << "\n";
    } else {
        std::cout << outcome.report.dump(2) << "\n";
    }
    return outcome.exit_code;
}

int run_oracle_check(std::vector<std::string> groups, int max_grade) {
    if (groups.empty())
        groups = {"so2", "so3", "su2"};
    bool all_ok = true;

    for (const std::string& name : groups) {
        try {
            const MatrixRep rep = builtin_rep(name);
            auto basis = std::make_shared<const CentralizerBasis>(compute_centralizer(rep));

            std::size_t pairs = 0, mismatches = 0;
            std::vector<BasisElement> elems;
            for (int p = 0; p <= basis->s(); ++p)
                for (int k = 0; k <= max_grade; ++k)
                    elems.push_back(BasisElement{p, k});
            for (const BasisElement& e1 : elems) {
                for (const BasisElement& e2 : elems) {
                    QuasilinearField table(basis);
                    for (const auto& [c, e] : structure_bracket(e1, e2, *basis))
                        table.add_coeff(e.p, e.k, c);
                    const PolyVectorField brute =
                        bracket(expand_element(*basis, e1.p, e1.k), expand_element(*basis, e2.p, e2.k));
                    if (expand(table) != brute)
                        ++mismatches;
                    ++pairs;
                }
            }
            const bool ok = mismatches == 0;
            all_ok = all_ok && ok;
            std::cout << (ok ? "PASS" : "FAIL") << " " << name << " structure constants vs polynomial bracket ("
                      << pairs << " pairs, grades <= " << max_grade << ")\n";

            if (basis->schur_type == SchurType::QUATERNIONIC) {
                const bool rel = verify_quaternion_relations(*basis);
                all_ok = all_ok && rel;
                std::cout << (rel ? "PASS" : "FAIL") << " " << name << " quaternion relations\n";
            }
            std::cout << "PASS " << name << " commutant dimension " << basis->s() + 1 << " ("
                      << to_string(basis->schur_type) << ")\n";
        } catch (const std::exception& err) {
            all_ok = false;
            std::cout << "FAIL " << name << ": " << err.what() << "\n";
        }
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant normal forms for systems with compact simple symmetry"};
    app.require_subcommand(1);

    std::string spec_path;
    std::optional<int> order;
    bool renormalize = false;
    bool flow = false;
    std::string out_path;

    CLI::App* analyze = app.add_subcommand("analyze", "classify, normalize and report one system");
    analyze->add_option("spec", spec_path, "system spec JSON file")->required();
    analyze->add_option("--order", order, "truncation order (powers of r^2)");
    analyze->add_flag("--renormalize", renormalize, "run the applicable renormalization after normalizing");
    analyze->add_flag("--flow-check", flow, "run the numeric flow-conjugacy harness");
    analyze->add_option("--out", out_path, "write the JSON report here instead of stdout");

    std::vector<std::string> groups;
    int max_grade = 4;
    CLI::App* oracle = app.add_subcommand("oracle-check", "verify structure constants against the polynomial bracket");
    oracle->add_option("--group", groups, "builtin group (repeatable; default: all)");
    oracle->add_option("--max-grade", max_grade, "largest power of r^2 to test")->check(CLI::Range(0, 12));

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed())
            return run_analyze(spec_path, order, renormalize, flow, out_path);
        return run_oracle_check(groups, max_grade);
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 1;
    }
}
