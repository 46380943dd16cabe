#include "test_util.hpp"

#include "equinorm/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

using namespace equinorm;
using namespace equinorm::testutil;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(EQUINORM_BIN) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string data_file(const std::string& name) {
    return std::string(EQUINORM_TEST_DATA) + "/" + name;
}

} // namespace

TEST_CASE("polynomial field JSON round trip") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 5; ++trial) {
        const PolyVectorField f = random_field(rng, 3, 4, 8);
        const PolyVectorField back = pvf_from_json(pvf_to_json(f));
        CHECK(back == f);
    }
    // Components are 1-based on the wire.
    PolyVectorField one(2);
    one.add_term(1, Monomial{{0, 1}}, Rat(3, 7));
    const Json j = pvf_to_json(one);
    CHECK(j["terms"][0]["component"] == 2);
    CHECK(j["terms"][0]["num"] == "3");
    CHECK(j["terms"][0]["den"] == "7");

    CHECK_THROWS_AS(pvf_from_json(Json{{"dim", 2},
                                       {"terms", Json::array({Json{{"component", 3},
                                                                   {"exponents", Json::array({0, 1})},
                                                                   {"num", "1"},
                                                                   {"den", "1"}}})}}),
                    ValidationError);
}

TEST_CASE("representation JSON round trip") {
    const MatrixRep rep = builtin_rep("su2");
    const MatrixRep back = rep_from_json(rep_to_json(rep));
    CHECK(back.dim == rep.dim);
    CHECK(back.generators == rep.generators);
    CHECK(back.name == rep.name);
}

TEST_CASE("quasilinear JSON round trip") {
    std::mt19937 rng(56);
    const auto su2 = basis_for("su2");
    const QuasilinearField q = random_qf(rng, su2, 4);
    const QuasilinearField back = qf_from_json(qf_to_json(q), su2);
    CHECK(back.same_coeffs(q));
}

TEST_CASE("system spec validation") {
    CHECK_THROWS_AS(parse_system_spec(Json{{"field", Json{{"quasilinear", Json::array()}}}}),
                    ValidationError);
    CHECK_THROWS_AS(parse_system_spec(Json{{"group", "sp8"}, {"field", Json{{"quasilinear", Json::array()}}}}),
                    ValidationError);
    // Exactly one field form.
    Json both{{"group", "so2"},
              {"field", Json{{"quasilinear", Json::array()}, {"raw", Json{{"dim", 2}, {"terms", Json::array()}}}}}};
    CHECK_THROWS_AS(parse_system_spec(both), ValidationError);
    Json neither{{"group", "so2"}, {"field", Json::object()}};
    CHECK_THROWS_AS(parse_system_spec(neither), ValidationError);
}

TEST_CASE("analysis pipeline, case A end to end") {
    Json j{{"group", "so3"},
           {"field", Json{{"quasilinear", Json::array({Json{{"p", 0}, {"k", 0}, {"coeff", "1"}},
                                                       Json{{"p", 0}, {"k", 1}, {"coeff", "1"}}})}}},
           {"order", 4},
           {"flow_check", true}};
    const AnalysisOutcome out = analyze_system(parse_system_spec(j));
    CHECK(out.exit_code == 0);
    CHECK(out.report.at("case") == "A");
    CHECK(out.report.at("schema") == "1");
    CHECK(out.report.at("schur_type") == "REAL");
    CHECK(out.report.at("normal_form").at("diagnostics").at("verdict") == "CONVERGENT");
    REQUIRE(out.report.at("flow_check").is_object());
    const Json& fo = out.report.at("flow_check").at("fitted_order");
    REQUIRE(fo.is_number());
    CHECK(fo.get<double>() >= 4.5);
}

TEST_CASE("analysis rejects non-equivariant raw fields with a residual") {
    std::ifstream in(data_file("bad_equivariance.json"));
    Json j;
    in >> j;
    const AnalysisOutcome out = analyze_system(parse_system_spec(j));
    CHECK(out.exit_code == 2);
    CHECK_FALSE(out.report.at("equivariance").at("ok").get<bool>());
    CHECK(out.report.at("equivariance").contains("violations"));
}

TEST_CASE("analysis accepts equivariant raw fields") {
    const auto so3 = basis_for("so3");
    QuasilinearField q(so3);
    q.set_coeff(0, 0, Rat(1));
    q.set_coeff(0, 1, Rat(1, 2));
    Json j{{"group", "so3"}, {"field", Json{{"raw", pvf_to_json(expand(q))}}}, {"order", 4}};
    const AnalysisOutcome out = analyze_system(parse_system_spec(j));
    CHECK(out.exit_code == 0);
    CHECK(out.report.at("case") == "A");
    // The report's field coefficients parse back to the decomposed input.
    const QuasilinearField back = qf_from_json(out.report.at("field"), so3);
    CHECK(back.same_coeffs(q));
}

TEST_CASE("analysis renormalizes the su2 rotation fixture") {
    std::ifstream in(data_file("lemma2_su2.json"));
    Json j;
    in >> j;
    const AnalysisOutcome out = analyze_system(parse_system_spec(j));
    CHECK(out.exit_code == 0);
    CHECK(out.report.at("case") == "C3");
    const Json& renorm = out.report.at("renormalized");
    REQUIRE(renorm.is_object());
    CHECK(renorm.at("case") == "C3_LEMMA2");
    CHECK(renorm.at("mu") == 1);
    CHECK(renorm.at("converged") == true);
    // Survivor channels stay within the documented shape.
    for (const Json& s : renorm.at("survivors")) {
        const int p = s.at("p").get<int>();
        const int k = s.at("k").get<int>();
        if (p == 0)
            CHECK((k == 1 || k == 2));
        else
            CHECK(k <= 1);
    }
}

TEST_CASE("analysis reports the ineffective renormalization case") {
    std::ifstream in(data_file("ineffective.json"));
    Json j;
    in >> j;
    const AnalysisOutcome out = analyze_system(parse_system_spec(j));
    CHECK(out.exit_code == 3);
    CHECK(out.report.contains("error"));
}

TEST_CASE("reports are deterministic up to the timestamp") {
    std::ifstream in(data_file("case_a.json"));
    Json j;
    in >> j;
    const SystemSpec spec = parse_system_spec(j);
    AnalysisOutcome a = analyze_system(spec);
    AnalysisOutcome b = analyze_system(spec);
    a.report.erase("generated_at");
    b.report.erase("generated_at");
    CHECK(a.report.dump() == b.report.dump());
}

TEST_CASE("normal form report coefficients re-parse to the computed field") {
    const auto so2 = basis_for("so2");
    QuasilinearField q(so2);
    q.set_coeff(0, 0, Rat(2));
    q.set_coeff(1, 0, Rat(3));
    q.set_coeff(0, 2, Rat(5, 3));
    const NormalFormResult res = normalize(q, 6);
    const Json j = nf_result_to_json(res);
    const QuasilinearField back = qf_from_json(j.at("normal_form"), so2);
    CHECK(back.same_coeffs(res.nf));
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("analyze " + data_file("case_a.json") + " --flow-check --out /tmp/equinorm_a.json") == 0);
    CHECK(run_cli("analyze " + data_file("bad_equivariance.json") + " --out /tmp/equinorm_b.json") == 2);
    CHECK(run_cli("analyze " + data_file("ineffective.json") + " --out /tmp/equinorm_c.json") == 3);
    CHECK(run_cli("analyze /nonexistent.json") == 2);
    CHECK(run_cli("oracle-check --max-grade 3") == 0);

    // The partial report is still written on inapplicable-case failures.
    std::ifstream in("/tmp/equinorm_c.json");
    REQUIRE(in.good());
    Json j;
    in >> j;
    CHECK(j.at("case") == "ZERO_LINEAR");
    CHECK(j.contains("error"));
}
