#pragma once

#include "equinorm/flow.hpp"
#include "equinorm/renorm.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace equinorm {

using Json = nlohmann::ordered_json;

// Wire formats. Components and channels are 1-based on the wire, 0-based in
// memory; rationals travel as decimal numerator/denominator strings.

Json pvf_to_json(const PolyVectorField& f);
PolyVectorField pvf_from_json(const Json& j);

Json rep_to_json(const MatrixRep& rep);
MatrixRep rep_from_json(const Json& j);

Json qf_to_json(const QuasilinearField& q);
QuasilinearField qf_from_json(const Json& j, std::shared_ptr<const CentralizerBasis> basis);

Json spectrum_to_json(const SpectrumInfo& spec);
Json diagnostics_to_json(const ConvergenceVerdict& verdict);
Json nf_result_to_json(const NormalFormResult& result);
Json renorm_to_json(const RenormalizedForm& form);
Json flow_report_to_json(const FlowCheckReport& report);

/// Batch job description as read from a spec file plus CLI overrides.
struct SystemSpec {
    std::string group_name;               // builtin name, empty for custom
    std::optional<MatrixRep> custom_rep;
    std::vector<std::tuple<int, int, Rat>> quasilinear; // (p, k, coefficient)
    std::optional<PolyVectorField> raw_field;
    bool has_quasilinear = false;
    int order = 6;
    bool renormalize = false;
    bool flow_check = false;
    std::string out_path;
};

/// Throws ValidationError on malformed or inconsistent input.
SystemSpec parse_system_spec(const Json& j);

struct AnalysisOutcome {
    int exit_code = 0; // 0 ok, 1 internal, 2 validation, 3 inapplicable
    Json report;
    std::string summary;
};

/// Full pipeline: equivariance/validation, classification, normalization,
/// optional renormalization and flow check. Never throws; failures are
/// encoded in the exit code and report.
AnalysisOutcome analyze_system(const SystemSpec& spec);

} // namespace equinorm
