#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bilin2d/angular.hpp"
#include "bilin2d/control_set.hpp"
#include "bilin2d/delta.hpp"
#include "bilin2d/larc.hpp"
#include "bilin2d/mat2.hpp"
#include "bilin2d/sim.hpp"
#include "bilin2d/spectrum.hpp"

namespace bilin2d {

/// Parsed system input: the matrix pair, the admissible controls and an
/// optional display label.
struct SystemDescription {
    Mat2 a;
    Mat2 b;
    ControlSet control_set = ControlSet::reals();
    std::string label;

    friend bool operator==(const SystemDescription&, const SystemDescription&) = default;
};

/// Raised on malformed input files; `where` is "path:line:col" for syntax
/// errors and "path: $.pointer" for schema violations.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parse a system from JSON text.  `origin` names the source (file path)
/// used to anchor error messages.
SystemDescription parse_system(const std::string& json_text, const std::string& origin);

struct AnalysisOptions {
    double eps = 1e-9;
    std::uint64_t seed = kDefaultCertificateSeed;
    int random_budget = 256;
    int grid_n = 2001;
    double u_max = 1000.0;

    friend bool operator==(const AnalysisOptions&, const AnalysisOptions&) = default;
};

/// Indicator value of one canonical bracket pair, e.g. {"(B,[A,B])", 4}.
struct NamedIndicator {
    std::string pair;
    double value = 0.0;

    friend bool operator==(const NamedIndicator&, const NamedIndicator&) = default;
};

struct LarcReport {
    LarcVerdict verdict;
    int basis_dim = 0;
    std::vector<std::string> basis_words;
    /// Indicators of the canonical bracket pairs up to depth two, in a fixed
    /// order: (A,B), (A,[A,B]), (B,[A,B]), (A,[A,[A,B]]), (B,[A,[A,B]]),
    /// (A,[B,[A,B]]), (B,[B,[A,B]]), ([A,B],[A,[A,B]]), ([A,B],[B,[A,B]]).
    std::vector<NamedIndicator> canonical_indicators;
    double shortcut_indicator_ab = 0.0;     // indicator(A, B)
    double shortcut_det_a_bracket = 0.0;    // det(A) det([A,B])
    double shortcut_det_b_bracket = 0.0;    // det(B) det([A,B])

    friend bool operator==(const LarcReport&, const LarcReport&) = default;
};

struct DeltaReport {
    DeltaQuadratic quadratic;
    std::optional<std::pair<double, double>> extremum;  // (u*, Delta(u*))
    DeltaClassification classification;

    friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

struct AngularReport {
    ProjectiveControllability controllability;
    AngularCase case_at_zero;
    std::optional<AngularCase> case_at_witness;

    friend bool operator==(const AngularReport&, const AngularReport&) = default;
};

struct AnalysisReport {
    SystemDescription system;
    AnalysisOptions options;
    LarcReport larc;
    DeltaReport delta;
    AngularReport angular;
    SpectrumSummary spectrum;
    ControllabilityVerdict verdict;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Run the full pipeline.  Deterministic: equal inputs and options produce
/// equal reports (including the randomized certificate search, which is
/// seeded from options.seed).
AnalysisReport analyze(const SystemDescription& sys, const AnalysisOptions& opts = {});

/// JSON serialization.  report_from_json(report_to_json(r)) == r.
std::string report_to_json(const AnalysisReport& r, int indent = 2);
AnalysisReport report_from_json(const std::string& json_text);

/// Human-readable summary (6 significant digits).
std::string report_to_text(const AnalysisReport& r);

/// Process exit code for a verdict: 0 controllable, 1 not controllable,
/// 2 inconclusive.
int exit_code_for(ControllabilityStatus s);

}  // namespace bilin2d
