#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "bilin2d/angular.hpp"
#include "bilin2d/control_set.hpp"
#include "bilin2d/delta.hpp"
#include "bilin2d/interval.hpp"
#include "bilin2d/larc.hpp"
#include "bilin2d/mat2.hpp"

namespace bilin2d {

/// Eigenvalues of A + uB via (tr(A) + u tr(B) +- sqrt(Delta(u))) / 2,
/// ordered by real part then imaginary part.
std::array<std::complex<double>, 2> eigenvalues_of_pencil(const Mat2& a, const Mat2& b,
                                                          double u);

/// Which criterion settled the interior test for 0 in the closure of the
/// attainable real parts.
enum class LemmaTag {
    None,          // not settled (projective controllability missing)
    TraceNonzero,  // tr(B) != 0 forces 0 into the interior
    TraceZeroIff,  // tr(B) = 0: interior iff tr^2(AB) - 4 det(AB) > 0
};

const char* to_string(LemmaTag tag);
std::optional<LemmaTag> lemma_tag_from_string(const std::string& s);

struct ZeroInteriorResult {
    bool zero_in_interior = false;
    LemmaTag lemma = LemmaTag::None;
    /// tr^2(AB) - 4 det(AB); decisive when tr(B) = 0.
    double trace_zero_test_value = 0.0;

    friend bool operator==(const ZeroInteriorResult&, const ZeroInteriorResult&) = default;
};

/// Test whether 0 lies in the interior of the attainable real-part set.
/// Valid only under projective controllability; with pcontrollable == false
/// the result is not settled and lemma stays None.
ZeroInteriorResult zero_in_interior_sigma_re(const Mat2& a, const Mat2& b,
                                             bool pcontrollable,
                                             const Tolerance& tol = {});

/// Attainable eigenvalue real parts over U, computed on a sample grid
/// (grid_n >= 2 points, plus the Delta roots and vertex when admissible) as
/// a union of closed intervals.  Unbounded U is clipped to [-u_max, u_max].
/// Every reported endpoint is an attained sample value.
std::vector<Interval> sigma_re_range(const Mat2& a, const Mat2& b, const ControlSet& u,
                                     int grid_n = 2001, double u_max = 1000.0);

struct SpectrumSummary {
    double trace_b = 0.0;
    std::vector<Interval> re_range;
    bool zero_in_interior = false;
    LemmaTag lemma_used = LemmaTag::None;
    double trace_zero_test_value = 0.0;

    friend bool operator==(const SpectrumSummary&, const SpectrumSummary&) = default;
};

SpectrumSummary summarize_spectrum(const Mat2& a, const Mat2& b, const ControlSet& u,
                                   bool pcontrollable, int grid_n = 2001,
                                   double u_max = 1000.0, const Tolerance& tol = {});

enum class ControllabilityStatus { Controllable, NotControllable, Inconclusive };

const char* to_string(ControllabilityStatus s);
std::optional<ControllabilityStatus> status_from_string(const std::string& s);

/// One evaluated condition in the decision chain.
struct VerdictReason {
    std::string condition;
    bool holds = false;
    std::string evidence;

    friend bool operator==(const VerdictReason&, const VerdictReason&) = default;
};

struct ControllabilityVerdict {
    ControllabilityStatus status = ControllabilityStatus::Inconclusive;
    std::vector<VerdictReason> reasons;

    friend bool operator==(const ControllabilityVerdict&, const ControllabilityVerdict&) = default;
};

/// Combine the two necessary conditions (rank condition, attainable
/// contraction/expansion of directions) with the spectral sufficiency tests:
///   rank condition fails            -> NotControllable
///   Delta never negative on U       -> NotControllable
///   tr(B) != 0                      -> Controllable
///   tr(B) = 0, trace-zero test > 0  -> Controllable
///   otherwise                       -> Inconclusive (never NotControllable:
///                                      0 outside the interior only blocks
///                                      this sufficiency route)
ControllabilityVerdict combine_verdict(const LarcVerdict& larc,
                                       const ProjectiveControllability& pc,
                                       const ZeroInteriorResult& interior,
                                       double trace_b);

struct VerdictOptions {
    Tolerance tol{};
    std::uint64_t seed = kDefaultCertificateSeed;
    int random_budget = 256;
};

/// Full decision pipeline for the pair (A, B) over the control set U.
ControllabilityVerdict controllability_verdict(const Mat2& a, const Mat2& b,
                                               const ControlSet& u,
                                               const VerdictOptions& opts = {});

}  // namespace bilin2d
