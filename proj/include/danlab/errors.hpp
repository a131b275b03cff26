#pragma once

#include <stdexcept>
#include <string>

namespace danlab {

// Error families map onto the CLI exit codes (sysexits-style):
// domain validation -> 2, usage -> 64, broken internal invariant -> 70.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define DANLAB_DOMAIN_ERROR(Name)                                              \
    struct Name : DomainError {                                                \
        explicit Name(const std::string& what = #Name)                         \
            : DomainError(std::string(#Name) + ": " + what) {}                 \
    }

DANLAB_DOMAIN_ERROR(ZeroPolynomial);
DANLAB_DOMAIN_ERROR(NotSquarefree);
DANLAB_DOMAIN_ERROR(NotOnSurface);
DANLAB_DOMAIN_ERROR(DuplicatePoint);
DANLAB_DOMAIN_ERROR(MixedSurfaces);
DANLAB_DOMAIN_ERROR(ExactBackendUnsupported);
DANLAB_DOMAIN_ERROR(DuplicateNode);
DANLAB_DOMAIN_ERROR(NoExactFlowTime);
DANLAB_DOMAIN_ERROR(NotInjective);
DANLAB_DOMAIN_ERROR(ExhaustedAttempts);
DANLAB_DOMAIN_ERROR(SearchDiverged);
DANLAB_DOMAIN_ERROR(InfeasibleRegion);
DANLAB_DOMAIN_ERROR(BoundNotAchievable);
DANLAB_DOMAIN_ERROR(InjectivityLost);
DANLAB_DOMAIN_ERROR(ParseError);

#undef DANLAB_DOMAIN_ERROR

}  // namespace danlab
