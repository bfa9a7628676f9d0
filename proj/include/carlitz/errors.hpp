#ifndef CARLITZ_ERRORS_HPP
#define CARLITZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace carlitz {

// Base error. `code()` returns a stable machine-readable tag that the CLI
// maps to JSON error bodies and tests match against.
class error : public std::runtime_error {
   public:
    error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

   private:
    std::string code_;
};

#define CARLITZ_DEFINE_ERROR(NAME)                                     \
    class NAME : public error {                                        \
       public:                                                         \
        explicit NAME(const std::string& what) : error(#NAME, what) {} \
    }

CARLITZ_DEFINE_ERROR(NonPrimeCharacteristic);
CARLITZ_DEFINE_ERROR(UnsupportedSize);
CARLITZ_DEFINE_ERROR(DivisionByZeroPoly);
CARLITZ_DEFINE_ERROR(FieldMismatch);
CARLITZ_DEFINE_ERROR(InvertZeroToTruncation);
CARLITZ_DEFINE_ERROR(VariableMismatch);
CARLITZ_DEFINE_ERROR(PrecisionExhausted);
CARLITZ_DEFINE_ERROR(EmptyInput);
CARLITZ_DEFINE_ERROR(NotContracting);
CARLITZ_DEFINE_ERROR(DomainMismatch);
CARLITZ_DEFINE_ERROR(DivergentEvaluation);
CARLITZ_DEFINE_ERROR(NonUnitConstantTerm);
CARLITZ_DEFINE_ERROR(NotUnipotentFactor);
CARLITZ_DEFINE_ERROR(StabilizationFailure);
CARLITZ_DEFINE_ERROR(NonMonicInput);
CARLITZ_DEFINE_ERROR(NonpositiveWeight);
CARLITZ_DEFINE_ERROR(CrossCheckFailed);
CARLITZ_DEFINE_ERROR(IdentityFailed);
CARLITZ_DEFINE_ERROR(ContractionDiverged);
CARLITZ_DEFINE_ERROR(PoleHit);
CARLITZ_DEFINE_ERROR(StepLimitExceeded);
CARLITZ_DEFINE_ERROR(IndistinguishableFromKInfinity);

#undef CARLITZ_DEFINE_ERROR

}  // namespace carlitz

#endif
