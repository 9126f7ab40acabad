#ifndef GFUN_ERRORS_HPP
#define GFUN_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace gfun {

// Every domain failure carries a stable machine-readable code (used by the
// CLI to map errors to JSON) plus a human message. Parse errors additionally
// carry a source span.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace err {

inline Error precision_exhausted(const std::string& what) {
    return Error("PrecisionExhausted", what);
}
inline Error degenerate_witness(const std::string& what) {
    return Error("DegenerateWitness", what);
}
inline Error no_witness_found(const std::string& what) {
    return Error("NoWitnessFound", what);
}
inline Error division_by_non_unit(const std::string& what) {
    return Error("DivisionByNonUnit", what);
}
inline Error tail_unbounded(const std::string& what) {
    return Error("TailUnbounded", what);
}
inline Error inadmissible_witness(const std::string& what) {
    return Error("InadmissibleWitness", what);
}
inline Error branch_cut(const std::string& what) {
    return Error("BranchCut", what);
}
inline Error singular_center(const std::string& what) {
    return Error("SingularCenter", what);
}
inline Error step_too_close(const std::string& what) {
    return Error("StepTooClose", what);
}
inline Error wronskian_vanishes(const std::string& what) {
    return Error("WronskianVanishes", what);
}
inline Error abel_violation(const std::string& what) {
    return Error("AbelViolation", what);
}
inline Error fit_inconsistent(const std::string& what) {
    return Error("FitInconsistent", what);
}
inline Error truncation_inconclusive(const std::string& what) {
    return Error("TruncationInconclusive", what);
}
inline Error degenerate_gamma(const std::string& what) {
    return Error("DegenerateGamma", what);
}
inline Error oscillation_unresolved(const std::string& what) {
    return Error("OscillationUnresolved", what);
}
inline Error near_singular(const std::string& what) {
    return Error("NearSingular", what);
}
inline Error fit_diverged(const std::string& what) {
    return Error("FitDiverged", what);
}
inline Error radius_too_small(const std::string& what) {
    return Error("RadiusTooSmall", what);
}
inline Error precondition(const std::string& what) {
    return Error("PreconditionViolated", what);
}
inline Error non_polynomial(const std::string& what) {
    return Error("NonPolynomial", what);
}
inline Error schema(const std::string& what) {
    return Error("SchemaError", what);
}

} // namespace err

// Parse failure with a byte span into the offending source text.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t offset, std::size_t length)
        : Error("SyntaxError", message + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset), length_(length) {}

    std::size_t offset() const noexcept { return offset_; }
    std::size_t length() const noexcept { return length_; }

private:
    std::size_t offset_;
    std::size_t length_;
};

} // namespace gfun

#endif
