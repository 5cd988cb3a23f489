#pragma once

#include <stdexcept>
#include <string>

namespace flowering {

enum class Errc {
    composite_modulus,
    too_small,
    division_by_zero,
    pairing_violation,
    not_involution,
    empty_subset,
    size_mismatch,
    shape_mismatch,
    invalid_cut_collection,
    not_generating,
    identity_in_generators,
    disconnected,
    coverage_failure,
    bad_congruence,
    too_few_solutions,
    singular_matrix,
    length_mismatch,
    too_large,
    budget_exceeded,
    field_too_large,
    empty_leaves,
    malformed_proof,
    invalid_argument,
    parse_error,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::composite_modulus: return "CompositeModulus";
    case Errc::too_small: return "TooSmall";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::pairing_violation: return "PairingViolation";
    case Errc::not_involution: return "NotInvolution";
    case Errc::empty_subset: return "EmptySubset";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::invalid_cut_collection: return "InvalidCutCollection";
    case Errc::not_generating: return "NotGenerating";
    case Errc::identity_in_generators: return "IdentityInS";
    case Errc::disconnected: return "Disconnected";
    case Errc::coverage_failure: return "CoverageFailure";
    case Errc::bad_congruence: return "BadCongruence";
    case Errc::too_few_solutions: return "TooFewSolutions";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::too_large: return "TooLarge";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::field_too_large: return "FieldTooLarge";
    case Errc::empty_leaves: return "EmptyLeaves";
    case Errc::malformed_proof: return "MalformedProof";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace flowering
