#pragma once

#include <stdexcept>
#include <string>

namespace bracecalc {

// Base class for every failure the library signals deliberately.  Each
// subclass corresponds to one documented failure mode; code() is the stable
// machine-readable name that also appears in CLI error output.
class CalcError : public std::runtime_error {
public:
    CalcError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define BRACECALC_ERROR(NAME)                                              \
    class NAME : public CalcError {                                        \
    public:                                                                \
        explicit NAME(const std::string& what) : CalcError(#NAME, what) {} \
    }

// arithmetic
BRACECALC_ERROR(OverflowError);      // int64 rational arithmetic left the representable range

// graded Lie algebra
BRACECALC_ERROR(MixedDegree);        // combining terms of different degrees or views
BRACECALC_ERROR(UnknownGenerator);   // element references a generator the algebra lacks
BRACECALC_ERROR(CapTooSmall);        // requested degree cap below the largest generator degree

// homotopy tables
BRACECALC_ERROR(MissingEntry);       // (space, degree) not present in the table
BRACECALC_ERROR(SchemaError);        // table document malformed or self-contradictory

// fibration calculus
BRACECALC_ERROR(InvalidPairing);     // pairing table violates degrees or Jacobi; message carries the witness
BRACECALC_ERROR(DegreeOutOfRange);   // brace arguments outside the supported degree window
BRACECALC_ERROR(BaseMismatch);       // product-fibration inputs disagree on the base
BRACECALC_ERROR(Unsupported);        // descriptor kind/instance outside the implemented calculus

// clutching / J-homomorphism
BRACECALC_ERROR(NoLift);             // no vector-bundle lift exists; rectified splitting unavailable
BRACECALC_ERROR(AuditFailure);       // exact-sequence data fails an exactness or commuting-square check

// CLI
BRACECALC_ERROR(UnknownSuite);       // verify invoked with an unknown property-suite name

#undef BRACECALC_ERROR

} // namespace bracecalc
