#pragma once

#include <stdexcept>
#include <string>

namespace grlat {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- input / construction errors ---------------------------------------------

struct PrimeMismatch : Error { using Error::Error; };
struct NotPLocal : Error { using Error::Error; };        // p divides a denominator
struct DimensionMismatch : Error { using Error::Error; };
struct UnsupportedPrime : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

// -- mathematical preconditions ----------------------------------------------

struct NotInR : Error { using Error::Error; };
struct NotSublattice : Error { using Error::Error; };
struct DegenerateForm : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct InconsistentType : Error { using Error::Error; };
struct NotFree : Error { using Error::Error; };
struct InRadical : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct NotUnimodularSummand : Error { using Error::Error; };

// A theorem-backed postcondition failed.  This must never happen on valid
// input; it aborts the computation loudly instead of returning garbage.
struct InternalContradiction : Error { using Error::Error; };

struct Cancelled : Error { using Error::Error; };

}  // namespace grlat
