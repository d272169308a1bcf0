#pragma once

#include <stdexcept>
#include <string>

namespace stratoflow {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A multiplier was applied outside its domain (e.g. inverse horizontal
// laplacian on a field with nonzero n_h = 0 content).
struct DomainError : Error { using Error::Error; };

// k + m != n in a triad argument.
struct ConstraintError : Error { using Error::Error; };

// Exact resonance decision requested without rational torus squares.
struct ExactnessError : Error { using Error::Error; };

// Eigenframe quantity requested at a frequency with n_h = 0.
struct DegenerateError : Error { using Error::Error; };

// A claimed divergence-free field has energy outside span{e0,e+,e-}.
struct ResidualError : Error { using Error::Error; };

// certify_nonresonant found a resonant triad; message names it.
struct ResonantDomainError : Error { using Error::Error; };

// An operation required a NonResonanceCertificate and none was supplied.
struct CertificateError : Error { using Error::Error; };

// A corrector divisor fell below the small-divisor floor.
struct DivisorError : Error { using Error::Error; };

// H^s guard tripped during time stepping.
struct BlowupError : Error { using Error::Error; };

// Malformed initial-data recipe.
struct RecipeError : Error { using Error::Error; };

// Manifest parse/validation failure (carries a line number when known).
struct ValidationError : Error { using Error::Error; };

}  // namespace stratoflow
