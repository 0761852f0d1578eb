#pragma once

#include <string_view>
#include <vector>

#include "hklab/polynomial.hpp"

namespace hklab {

/// Parses a polynomial expression over `ring`.
///
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := primary ('^' natural)?
///   primary := integer | identifier | '(' expr ')'
///
/// Identifiers are ring variables, the field parameter (F_p(t)) or the
/// extension generator `a` (F_{p^k}). Division is only allowed by nonzero
/// constants. Juxtaposition such as `2x` is rejected.
///
/// Throws SyntaxError (with position) or UnknownVariable.
Polynomial parse_polynomial(std::string_view text, const RingRef& ring);
Polynomial parse_polynomial(std::string_view text, const RingPresentation& ring);

/// Parses a coefficient written in the printed form of `field`.
FieldElement parse_field_element(std::string_view text, const Field& field);

/// Splits a comma-separated polynomial list and parses every entry.
std::vector<Polynomial> parse_polynomial_list(std::string_view text, const RingRef& ring);

}  // namespace hklab
