#pragma once

// Element literals and arithmetic expressions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*          a/b means a * inv(b)
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] int)?
//   primary := int | symbol | 'inv(' expr ')' | '(' expr ')'
//            | '(' expr (',' expr)+ ')'             tuple, Sum rings
//            | '[' '[' expr (',' expr)* ']' (',' '[' ... ']')* ']'   matrix
//
// Symbols: g (GF(p^k) generator), i j k (quaternion units), eps (dual
// unit), eNM (matrix unit, 1-based). A literal or symbol that does not
// belong to the current ring is read in the base ring and embedded as a
// scalar, so "i" in M(2,Quat(Q)) is the scalar matrix i*I.

#include <string>
#include <string_view>
#include <vector>

#include "staudtlab/ring.hpp"

namespace staudt {

std::string render_payload(const RingLayout& layout, const Rational* atoms);

Element parse_element(const Ring& ring, std::string_view text);

/// Splits at commas that are not nested inside brackets or parentheses.
std::vector<std::string> split_top_level(std::string_view text, char separator = ',');

}  // namespace staudt
