#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "pilab/cnf.hpp"

namespace pilab {

/// Reads DIMACS CNF: "c" comment lines, one "p cnf <n> <m>" header, then m
/// zero-terminated clauses that may span lines. A line consisting of "%"
/// ends the input (SATLIB convention). Throws ParseError with the offending
/// line number. Tautological clauses are kept; duplicate literals collapse.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);

/// One clause per line, literals in clause order. Each comment becomes a
/// "c " line ahead of the header.
std::string to_dimacs(const CnfFormula& formula, std::span<const std::string> comments = {});

}  // namespace pilab
