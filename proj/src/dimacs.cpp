#include "pilab/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <vector>

#include "pilab/errors.hpp"

namespace pilab {

namespace {

std::optional<long long> parse_integer(std::string_view token) {
  long long value = 0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  std::optional<long long> num_vars;
  long long num_clauses = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  std::size_t line_no = 0;

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0][0] == 'c') continue;
    if (tokens[0] == "%") break;

    if (tokens[0] == "p") {
      if (num_vars) throw ParseError(line_no, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf")
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      auto n = parse_integer(tokens[2]);
      auto m = parse_integer(tokens[3]);
      if (!n || !m || *n < 1 || *m < 0)
        throw ParseError(line_no, "malformed header counts");
      num_vars = *n;
      num_clauses = *m;
      continue;
    }

    if (!num_vars) throw ParseError(line_no, "clause before 'p cnf' header");
    for (std::string_view token : tokens) {
      auto value = parse_integer(token);
      if (!value) throw ParseError(line_no, "non-integer token '" + std::string(token) + "'");
      if (*value == 0) {
        if (static_cast<long long>(clauses.size()) >= num_clauses)
          throw ParseError(line_no, "more clauses than the " + std::to_string(num_clauses) +
                                        " declared");
        clauses.emplace_back(std::move(pending));
        pending.clear();
        continue;
      }
      if (*value > *num_vars || *value < -*num_vars)
        throw ParseError(line_no, "literal " + std::string(token) + " exceeds declared n = " +
                                      std::to_string(*num_vars));
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Literal::from_dimacs(*value));
    }
  }

  if (!num_vars) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(pending_line, "clause not terminated by 0");
  if (static_cast<long long>(clauses.size()) != num_clauses)
    throw ParseError(line_no, "clause count mismatch: header declares " +
                                  std::to_string(num_clauses) + ", found " +
                                  std::to_string(clauses.size()));
  return CnfFormula(static_cast<Var>(*num_vars), std::move(clauses));
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string to_dimacs(const CnfFormula& formula, std::span<const std::string> comments) {
  std::ostringstream out;
  for (const std::string& comment : comments) out << "c " << comment << '\n';
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const Clause& clause : formula.clauses()) {
    for (Literal lit : clause.literals()) out << lit.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace pilab
