#pragma once

// Desk-scale knot invariants of a DiagramCode: Kauffman bracket, Jones
// polynomial, and the determinant |Delta(-1)|.

#include <map>
#include <string>

#include "knotforge/diagram.hpp"

namespace knotforge {

// Integer Laurent polynomial in one variable with exponents in quarter
// steps: key e stands for x^(e/4).
class LaurentPoly {
public:
  LaurentPoly() = default;
  static LaurentPoly monomial(long long coeff, int quarter_exp);

  const std::map<int, long long>& terms() const { return terms_; }
  long long coeff(int quarter_exp) const;
  void add(int quarter_exp, long long c);
  bool is_zero() const { return terms_.empty(); }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly mirror() const;  // x -> 1/x
  // Value at x = -1 when all exponents are integral. Throws InvalidArgument otherwise.
  long long at_minus_one() const;

  // "-t^-4 + t^-3 + t^-1"; quarter exponents print as fractions.
  std::string to_string(const std::string& var) const;

private:
  std::map<int, long long> terms_;
};

inline constexpr int kBracketMaxCrossings = 24;

// Bracket in the variable A. Throws TooManyCrossings above the cutoff,
// InvalidDiagram for malformed codes.
LaurentPoly kauffman_bracket(const DiagramCode& code);
LaurentPoly kauffman_bracket_serial(const DiagramCode& code);

// V(t) = (-A^3)^(-w) <D> with t = A^-4.
LaurentPoly jones_from_bracket(const LaurentPoly& bracket, int writhe);
LaurentPoly jones(const DiagramCode& code);

// |det| of a first minor of the coloring matrix; 1 for the empty diagram.
long long alexander_determinant(const DiagramCode& code);

}  // namespace knotforge
