#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "distil/rational.hpp"
#include "distil/tensor.hpp"

// Exact symbolic algebra over tensor words of the pair projectors, with
// rational coefficients. A word assigns one symbol per register pair; the
// partial transpose acts position-wise through the four exact substitution
// relations, carrying {P,Q} words to {R,S} words and back. Words over
// different per-position alphabets denote different operator bases, so term
// maps are only compared when the alphabets agree position by position;
// cross-alphabet identities are checked through pt_substitute or to_dense.

namespace distil {

enum class Sym : std::uint8_t { P, Q, R, S };

inline char symbol_char(Sym s) {
  switch (s) {
    case Sym::P: return 'P';
    case Sym::Q: return 'Q';
    case Sym::R: return 'R';
    case Sym::S: return 'S';
  }
  return '?';
}

using Word = std::vector<Sym>;

std::string word_string(const Word& w);
// {P,Q} words as bitstrings, P -> '0', Q -> '1'.
std::string word_bits(const Word& w);
Word word_from_bits(const std::string& bits);

// Raised when a configured term or dimension budget would be exceeded.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultTermBudget = std::size_t(1) << 24;  // 4^12 terms
inline constexpr long kDefaultDenseBudget = 6561;

// Rational linear combination of equal-length words at local dimension d.
// The term map is canonical: zero coefficients are pruned on construction.
struct StructuredOperator {
  int d = 0;
  int length = 0;  // symbols per word
  std::map<Word, Rational> terms;

  Rational coeff(const Word& w) const {
    const auto it = terms.find(w);
    return it == terms.end() ? Rational(0) : it->second;
  }
};

StructuredOperator structured_zero(int d, int length);
StructuredOperator structured_term(int d, Word w, Rational c);
StructuredOperator add(const StructuredOperator& a, const StructuredOperator& b);
StructuredOperator scaled(const StructuredOperator& a, const Rational& c);
StructuredOperator tensor_product(const StructuredOperator& a, const StructuredOperator& b);
StructuredOperator tensor_power(const StructuredOperator& a, int n, std::size_t term_budget = kDefaultTermBudget);

// Position-wise exact partial transpose: P -> (-R+S)/d, Q -> ((d+1)R+(d-1)S)/d,
// R -> (-(d-1)P+Q)/2, S -> ((d+1)P+Q)/2. An involution.
StructuredOperator pt_substitute(const StructuredOperator& a, std::size_t term_budget = kDefaultTermBudget);

// Exact trace from the per-symbol traces 1, d^2-1, d(d-1)/2, d(d+1)/2.
Rational trace_of(const StructuredOperator& a);

// Dense realization on pair registers (1,2),(3,4),...; cross-validation
// bridge to the dense tensor module.
BasicDenseOperator<double> to_dense(const StructuredOperator& a, long dense_budget = kDefaultDenseBudget);

// The two-pair family as length-2 words over {R,S}:
// ((d+1+eps)/(d-1)) (R,R) + (S,S).
StructuredOperator rho_epsilon_words(int d, const Rational& epsilon);

// Scalars of the transposed two-pair family: the all-P word carries mu/4 per
// copy and the all-Q word lambda/4.
struct MuLambda {
  Rational mu;
  Rational lambda;
};

MuLambda mu_lambda(int d, const Rational& epsilon);

// alpha(x) over x in {0,1}^(2n), defined by
// (T_A rho(eps))^(x)n = (1/4^n) sum_x alpha(x) Pi_x with Pi_0 = P, Pi_1 = Q.
struct NCopyCoeffs {
  int d = 0;
  int n = 0;
  Rational epsilon;
  Rational mu;
  Rational lambda;
  std::map<Word, Rational> alpha;  // {P,Q} words of length 2n, zero-pruned

  Rational alpha_of(const Word& w) const {
    const auto it = alpha.find(w);
    return it == alpha.end() ? Rational(0) : it->second;
  }
};

NCopyCoeffs n_copy_pt_coeffs(int d, const Rational& epsilon, int n, std::size_t term_budget = kDefaultTermBudget);

// Exact verdicts on the coefficient structure of the n-copy expansion.
// Words are classified by their per-copy symbol pairs: a word whose pairs
// are all PP or QQ is a "block" word and its coefficient is the exact
// product mu^a lambda^b; every word with at least one mixed pair (PQ or QP)
// carries a factor -eps and obeys |alpha| <= eps mu^(n-1). Only mixed words
// can be negative, which is what the non-distillability bound consumes; the
// block words (other than the two extremes) generally exceed the eps-bound,
// and that excess is recorded rather than hidden.
struct Lemma1Report {
  bool all_p_word_ok = false;      // alpha(0^2n) == mu^n
  bool all_q_word_ok = false;      // alpha(1^2n) == lambda^n
  bool mixed_bound_ok = false;     // |alpha| <= eps mu^(n-1) on mixed words
  bool block_exact_ok = false;     // alpha == mu^a lambda^b on block words
  bool negative_bound_ok = false;  // min alpha >= -eps mu^(n-1)

  long mixed_words = 0;
  long block_words = 0;  // excluding the two extreme words
  Rational bound;        // eps mu^(n-1)
  Rational worst_mixed_abs;
  Rational min_alpha;

  bool block_word_exceeds_bound = false;  // true whenever mu^a lambda^b > bound somewhere
  Word first_exceeding_word;

  bool ok() const { return all_p_word_ok && all_q_word_ok && mixed_bound_ok && block_exact_ok && negative_bound_ok; }
};

Lemma1Report check_lemma1(const NCopyCoeffs& coeffs);

}  // namespace distil
