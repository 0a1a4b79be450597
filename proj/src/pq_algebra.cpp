#include "distil/pq_algebra.hpp"

#include <array>
#include <utility>

#include "distil/states.hpp"

namespace distil {

namespace {

void require_compatible(const StructuredOperator& a, const StructuredOperator& b) {
  if (a.d != b.d) throw std::invalid_argument("structured operators have different local dimensions");
}

void prune_zeros(std::map<Word, Rational>& terms) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0)
      it = terms.erase(it);
    else
      ++it;
  }
}

// Substitution image of one symbol under the partial transpose.
std::array<std::pair<Sym, Rational>, 2> pt_image(Sym s, int d) {
  const Rational dd(d);
  switch (s) {
    case Sym::P: return {{{Sym::R, Rational(-1) / dd}, {Sym::S, Rational(1) / dd}}};
    case Sym::Q: return {{{Sym::R, Rational(d + 1) / dd}, {Sym::S, Rational(d - 1) / dd}}};
    case Sym::R: return {{{Sym::P, Rational(-(d - 1)) / 2}, {Sym::Q, Rational(1) / 2}}};
    case Sym::S: return {{{Sym::P, Rational(d + 1) / 2}, {Sym::Q, Rational(1) / 2}}};
  }
  throw std::logic_error("unknown symbol");
}

Rational symbol_trace(Sym s, int d) {
  switch (s) {
    case Sym::P: return 1;
    case Sym::Q: return Rational(d) * d - 1;
    case Sym::R: return Rational(d) * (d - 1) / 2;
    case Sym::S: return Rational(d) * (d + 1) / 2;
  }
  throw std::logic_error("unknown symbol");
}

}  // namespace

std::string word_string(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Sym s : w) out.push_back(symbol_char(s));
  return out;
}

std::string word_bits(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Sym s : w) {
    if (s == Sym::P)
      out.push_back('0');
    else if (s == Sym::Q)
      out.push_back('1');
    else
      throw std::invalid_argument("word_bits: word contains a symbol outside {P,Q}");
  }
  return out;
}

Word word_from_bits(const std::string& bits) {
  Word w;
  w.reserve(bits.size());
  for (char c : bits) {
    if (c == '0')
      w.push_back(Sym::P);
    else if (c == '1')
      w.push_back(Sym::Q);
    else
      throw std::invalid_argument("word_from_bits: bitstring must be over {0,1}");
  }
  return w;
}

StructuredOperator structured_zero(int d, int length) {
  if (d < 2) throw std::invalid_argument("StructuredOperator: d must be at least 2");
  if (length < 1) throw std::invalid_argument("StructuredOperator: words must be nonempty");
  StructuredOperator out;
  out.d = d;
  out.length = length;
  return out;
}

StructuredOperator structured_term(int d, Word w, Rational c) {
  StructuredOperator out = structured_zero(d, static_cast<int>(w.size()));
  if (c != 0) out.terms.emplace(std::move(w), std::move(c));
  return out;
}

StructuredOperator add(const StructuredOperator& a, const StructuredOperator& b) {
  require_compatible(a, b);
  if (a.length != b.length) throw std::invalid_argument("add: word lengths differ");
  StructuredOperator out = a;
  for (const auto& [w, c] : b.terms) out.terms[w] += c;
  prune_zeros(out.terms);
  return out;
}

StructuredOperator scaled(const StructuredOperator& a, const Rational& c) {
  StructuredOperator out = structured_zero(a.d, a.length);
  if (c == 0) return out;
  for (const auto& [w, coeff] : a.terms) out.terms.emplace(w, coeff * c);
  return out;
}

StructuredOperator tensor_product(const StructuredOperator& a, const StructuredOperator& b) {
  require_compatible(a, b);
  StructuredOperator out = structured_zero(a.d, a.length + b.length);
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.terms.emplace(std::move(w), ca * cb);
    }
  return out;
}

StructuredOperator tensor_power(const StructuredOperator& a, int n, std::size_t term_budget) {
  if (n < 1) throw std::invalid_argument("tensor_power: n must be at least 1");
  // Term counts multiply; fail before any work if the result cannot fit.
  std::size_t projected = 1;
  for (int k = 0; k < n; ++k) {
    if (a.terms.size() != 0 && projected > term_budget / a.terms.size())
      throw BudgetError("tensor_power: would exceed the term budget of " + std::to_string(term_budget) + " words");
    projected *= a.terms.size();
  }
  StructuredOperator out = a;
  for (int k = 1; k < n; ++k) out = tensor_product(out, a);
  return out;
}

StructuredOperator pt_substitute(const StructuredOperator& a, std::size_t term_budget) {
  StructuredOperator out = structured_zero(a.d, a.length);
  for (const auto& [word, coeff] : a.terms) {
    // Expand the product of two-term images across the word positions.
    std::map<Word, Rational> expanded;
    expanded.emplace(Word{}, coeff);
    for (Sym s : word) {
      const auto image = pt_image(s, a.d);
      std::map<Word, Rational> next;
      for (const auto& [prefix, c] : expanded)
        for (const auto& [sym, weight] : image) {
          Word w = prefix;
          w.push_back(sym);
          next.emplace(std::move(w), c * weight);
        }
      expanded.swap(next);
      if (expanded.size() > term_budget)
        throw BudgetError("pt_substitute: would exceed the term budget of " + std::to_string(term_budget) + " words");
    }
    for (auto& [w, c] : expanded) out.terms[w] += c;
    if (out.terms.size() > term_budget)
      throw BudgetError("pt_substitute: would exceed the term budget of " + std::to_string(term_budget) + " words");
  }
  prune_zeros(out.terms);
  return out;
}

Rational trace_of(const StructuredOperator& a) {
  Rational total = 0;
  for (const auto& [word, coeff] : a.terms) {
    Rational t = coeff;
    for (Sym s : word) t *= symbol_trace(s, a.d);
    total += t;
  }
  return total;
}

BasicDenseOperator<double> to_dense(const StructuredOperator& a, long dense_budget) {
  long dim = 1;
  const long pair_dim = static_cast<long>(a.d) * a.d;
  for (int k = 0; k < a.length; ++k) {
    if (dim > dense_budget / pair_dim)
      throw BudgetError("to_dense: dimension exceeds the dense budget of " + std::to_string(dense_budget));
    dim *= pair_dim;
  }

  const BasicProjectorSet<double> base = projector_set<double>(a.d);
  const auto symbol_matrix = [&base](Sym s) -> const Eigen::MatrixXcd& {
    switch (s) {
      case Sym::P: return base.P.mat;
      case Sym::Q: return base.Q.mat;
      case Sym::R: return base.R.mat;
      case Sym::S: return base.S.mat;
    }
    throw std::logic_error("unknown symbol");
  };

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<long> row_digits(static_cast<std::size_t>(a.length));
  std::vector<long> col_digits(static_cast<std::size_t>(a.length));
  for (const auto& [word, coeff] : a.terms) {
    const double c = to_double(coeff);
    // Streamed Kronecker accumulation keeps the peak at one dense matrix.
    for (long i = 0; i < dim; ++i) {
      long x = i;
      for (int k = a.length - 1; k >= 0; --k) {
        row_digits[static_cast<std::size_t>(k)] = x % pair_dim;
        x /= pair_dim;
      }
      for (long j = 0; j < dim; ++j) {
        long y = j;
        for (int k = a.length - 1; k >= 0; --k) {
          col_digits[static_cast<std::size_t>(k)] = y % pair_dim;
          y /= pair_dim;
        }
        std::complex<double> prod(c, 0.0);
        for (int k = 0; k < a.length && prod != std::complex<double>(0.0, 0.0); ++k)
          prod *= symbol_matrix(word[static_cast<std::size_t>(k)])(row_digits[static_cast<std::size_t>(k)], col_digits[static_cast<std::size_t>(k)]);
        acc(i, j) += prod;
      }
    }
  }
  return BasicDenseOperator<double>(std::move(acc), RegisterLayout::pairs(a.d, a.length));
}

StructuredOperator rho_epsilon_words(int d, const Rational& epsilon) {
  if (d < 3) throw std::invalid_argument("rho_epsilon_words: d must be at least 3");
  if (epsilon < 0) throw std::invalid_argument("rho_epsilon_words: epsilon must be nonnegative");
  const Rational beta = (Rational(d) + 1 + epsilon) / (Rational(d) - 1);
  StructuredOperator out = structured_term(d, Word{Sym::R, Sym::R}, beta);
  return add(out, structured_term(d, Word{Sym::S, Sym::S}, 1));
}

MuLambda mu_lambda(int d, const Rational& epsilon) {
  if (d < 3) throw std::invalid_argument("mu_lambda: d must be at least 3");
  if (epsilon < 0) throw std::invalid_argument("mu_lambda: epsilon must be nonnegative");
  MuLambda out;
  out.mu = Rational(d + 1) * (d + 1) + (Rational(d) + 1 + epsilon) * (d - 1);
  out.lambda = 1 + (Rational(d) + 1 + epsilon) / (Rational(d) - 1);
  return out;
}

NCopyCoeffs n_copy_pt_coeffs(int d, const Rational& epsilon, int n, std::size_t term_budget) {
  if (n < 1) throw std::invalid_argument("n_copy_pt_coeffs: n must be at least 1");
  const StructuredOperator transposed = pt_substitute(rho_epsilon_words(d, epsilon), term_budget);
  const StructuredOperator power = tensor_power(transposed, n, term_budget);

  NCopyCoeffs out;
  out.d = d;
  out.n = n;
  out.epsilon = epsilon;
  const MuLambda ml = mu_lambda(d, epsilon);
  out.mu = ml.mu;
  out.lambda = ml.lambda;
  const Rational scale = rational_pow(Rational(4), static_cast<unsigned>(n));
  for (const auto& [w, c] : power.terms) out.alpha.emplace(w, c * scale);
  return out;
}

Lemma1Report check_lemma1(const NCopyCoeffs& coeffs) {
  const int n = coeffs.n;
  const int len = 2 * n;

  Lemma1Report report;
  report.bound = coeffs.epsilon * rational_pow(coeffs.mu, static_cast<unsigned>(n - 1));
  report.all_p_word_ok = coeffs.alpha_of(Word(static_cast<std::size_t>(len), Sym::P)) == rational_pow(coeffs.mu, static_cast<unsigned>(n));
  report.all_q_word_ok = coeffs.alpha_of(Word(static_cast<std::size_t>(len), Sym::Q)) == rational_pow(coeffs.lambda, static_cast<unsigned>(n));
  report.mixed_bound_ok = true;
  report.block_exact_ok = true;
  report.worst_mixed_abs = 0;
  report.min_alpha = rational_pow(coeffs.mu, static_cast<unsigned>(n));  // alpha of the all-P word

  for (long x = 0; x < (1L << len); ++x) {
    Word w(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k) w[static_cast<std::size_t>(k)] = ((x >> (len - 1 - k)) & 1) ? Sym::Q : Sym::P;

    int pp_pairs = 0, qq_pairs = 0, mixed_pairs = 0;
    for (int k = 0; k < n; ++k) {
      const Sym a = w[static_cast<std::size_t>(2 * k)];
      const Sym b = w[static_cast<std::size_t>(2 * k + 1)];
      if (a == b)
        (a == Sym::P ? pp_pairs : qq_pairs)++;
      else
        ++mixed_pairs;
    }

    const Rational alpha = coeffs.alpha_of(w);
    if (alpha < report.min_alpha) report.min_alpha = alpha;

    if (mixed_pairs == 0) {
      if (pp_pairs == n || qq_pairs == n) continue;  // the two extreme words
      ++report.block_words;
      const Rational expected = rational_pow(coeffs.mu, static_cast<unsigned>(pp_pairs)) * rational_pow(coeffs.lambda, static_cast<unsigned>(qq_pairs));
      if (alpha != expected) report.block_exact_ok = false;
      if (alpha > report.bound && !report.block_word_exceeds_bound) {
        report.block_word_exceeds_bound = true;
        report.first_exceeding_word = w;
      }
    } else {
      ++report.mixed_words;
      const Rational mag = alpha < 0 ? Rational(-alpha) : alpha;
      if (mag > report.worst_mixed_abs) report.worst_mixed_abs = mag;
      if (mag > report.bound) report.mixed_bound_ok = false;
    }
  }

  report.negative_bound_ok = report.min_alpha >= -report.bound;
  return report;
}

}  // namespace distil
