#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fullreg/errors.hpp"
#include "fullreg/families.hpp"
#include "fullreg/numerics.hpp"

namespace fullreg {

enum class Method {
  theorem2,
  stanley,
  gao_peng,
  together,
  theorem4_form1,
  theorem4_form2,
  conjecture_c,
  conjecture_d,
};

inline constexpr std::array<Method, 8> kAllMethods = {
    Method::theorem2,       Method::stanley,        Method::gao_peng,
    Method::together,       Method::theorem4_form1, Method::theorem4_form2,
    Method::conjecture_c,   Method::conjecture_d,
};

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::theorem2: return "theorem2";
    case Method::stanley: return "stanley";
    case Method::gao_peng: return "gao_peng";
    case Method::together: return "together";
    case Method::theorem4_form1: return "theorem4_form1";
    case Method::theorem4_form2: return "theorem4_form2";
    case Method::conjecture_c: return "conjecture_c";
    case Method::conjecture_d: return "conjecture_d";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view name) {
  if (name == "theorem4") return Method::theorem4_form1;
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

/// sigma' is the probability that a uniform vertex ordering is successive;
/// sigma = a_0! * sigma' is the count.
struct FormulaResult {
  ExactRational sigma_prime;
  std::optional<ExactInteger> sigma;
  Method method = Method::theorem2;
};

/// sigma'(G) = sum_{i=0}^{alpha-1} prod_{j=1}^{i} -a_j / (a_0 - a_j).
/// The i = alpha term vanishes since a_alpha = 0. The empty graph gives 1.
inline ExactRational sigma_prime_fully_regular(const FullyRegularParams& params) {
  const auto& a = params.values();
  if (a[0] == 0) return 1;
  ExactRational sum = 0;
  ExactRational term = 1;
  for (std::size_t i = 0; i < params.alpha(); ++i) {
    if (i > 0) {
      term *= ExactRational(-a[i]);
      term /= ExactRational(a[0] - a[i]);
    }
    sum += term;
  }
  return sum;
}

inline ExactInteger sigma_fully_regular(const FullyRegularParams& params) {
  const auto& a0 = params.vertex_count();
  if (a0 == 0) return 1;
  if (!a0.fits_slong_p()) throw InvalidArgument("vertex count too large for a factorial");
  ExactRational sigma = sigma_prime_fully_regular(params) * factorial(a0.get_si());
  if (!is_integer(sigma) || sigma < 0) {
    throw InvariantViolation("a_0! * sigma' is not a nonnegative integer for params (" +
                             params.to_string() + ")");
  }
  return sigma.get_num();
}

/// Shellings of K_n: C(n,2)! * n! / (2 (2n-3)!!).
inline ExactInteger stanley_shellings(std::int64_t n) {
  if (n < 2) throw InvalidArgument("stanley_shellings needs n >= 2");
  ExactInteger num = factorial(n * (n - 1) / 2) * factorial(n);
  ExactInteger den = 2 * double_factorial(2 * n - 3);
  return to_integer(make_rational(num, den));
}

/// (m+n) / C(m+n, m), the shelling probability of K_{m,n}.
inline ExactRational gao_peng_ratio(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw InvalidArgument("gao_peng needs m, n >= 1");
  return make_rational(ExactInteger(static_cast<long>(m + n)), binomial(m + n, m));
}

/// Shellings of K_{m,n}: (mn)! * (m+n) / C(m+n, m).
inline ExactInteger gao_peng_shellings(std::int64_t m, std::int64_t n) {
  return to_integer(gao_peng_ratio(m, n) * factorial(m * n));
}

/// N / |E|! = nu / C(2(d+1)/lambda, nu - 1) for an edge-regular graph with
/// matching number nu, every edge adjacent to d others, and every independent
/// pair joined by lambda edges. With nu = 1 the binomial is C(., 0) = 1 and
/// lambda is irrelevant.
inline ExactRational together_ratio(std::int64_t nu, std::int64_t d, std::int64_t lambda) {
  if (nu < 1) throw InvalidArgument("together_ratio needs nu >= 1");
  if (d < 0) throw InvalidArgument("together_ratio needs d >= 0");
  if (nu == 1) return 1;
  if (lambda < 1) throw InvalidArgument("together_ratio needs lambda >= 1 when nu >= 2");
  const ExactRational top = make_rational(2 * (d + 1), lambda);
  const ExactRational denom = generalized_binomial(top, nu - 1);
  if (denom == 0) {
    throw UndefinedValue("C(" + top.get_str() + ", " + std::to_string(nu - 1) + ") is zero");
  }
  return ExactRational(nu) / denom;
}

namespace detail {

// Product of num / product of den after deleting every zero factor from
// both sides. The deleted counts must agree.
inline ExactRational zero_disregarding_ratio(const std::vector<ExactRational>& num,
                                             const std::vector<ExactRational>& den,
                                             const char* what) {
  ExactInteger num_prod = 1, den_prod = 1;
  ExactInteger num_rest = 1, den_rest = 1;
  std::size_t num_zeros = 0, den_zeros = 0;
  for (const auto& f : num) {
    if (f == 0) { ++num_zeros; continue; }
    num_prod *= f.get_num();
    den_rest *= f.get_den();
  }
  for (const auto& f : den) {
    if (f == 0) { ++den_zeros; continue; }
    den_prod *= f.get_num();
    num_rest *= f.get_den();
  }
  if (num_zeros != den_zeros) {
    throw InvariantViolation(std::string(what) + ": " + std::to_string(num_zeros) +
                             " zero factors in the numerator but " +
                             std::to_string(den_zeros) + " in the denominator");
  }
  return make_rational(num_prod * num_rest, den_prod * den_rest);
}

}  // namespace detail

/// sigma for the line graph of K_{m,n,p} by the 3-partite product formula.
///   form 1: (mnp-1)! prod_{1}^{m+n+p-1} b_i / (prod_1^{m-1} b_i prod_1^{n-1} b_i prod_1^{p-1} b_i)
///   form 2: (mnp)! prod_{m}^{m+p} b_i / (mnp prod_1^{p-1} b_i), p not the single largest.
/// Zero factors are dropped from both sides; their counts must match.
inline ExactInteger theorem4_count(std::int64_t m, std::int64_t n, std::int64_t p, int form) {
  if (m < 1 || n < 1 || p < 1) throw InvalidArgument("theorem4 needs m, n, p >= 1");
  auto b = [&](std::int64_t i) { return ExactRational(b_value(m, n, p, i)); };
  std::vector<ExactRational> num, den;
  ExactInteger prefactor;
  if (form == 1) {
    prefactor = factorial(m * n * p - 1);
    for (std::int64_t i = 1; i <= m + n + p - 1; ++i) num.push_back(b(i));
    for (std::int64_t side : {m, n, p}) {
      for (std::int64_t i = 1; i <= side - 1; ++i) den.push_back(b(i));
    }
  } else if (form == 2) {
    if (p > m && p > n) {
      throw InvalidArgument("theorem4 form 2 needs p not to be the single largest parameter");
    }
    prefactor = factorial(m * n * p);
    for (std::int64_t i = m; i <= m + p; ++i) num.push_back(b(i));
    den.push_back(ExactRational(ExactInteger(static_cast<long>(m * n * p))));
    for (std::int64_t i = 1; i <= p - 1; ++i) den.push_back(b(i));
  } else {
    throw InvalidArgument("theorem4 form must be 1 or 2");
  }
  return to_integer(detail::zero_disregarding_ratio(num, den, "theorem4") * prefactor);
}

/// c_k = 6 (C(n,3) - C(n-k,3)) / k, checked against 3n^2 - 6n + 2 - k(3n-3-k).
inline ExactInteger conjecture_c_factor(std::int64_t n, std::int64_t k) {
  const ExactRational by_binomials =
      make_rational(6 * (binomial(n, 3) - binomial(n - k, 3)), ExactInteger(static_cast<long>(k)));
  const ExactInteger by_quadratic =
      ExactInteger(static_cast<long>(3 * n * n - 6 * n + 2)) -
      ExactInteger(static_cast<long>(k)) * static_cast<long>(3 * n - 3 - k);
  if (by_binomials != ExactRational(by_quadratic)) {
    throw InvariantViolation("the two expressions for c_" + std::to_string(k) +
                             " disagree at n = " + std::to_string(n));
  }
  return by_quadratic;
}

/// Conjectured sigma'(L(K_n^(3))) = floor(n/3) * prod c_k / prod c_k', with k over
/// n+1..n+floor(n/2)-2 skipping multiples of 3, and k' over multiples of 3 in 3..n-3.
inline ExactRational conjecture_c_value(std::int64_t n) {
  if (n < 3) throw InvalidArgument("conjecture_c needs n >= 3");
  std::vector<ExactRational> num, den;
  for (std::int64_t k = n + 1; k <= n + n / 2 - 2; ++k) {
    if (k % 3 != 0) num.emplace_back(conjecture_c_factor(n, k));
  }
  for (std::int64_t k = 3; k <= n - 3; k += 3) den.emplace_back(conjecture_c_factor(n, k));
  return ExactRational(n / 3) * detail::zero_disregarding_ratio(num, den, "conjecture_c");
}

/// a_i = (m-i) C(n-2i, 2), as a polynomial in i (valid for every i).
inline ExactInteger one_two_param(std::int64_t m, std::int64_t n, std::int64_t i) {
  return ExactInteger(static_cast<long>(m - i)) * binomial(n - 2 * i, 2);
}

/// Conjectured sigma'(L(K_{m,n}^{(1,2)})) =
///   m * prod_{i=1}^{m-1} (mn - C(m+1,2) + C(i,2)) / d_i,  d_i = (a_0 - a_i)/i,
/// zero factors disregarded on both sides.
inline ExactRational conjecture_d_value(std::int64_t m, std::int64_t n) {
  if (m < 1) throw InvalidArgument("conjecture_d needs m >= 1");
  if (n < 2) throw InvalidArgument("conjecture_d needs n >= 2");
  const ExactInteger a0 = one_two_param(m, n, 0);
  std::vector<ExactRational> num, den;
  for (std::int64_t i = 1; i <= m - 1; ++i) {
    num.emplace_back(ExactInteger(static_cast<long>(m * n)) - binomial(m + 1, 2) +
                     binomial(i, 2));
    den.push_back(make_rational(a0 - one_two_param(m, n, i), ExactInteger(static_cast<long>(i))));
  }
  return ExactRational(m) * detail::zero_disregarding_ratio(num, den, "conjecture_d");
}

/// Both sides of
///   sum_{t=0}^{alpha} (-1)^t C(alpha,t) C(beta,t) / C(gamma,t) = C(gamma-beta, alpha) / C(gamma, alpha),
/// each evaluated on its own. Undefined when gamma is an integer in [0, alpha).
inline std::pair<ExactRational, ExactRational> lemma_identity_sides(std::int64_t alpha,
                                                                    const ExactRational& beta,
                                                                    const ExactRational& gamma) {
  if (alpha < 0) throw InvalidArgument("lemma identity needs alpha >= 0");
  if (is_integer(gamma) && gamma >= 0 && gamma < alpha) {
    throw UndefinedValue("lemma identity is undefined for gamma = " + gamma.get_str() +
                         " < alpha = " + std::to_string(alpha));
  }
  ExactRational lhs = 0;
  for (std::int64_t t = 0; t <= alpha; ++t) {
    ExactRational term = ExactRational(binomial(alpha, t)) * generalized_binomial(beta, t) /
                         generalized_binomial(gamma, t);
    if (t % 2) lhs -= term; else lhs += term;
  }
  const ExactRational rhs =
      generalized_binomial(gamma - beta, alpha) / generalized_binomial(gamma, alpha);
  return {lhs, rhs};
}

/// Both sides of the polynomial identity
///   P = sum_{i=0}^{p-1} (-1)^i / i! prod_{j=1}^{i} a_j prod_{j=i+1}^{p-1} b_j
///   Q = p prod_{j=m+1}^{m+p-1} b_j
/// with a_j = (m-j)(n-j)(p-j) and b_j = mn+np+mp - j(m+n+p-j) for all j.
/// n = 0 is accepted; both sides are polynomials in n.
inline std::pair<ExactInteger, ExactInteger> poly_lemma_sides(std::int64_t m, std::int64_t n,
                                                              std::int64_t p) {
  if (m < 1 || p < 1 || n < 0) throw InvalidArgument("poly lemma needs m, p >= 1 and n >= 0");
  auto a = [&](std::int64_t j) -> ExactInteger {
    return ExactInteger(static_cast<long>(m - j)) * static_cast<long>(n - j) *
           static_cast<long>(p - j);
  };
  auto b = [&](std::int64_t j) { return b_value(m, n, p, j); };

  // Suffix products of b_j over j in [i+1, p-1].
  std::vector<ExactInteger> b_suffix(static_cast<std::size_t>(p) + 1, 1);
  for (std::int64_t i = p - 2; i >= 0; --i) {
    b_suffix[static_cast<std::size_t>(i)] = b_suffix[static_cast<std::size_t>(i) + 1] * b(i + 1);
  }
  ExactInteger lhs = 0;
  ExactInteger a_prefix = 1;
  for (std::int64_t i = 0; i <= p - 1; ++i) {
    if (i > 0) a_prefix *= a(i);
    const ExactRational term =
        make_rational(a_prefix * b_suffix[static_cast<std::size_t>(i)], factorial(i));
    if (i % 2) lhs -= to_integer(term); else lhs += to_integer(term);
  }
  ExactInteger rhs = p;
  for (std::int64_t j = m + 1; j <= m + p - 1; ++j) rhs *= b(j);
  return {lhs, rhs};
}

namespace detail {

// Sizes of the t = 3, all-degree-1 family sorted so the last is smallest.
inline std::array<std::int64_t, 3> tripartite_sizes(const FamilySpec& spec) {
  std::array<std::int64_t, 3> s{spec.parts()[0].size, spec.parts()[1].size,
                                spec.parts()[2].size};
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace detail

/// Whether `method` has a closed form for this family shape.
inline bool method_applies(const FamilySpec& family, Method method) {
  const FamilySpec spec = family.canonical();
  const auto& parts = spec.parts();
  const bool nonempty = derive_params(spec).vertex_count() > 0;
  switch (method) {
    case Method::theorem2:
      return true;
    case Method::stanley:
      return parts.size() == 1 && parts[0].degree == 2 && parts[0].size >= 2;
    case Method::gao_peng:
      return parts.size() == 2 && parts[0].degree == 1 && parts[1].degree == 1 && nonempty;
    case Method::together:
      return method_applies(spec, Method::stanley) || method_applies(spec, Method::gao_peng);
    case Method::theorem4_form1:
    case Method::theorem4_form2:
      return parts.size() == 3 &&
             std::all_of(parts.begin(), parts.end(), [](const Part& p) { return p.degree == 1; }) &&
             nonempty;
    case Method::conjecture_c:
      return parts.size() == 1 && parts[0].degree == 3 && parts[0].size >= 3;
    case Method::conjecture_d:
      return parts.size() == 2 && parts[0].degree == 1 && parts[1].degree == 2 &&
             parts[0].size >= 1 && parts[1].size >= 2;
  }
  return false;
}

inline std::vector<Method> applicable_methods(const FamilySpec& spec) {
  std::vector<Method> out;
  for (Method m : kAllMethods) {
    if (method_applies(spec, m)) out.push_back(m);
  }
  return out;
}

/// Evaluates one method on a family. Throws InvalidArgument when the method
/// does not apply to the family's shape.
inline FormulaResult evaluate(const FamilySpec& family, Method method) {
  if (!method_applies(family, method)) {
    throw InvalidArgument(std::string(method_name(method)) + " does not apply to " +
                          family.to_string());
  }
  const FamilySpec spec = family.canonical();
  const auto& parts = spec.parts();
  const FullyRegularParams params = derive_params(spec);
  const ExactInteger& a0 = params.vertex_count();

  FormulaResult r;
  r.method = method;
  auto from_ratio = [&](ExactRational ratio) {
    r.sigma_prime = std::move(ratio);
    r.sigma = a0 == 0 ? ExactInteger(1) : to_integer(r.sigma_prime * factorial(a0.get_si()));
  };
  auto from_count = [&](ExactInteger count) {
    r.sigma_prime = a0 == 0 ? ExactRational(1) : ExactRational(count) / factorial(a0.get_si());
    r.sigma = std::move(count);
  };

  switch (method) {
    case Method::theorem2:
      r.sigma_prime = sigma_prime_fully_regular(params);
      r.sigma = sigma_fully_regular(params);
      break;
    case Method::stanley:
      from_count(stanley_shellings(parts[0].size));
      break;
    case Method::gao_peng:
      from_count(gao_peng_shellings(parts[0].size, parts[1].size));
      break;
    case Method::together:
      if (parts.size() == 1) {
        const std::int64_t n = parts[0].size;
        from_ratio(together_ratio(n / 2, 2 * n - 4, 4));
      } else {
        const std::int64_t m = parts[0].size, n = parts[1].size;
        from_ratio(together_ratio(std::min(m, n), m + n - 2, 2));
      }
      break;
    case Method::theorem4_form1:
    case Method::theorem4_form2: {
      const auto [m, n, p] = detail::tripartite_sizes(spec);
      from_count(theorem4_count(m, n, p, method == Method::theorem4_form1 ? 1 : 2));
      break;
    }
    case Method::conjecture_c:
      from_ratio(conjecture_c_value(parts[0].size));
      break;
    case Method::conjecture_d:
      from_ratio(conjecture_d_value(parts[0].size, parts[1].size));
      break;
  }
  return r;
}

}  // namespace fullreg
