#include "supermap/jetcalc.hpp"

#include <map>
#include <mutex>

namespace supermap {

namespace {

// alpha vectors for sum_{j<=maxpart} j alpha_j = m, length `len`.
void partitions(unsigned m, unsigned maxpart, unsigned len, std::vector<unsigned>& cur,
                std::vector<std::vector<unsigned>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  if (maxpart == 0) return;
  for (unsigned a = m / maxpart + 1; a-- > 0;) {
    cur[maxpart - 1] = a;
    partitions(m - a * maxpart, maxpart - 1, len, cur, out);
  }
  cur[maxpart - 1] = 0;
}

// Symmetric multilinear D^s b(y0)[v_1, ..., v_s] with polynomial vector arguments.
Polynomial multilinear(const Polynomial& bj, const std::vector<Rational>& y0,
                       const std::vector<const std::vector<Polynomial>*>& args, int hdim) {
  const int dim = bj.variables();
  const std::size_t s = args.size();
  Polynomial acc(hdim);
  if (dim == 0) return acc;
  std::vector<int> idx(s, 0);
  while (true) {
    MultiIndex I(dim);
    for (int i : idx) I[i] += 1;
    const Polynomial d = poly_derive(bj, I);
    if (!d.is_zero()) {
      const Rational c = d.evaluate(y0);
      if (c != 0) {
        Polynomial term = Polynomial::constant(hdim, c);
        for (std::size_t t = 0; t < s && !term.is_zero(); ++t) term = term * (*args[t])[idx[t]];
        acc += term;
      }
    }
    std::size_t t = 0;
    while (t < s && ++idx[t] == dim) idx[t++] = 0;
    if (t == s) break;
  }
  return acc;
}

}  // namespace

const std::vector<std::vector<unsigned>>& partitions_by_multiplicity(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<std::vector<unsigned>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(m, 0);
  partitions(m, m, m, cur, out);
  return cache.emplace(m, std::move(out)).first->second;
}

std::vector<Polynomial> faa_di_bruno(const std::vector<Polynomial>& b, const std::vector<Polynomial>& phi,
                                     const std::vector<Rational>& x0, unsigned m) {
  if (m < 1) throw PreconditionError("faa_di_bruno: m must be at least 1");
  const int hdim = static_cast<int>(x0.size());
  std::vector<Rational> y0;
  for (const auto& f : phi) {
    if (f.variables() != hdim) throw DimensionError("faa_di_bruno: inner map and point dimensions differ");
    y0.push_back(f.evaluate(x0));
  }
  for (const auto& f : b)
    if (f.variables() != static_cast<int>(phi.size())) throw DimensionError("faa_di_bruno: outer arity mismatch");

  // phi_j(h) = (1/j!) D^j phi(x0)[h^j], j = 1..m.
  std::vector<std::vector<Polynomial>> parts(m + 1);
  for (unsigned j = 1; j <= m; ++j)
    for (const auto& f : phi)
      parts[j].push_back(detail::taylor_polynomial<Rational>(f, x0, static_cast<int>(j), static_cast<int>(j)));

  std::vector<Polynomial> out;
  for (const auto& bj : b) {
    Polynomial acc(hdim);
    for (const auto& alpha : partitions_by_multiplicity(m)) {
      std::vector<const std::vector<Polynomial>*> args;
      Rational alpha_fact = 1;
      for (unsigned j = 1; j <= m; ++j) {
        alpha_fact *= factorial(alpha[j - 1]);
        for (unsigned t = 0; t < alpha[j - 1]; ++t) args.push_back(&parts[j]);
      }
      acc += multilinear(bj, y0, args, hdim) * (factorial(m) / alpha_fact);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace supermap
