#include "chanrecon/flops.hpp"

#include <stdexcept>

namespace chanrecon {

namespace {

void require_positive(long long v, const char* name) {
  if (v <= 0) {
    throw std::invalid_argument(std::string("flops: dimension ") + name +
                                " must be positive");
  }
}

FlopTerm make_term(std::string label, FlopAtom atom, double multiplicity) {
  FlopTerm term{std::move(label), atom, multiplicity, 0.0};
  term.flops = multiplicity * atom_flops(atom);
  return term;
}

FlopTotal finish(std::vector<FlopTerm> terms) {
  FlopTotal total;
  total.breakdown = std::move(terms);
  for (const auto& t : total.breakdown) total.value += t.flops;
  return total;
}

}  // namespace

double atom_flops(const FlopAtom& atom) {
  double m = static_cast<double>(atom.m);
  double n = static_cast<double>(atom.n);
  double l = static_cast<double>(atom.l);
  switch (atom.kind) {
    case FlopKind::gram_aah:
      require_positive(atom.m, "M");
      require_positive(atom.n, "N");
      return m * m * n + m * (n - m / 2.0) - m / 2.0;
    case FlopKind::matmul_ab:
      require_positive(atom.m, "M");
      require_positive(atom.n, "N");
      require_positive(atom.l, "L");
      return 2.0 * m * n * l - m * l;
    case FlopKind::scale:
    case FlopKind::sum:
      require_positive(atom.m, "M");
      require_positive(atom.n, "N");
      return m * n;
    case FlopKind::qr_q:
      require_positive(atom.m, "M");
      require_positive(atom.n, "N");
      return 4.0 * (m * m * n - m * n * n + n * n * n / 3.0);
    case FlopKind::svd_sigma_u:
      require_positive(atom.m, "M");
      require_positive(atom.n, "N");
      return 4.0 * m * m * n + 13.0 * n * n * n;
    case FlopKind::svd_sigma_v:
      require_positive(atom.m, "M");
      require_positive(atom.n, "N");
      return 2.0 * m * n * n + 13.0 * n * n * n;
  }
  throw std::invalid_argument("flops: unknown atom kind");
}

FlopTotal flops_direct_svd(long long nt, long long m, long long s, long long n_sub) {
  require_positive(nt, "Nt");
  require_positive(m, "M");
  require_positive(s, "S");
  require_positive(n_sub, "n_sub");
  std::vector<FlopTerm> terms;
  // R accumulation: n_sub Gram products H^H H (A = H^H is Nt x M).
  terms.push_back(make_term("gram_hhh", {FlopKind::gram_aah, nt, m, 0},
                            static_cast<double>(n_sub)));
  if (n_sub > 1) {
    terms.push_back(make_term("sum_r", {FlopKind::sum, nt, nt, 0},
                              static_cast<double>(n_sub - 1)));
  }
  terms.push_back(make_term("scale_r", {FlopKind::scale, nt, nt, 0}, 1.0));
  terms.push_back(make_term("evd_r", {FlopKind::svd_sigma_u, nt, nt, 0}, 1.0));
  return finish(std::move(terms));
}

FlopTotal flops_method1(long long nt, long long m, long long l, long long s,
                        long long n_sub) {
  require_positive(nt, "Nt");
  require_positive(m, "M");
  require_positive(l, "L");
  require_positive(s, "S");
  require_positive(n_sub, "n_sub");
  if (!(m >= l && l >= s)) {
    throw std::invalid_argument("flops: Method I requires M >= L >= S");
  }
  std::vector<FlopTerm> terms;
  // S-1: average channel.
  if (n_sub > 1) {
    terms.push_back(make_term("sum_hbar", {FlopKind::sum, nt, m, 0},
                              static_cast<double>(n_sub - 1)));
  }
  terms.push_back(make_term("scale_hbar", {FlopKind::scale, nt, m, 0}, 1.0));
  // S-2: Y = H_bar G, then QR for Q.
  terms.push_back(make_term("sketch_y", {FlopKind::matmul_ab, nt, m, l}, 1.0));
  terms.push_back(make_term("qr_q", {FlopKind::qr_q, nt, l, 0}, 1.0));
  // S-3: C = Q^H H_bar, small SVD, Q * U_tilde.
  terms.push_back(make_term("form_c", {FlopKind::matmul_ab, l, nt, m}, 1.0));
  terms.push_back(make_term("svd_c", {FlopKind::svd_sigma_v, m, l, 0}, 1.0));
  terms.push_back(make_term("project_qu", {FlopKind::matmul_ab, nt, l, s}, 1.0));
  return finish(std::move(terms));
}

std::vector<RatioRow> ratio_sweep(const std::vector<long long>& nt_range,
                                  long long m, long long l, long long s,
                                  long long n_sub) {
  std::vector<RatioRow> rows;
  rows.reserve(nt_range.size());
  for (long long nt : nt_range) {
    double direct = flops_direct_svd(nt, m, s, n_sub).value;
    double method1 = flops_method1(nt, m, l, s, n_sub).value;
    rows.push_back({nt, direct, method1, method1 / direct});
  }
  return rows;
}

}  // namespace chanrecon
