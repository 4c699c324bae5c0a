#include "rosen/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rosen/errors.hpp"

namespace rosen {

namespace {

struct Panel {
  Real a, m, b;
  Real fa, fm, fb;
  Real whole;
};

class Simpson {
 public:
  Simpson(const std::function<Real(const Real&)>& f, int max_depth)
      : f_(f), max_depth_(max_depth) {}

  Real eval(const Real& x) {
    ++evaluations_;
    return f_(x);
  }

  static Real rule(const Real& a, const Real& b, const Real& fa, const Real& fm, const Real& fb) {
    return (b - a) / 6 * (fa + 4 * fm + fb);
  }

  Real refine(const Panel& p, const Real& tol, int depth) {
    Real lm = (p.a + p.m) / 2;
    Real rm = (p.m + p.b) / 2;
    Real flm = eval(lm);
    Real frm = eval(rm);
    Real left = rule(p.a, p.m, p.fa, flm, p.fm);
    Real right = rule(p.m, p.b, p.fm, frm, p.fb);
    Real diff = left + right - p.whole;
    if (abs(diff) <= 15 * tol) {
      error_ += abs(diff) / 15;
      return left + right + diff / 15;
    }
    if (depth >= max_depth_) {
      throw IntegrationFailure("adaptive quadrature did not converge within depth " +
                               std::to_string(max_depth_) + " near t = " + p.m.to_string(20));
    }
    Real half_tol = tol / 2;
    Real lhs = refine(Panel{p.a, lm, p.m, p.fa, flm, p.fm, left}, half_tol, depth + 1);
    Real rhs = refine(Panel{p.m, rm, p.b, p.fm, frm, p.fb, right}, half_tol, depth + 1);
    return lhs + rhs;
  }

  long evaluations() const { return evaluations_; }
  const Real& error() const { return error_; }
  void reset_error(Precision prec) { error_ = Real(prec); }

 private:
  const std::function<Real(const Real&)>& f_;
  int max_depth_;
  long evaluations_ = 0;
  Real error_;
};

}  // namespace

QuadratureResult integrate(const std::function<Real(const Real&)>& f, const Real& a,
                           const Real& b, const QuadratureOptions& opts) {
  const Precision prec{std::max(a.precision().bits, b.precision().bits)};
  if (a == b) {
    return {Real(prec), Real(prec), 0};
  }
  Simpson s(f, opts.max_depth);
  s.reset_error(prec);

  // Coarse pass over 16 panels fixes the relative scale and seeds the
  // recursion with panels small enough to resolve localized features.
  constexpr int kPanels = 16;
  std::vector<Real> xs;
  std::vector<Real> fs;
  xs.reserve(2 * kPanels + 1);
  for (int i = 0; i <= 2 * kPanels; ++i) {
    Real x = a + (b - a) * i / (2 * kPanels);
    fs.push_back(s.eval(x));
    xs.push_back(std::move(x));
  }
  std::vector<Real> wholes;
  Real coarse(prec);
  for (int i = 0; i < kPanels; ++i) {
    wholes.push_back(Simpson::rule(xs[2 * i], xs[2 * i + 2], fs[2 * i], fs[2 * i + 1], fs[2 * i + 2]));
    coarse += wholes.back();
  }

  double tol_d = opts.abs_tol;
  if (opts.rel_tol > 0) {
    double rel = opts.rel_tol * std::abs(coarse.to_double());
    tol_d = tol_d > 0 ? std::max(tol_d, rel) : rel;
  }
  if (!(tol_d > 0)) {
    // Exact zero integrand with a pure relative tolerance.
    tol_d = opts.abs_tol > 0 ? opts.abs_tol : 1e-300;
  }
  const Real panel_tol = Real(tol_d, prec) / kPanels;

  Real total(prec);
  for (int i = 0; i < kPanels; ++i) {
    Panel p{xs[2 * i], xs[2 * i + 1], xs[2 * i + 2], fs[2 * i], fs[2 * i + 1], fs[2 * i + 2],
            wholes[static_cast<std::size_t>(i)]};
    total += s.refine(p, panel_tol, 0);
  }
  return {std::move(total), s.error(), s.evaluations()};
}

}  // namespace rosen
