#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

using MultiIndex = std::vector<int>;

// Holomorphic polynomial on C^n given by its monomial coefficients.
class HoloFunc {
 public:
  struct Term {
    MultiIndex index;
    cplx coeff;
  };

  HoloFunc(int n, std::vector<Term> terms);
  static HoloFunc constant(int n, cplx c = 1.0);
  // 1 + eps * z_1^k
  static HoloFunc one_plus(int n, cplx eps, int k = 1);
  // z_1^k
  static HoloFunc monomial(int n, int k, cplx c = 1.0);

  int n() const { return n_; }
  int degree() const;
  const std::vector<Term>& terms() const { return terms_; }

  cplx eval(const Point& z) const;
  Point grad(const Point& z) const;
  cplx eval(cplx z) const;
  cplx deriv(cplx z) const;

  HoloFunc scaled(cplx c) const;
  // phi = f - 1
  HoloFunc minus_one() const;
  std::string describe() const;

 private:
  int n_;
  std::vector<Term> terms_;
  // n = 1 dense coefficients for Horner evaluation.
  std::vector<cplx> dense_;
};

struct QuadOptions {
  int radial_order = 64;
  int sphere_points = 256;  // circle points (n = 1); n = 2 uses sphere_points / 8 phase samples
};

// int |f|^p d mu_alpha
double bergman_integral(const HoloFunc& f, const WeightParams& params, const QuadOptions& q = {});
double bergman_norm(const HoloFunc& f, const WeightParams& params, const QuadOptions& q = {});
// f scaled to unit A^p_alpha norm.
HoloFunc normalized(const HoloFunc& f, const WeightParams& params, const QuadOptions& q = {});

// int_S |f(r zeta)|^p d sigma
double sphere_mean(const HoloFunc& f, double p, double r, const QuadOptions& q = {});
// Supremum of the sphere means; the means along `radii` must be nondecreasing
// and the returned value is the boundary mean at r = 1.
double hardy_norm(const HoloFunc& f, double p, const std::vector<double>& radii, const QuadOptions& q = {});
double hardy_norm(const HoloFunc& f, double p, const QuadOptions& q = {});

// max over a grid of step 1e-2 * rho in the closed ball of radius rho of |phi| + |grad phi|.
double c1_norm_on_subball(const HoloFunc& phi, double rho);
// max |phi| on the sphere of radius rho.
double sup_on_sphere(const HoloFunc& phi, double rho, int points = 1024);

enum class SymbolVariant { U, V };

// u = |f|^p (1-|z|^2)^alpha and v = |f|^{p/alpha}(1-|z|^2), so u = v^alpha.
class WeightedSymbol {
 public:
  WeightedSymbol(HoloFunc f, WeightParams params);

  const HoloFunc& f() const { return f_; }
  const WeightParams& params() const { return params_; }

  double value(const Point& z, SymbolVariant variant = SymbolVariant::U) const;
  double u(cplx z) const;
  double log_u(cplx z) const;
  // Euclidean gradient of log u packed as d/dx + i d/dy (n = 1).
  cplx grad_log_u(cplx z) const;
  cplx grad_u(cplx z) const { return u(z) * grad_log_u(z); }
  // d/d rho and d/d theta of log u along z = rho e^{i theta}.
  double dlog_u_drho(cplx z) const;
  double dlog_u_dtheta(cplx z) const;

 private:
  HoloFunc f_;
  WeightParams params_;
};

}  // namespace bergman
